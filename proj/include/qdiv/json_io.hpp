#ifndef QDIV_JSON_IO_HPP
#define QDIV_JSON_IO_HPP

/*
 *  JSON forms used by the CLI
 *    matrix    {"dim": d, "entries": [[[re,im],...],...]}  (row-major)
 *    channel   {"kraus": [matrix,...], "pre_transpose": bool}
 *    classical {"outputs": [matrix,...]}
 *  infinity round-trips as the string "inf"
 */

#include <fstream>
#include <json.hpp>
#include "channels.hpp"

namespace qdiv {

using json = nlohmann::json;

inline json matrix_to_json(const Mat& M) {
    json rows = json::array();
    for (int i = 0; i < M.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < M.cols(); ++j)
            row.push_back(json::array({M(i, j).real(), M(i, j).imag()}));
        rows.push_back(row);
    }
    return json{{"dim", M.rows()}, {"entries", rows}};
}

inline Mat matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("entries"))
        throw Error("matrix json: expected {\"dim\", \"entries\"}");
    int d = j.at("dim").get<int>();
    const json& e = j.at("entries");
    if (!e.is_array() || static_cast<int>(e.size()) != d)
        throw Error("matrix json: entries must have dim rows");
    Mat M(d, d);
    for (int i = 0; i < d; ++i) {
        const json& row = e.at(i);
        if (!row.is_array() || static_cast<int>(row.size()) != d)
            throw Error("matrix json: row " + std::to_string(i) + " has wrong length");
        for (int k = 0; k < d; ++k) {
            const json& c = row.at(k);
            if (!c.is_array() || c.size() != 2)
                throw Error("matrix json: entry (" + std::to_string(i) + "," +
                            std::to_string(k) + ") must be [re,im]");
            M(i, k) = cxd(c.at(0).get<double>(), c.at(1).get<double>());
        }
    }
    return M;
}

inline json channel_to_json(const QuantumChannel& phi) {
    json ks = json::array();
    for (const auto& K : phi.kraus) ks.push_back(matrix_to_json(K));
    return json{{"kraus", ks}, {"pre_transpose", phi.pre_transpose}};
}

inline QuantumChannel channel_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kraus")) throw Error("channel json: expected {\"kraus\"}");
    std::vector<Mat> ks;
    for (const auto& k : j.at("kraus")) ks.push_back(matrix_from_json(k));
    bool pt = j.value("pre_transpose", false);
    return make_channel(ks, pt);
}

inline ClassicalQuantumChannel classical_from_json(const json& j) {
    if (!j.is_object() || !j.contains("outputs"))
        throw Error("classical channel json: expected {\"outputs\"}");
    ClassicalQuantumChannel c;
    for (const auto& o : j.at("outputs")) c.outputs.push_back(PsdOperator(matrix_from_json(o)).matrix());
    c.k = static_cast<int>(c.outputs.size());
    require(c.k > 0, "classical channel json: no outputs");
    return c;
}

inline json ext_to_json(const ExtendedReal& x) {
    if (x.is_inf()) return json("inf");
    return json(x.value());
}

inline json report_to_json(const EqualityReport& rep) {
    json conds = json::array();
    for (const auto& c : rep.conditions)
        conds.push_back(json{{"name", c.name}, {"residual", c.residual},
                             {"tol", c.tol}, {"pass", c.pass}});
    return json{{"conditions", conds}, {"verdict", rep.verdict}};
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw Error("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

struct RunConfig {
    double hermiticity_tol = 1e-9;
    double psd_tol = 1e-10;
    double clustering_gap = 1e-8;
    double verdict_tol = 1e-9;
    std::uint64_t seed = 0;
    std::string output = "json";  // json | table
};

inline void apply_config(const RunConfig& rc) {
    Config& c = global_config();
    c.hermiticity_tol = rc.hermiticity_tol;
    c.psd_tol = rc.psd_tol;
    c.clustering_gap = rc.clustering_gap;
    c.verdict_tol = rc.verdict_tol;
}

} // namespace qdiv

#endif // QDIV_JSON_IO_HPP
