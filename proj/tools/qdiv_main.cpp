/*
 *  qdiv command-line tool
 *
 *  subcommands: div | recover | check | measured | scan-az | repro
 *  exit codes:  0 success / pass, 1 assertion failure, 2 input error
 */

#include <cstdlib>
#include <iostream>
#include <CLI11.hpp>
#include "qdiv/qdiv.hpp"

namespace {

using namespace qdiv;

std::uint64_t default_seed() {
    const char* env = std::getenv("QDIV_SEED");
    if (env == nullptr) return 1;
    return static_cast<std::uint64_t>(std::strtoull(env, nullptr, 10));
}

PsdOperator load_state(const std::string& path) {
    return PsdOperator(matrix_from_json(load_json_file(path)));
}

void print_report(const EqualityReport& rep, const std::string& out, const std::string& tag) {
    if (out == "json") {
        json j = report_to_json(rep);
        j["battery"] = tag;
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::cout << "battery: " << tag << "\n";
    for (const auto& c : rep.conditions)
        std::cout << "  " << c.name << "  residual=" << c.residual << "  tol=" << c.tol
                  << "  " << (c.pass ? "pass" : "FAIL") << "\n";
    std::cout << "  verdict: " << rep.verdict << "\n";
}

std::vector<double> parse_grid(const std::string& s) {
    // "start:stop:n" or comma list
    std::vector<double> out;
    if (s.find(':') != std::string::npos) {
        double lo, hi;
        int n;
        if (std::sscanf(s.c_str(), "%lf:%lf:%d", &lo, &hi, &n) != 3 || n < 1)
            throw Error("grid spec must be start:stop:n");
        for (int i = 0; i < n; ++i)
            out.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
        return out;
    }
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    if (out.empty()) throw Error("empty grid spec");
    return out;
}

int cmd_div(const std::string& fspec, const std::string& rho_path, const std::string& sigma_path,
            double alpha, double z, const std::string& out) {
    PsdOperator rho = load_state(rho_path), sigma = load_state(sigma_path);
    DivergenceFunction f = build_function(fspec);
    json j;
    j["S_f"] = ext_to_json(standard_f_div(f, rho, sigma));
    if (f.operator_convex) j["maxS_f"] = ext_to_json(maximal_f_div(f, rho, sigma));
    j["D_max"] = ext_to_json(d_max(rho, sigma));
    if (alpha > 0.0 && alpha != 1.0) {
        j["D_alpha"] = ext_to_json(renyi_alpha(alpha, rho, sigma));
        j["D_alpha_sandwiched"] = ext_to_json(sandwiched_renyi(alpha, rho, sigma));
        if (z > 0.0) j["D_alpha_z"] = ext_to_json(d_az(AzParams(alpha, z), rho, sigma));
    } else if (alpha == 1.0) {
        j["D_alpha"] = ext_to_json(renyi_alpha(1.0, rho, sigma));
    }
    if (out == "json") {
        std::cout << j.dump(2) << "\n";
    } else {
        for (auto& [k, v] : j.items()) std::cout << k << "\t" << v.dump() << "\n";
    }
    return 0;
}

int cmd_recover(const std::string& chan_path, const std::string& sigma_path,
                const std::string& rho_path, const std::string& out) {
    QuantumChannel phi = channel_from_json(load_json_file(chan_path));
    PsdOperator sigma = load_state(sigma_path);
    PetzPair pp = petz_pair(phi, sigma);
    LinearMap rec{phi.out_dim, phi.in_dim, pp.phi_sigma_star};
    json j;
    j["recovery_superoperator"] = matrix_to_json(rec.superoperator());
    j["recovered_sigma"] = matrix_to_json(pp.phi_sigma_star(phi(sigma.matrix())));
    if (!rho_path.empty()) {
        PsdOperator rho = load_state(rho_path);
        Mat rec_rho = pp.phi_sigma_star(phi(rho.matrix()));
        j["recovered_rho"] = matrix_to_json(rec_rho);
        j["petz_residual"] = trace_norm(rec_rho - rho.matrix());
    }
    if (out == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << "petz residual: " << j.value("petz_residual", 0.0) << "\n";
    return 0;
}

int cmd_check(const std::string& chan_path, const std::string& rho_path,
              const std::string& sigma_path, const std::string& out) {
    QuantumChannel phi = channel_from_json(load_json_file(chan_path));
    PsdOperator rho = load_state(rho_path), sigma = load_state(sigma_path);
    EqualityReport maxrep = maximal_preservation_report(phi, rho, sigma);
    EqualityReport stdrep = standard_preservation_report(phi, rho, sigma);
    print_report(maxrep, out, "maximal");
    print_report(stdrep, out, "standard");
    bool max_ok = maxrep.verdict == "maximal-preserved";
    bool std_ok = stdrep.verdict == "reversible";
    std::cout << "maximal: " << (max_ok ? "preserved" : "NOT preserved") << "; standard: "
              << (std_ok ? "preserved" : "NOT preserved") << "\n";
    return 0;
}

int cmd_measured(const std::string& fspec, double alpha, const std::string& rho_path,
                 const std::string& sigma_path, int restarts, std::uint64_t seed,
                 const std::string& out) {
    PsdOperator rho = load_state(rho_path), sigma = load_state(sigma_path);
    json j;
    if (alpha > 0.0) {
        OptResult r = variational_measured_renyi(alpha, rho, sigma);
        j["value"] = ext_to_json(measured_renyi_alpha(alpha, rho, sigma));
        j["trace_functional"] = r.value;
        j["measurement"] = matrix_to_json(r.argument);
        j["stationarity"] = r.stationarity;
    } else {
        DivergenceFunction f = build_function(fspec);
        OptResult r = measured_projective_opt(f, rho, sigma, restarts, 500, seed);
        j["value"] = r.value;
        j["measurement"] = matrix_to_json(r.argument);
        j["stationarity"] = r.stationarity;
        j["restarts_used"] = r.restarts_used;
    }
    if (out == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << "value\t" << j["value"].dump() << "\n";
    return 0;
}

int cmd_scan_az(const std::string& agrid, const std::string& zgrid, const std::string& mode,
                int samples, std::uint64_t seed, const std::string& out) {
    RegionContext ctx = RegionContext::general;
    if (mode == "fixed-sigma")
        ctx = RegionContext::fixed_sigma;
    else if (mode == "fixed-rho")
        ctx = RegionContext::fixed_rho;
    else if (mode != "general")
        throw Error("mode must be general|fixed-sigma|fixed-rho");
    std::vector<double> as = parse_grid(agrid), zs = parse_grid(zgrid);
    json cells = json::array();
    std::mt19937_64 rng(seed);
    for (double a : as)
        for (double zz : zs) {
            if (a == 1.0) continue;
            AzParams p(a, zz);
            RegionVerdict v = monotonicity_region(p, ctx);
            double worst = 0.0;
            for (int t = 0; t < samples; ++t) {
                std::uint64_t s1 = rng(), s2 = rng(), s3 = rng();
                PsdOperator rho = random_state(2, 2, s1), sigma = random_state(2, 2, s2);
                QuantumChannel phi = random_channel(2, 2, 2, s3);
                ExtendedReal din = d_az(p, rho, sigma);
                ExtendedReal dout = d_az(p, phi.apply_state(rho), phi.apply_state(sigma));
                if (!din.is_inf() && !dout.is_inf())
                    worst = std::max(worst, dout.value() - din.value());
            }
            std::string conds;
            for (char c : v.general_conditions) conds += c;
            for (char c : v.fixedpoint_conditions) conds += c;
            cells.push_back(json{{"alpha", a}, {"z", zz},
                                 {"monotone_claimed", v.monotone_claimed},
                                 {"conditions", conds}, {"max_violation", worst}});
        }
    if (out == "json") {
        std::cout << json{{"mode", mode}, {"cells", cells}}.dump(2) << "\n";
    } else {
        std::cout << "alpha,z,monotone_claimed,conditions,max_violation\n";
        for (const auto& c : cells)
            std::cout << c["alpha"].get<double>() << "," << c["z"].get<double>() << ","
                      << (c["monotone_claimed"].get<bool>() ? 1 : 0) << ","
                      << c["conditions"].get<std::string>() << ","
                      << c["max_violation"].get<double>() << "\n";
    }
    return 0;
}

int cmd_repro(const std::string& id) {
    std::vector<std::string> ids = (id == "all") ? all_repro_ids() : std::vector<std::string>{id};
    bool all_pass = true;
    for (const auto& i : ids) {
        ReproReport rep = reproduce_example(i);
        std::cout << rep.id << ": " << (rep.pass() ? "pass" : "FAIL") << "  (" << rep.verdict
                  << ")\n";
        for (const auto& l : rep.lines)
            std::cout << "  " << l.name << " = " << l.value << "  "
                      << (l.pass ? "pass" : "FAIL") << "\n";
        all_pass = all_pass && rep.pass();
    }
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum f-divergence and reversibility toolkit"};
    app.require_subcommand(1);

    std::string fspec = "eta", rho_path, sigma_path, chan_path, out = "json";
    std::string agrid = "0.25:3:12", zgrid = "0.25:3:12", mode = "general", repro_id = "all";
    double alpha = 0.0, z = 0.0, tol = 1e-9;
    int restarts = 8, samples = 0;
    std::uint64_t seed = default_seed();

    app.add_option("--tol", tol, "verdict tolerance");
    app.add_option("--seed", seed, "RNG seed (default: QDIV_SEED env or 1)");
    app.add_option("--out", out, "output format: json|table");

    auto* div = app.add_subcommand("div", "compute divergences between two states");
    div->add_option("--f", fspec, "function spec");
    div->add_option("--rho", rho_path)->required();
    div->add_option("--sigma", sigma_path)->required();
    div->add_option("--alpha", alpha);
    div->add_option("--z", z);

    auto* rec = app.add_subcommand("recover", "build the Petz recovery map");
    rec->add_option("--channel", chan_path)->required();
    rec->add_option("--sigma", sigma_path)->required();
    rec->add_option("--rho", rho_path);

    auto* chk = app.add_subcommand("check", "run the equality batteries");
    chk->add_option("--channel", chan_path)->required();
    chk->add_option("--rho", rho_path)->required();
    chk->add_option("--sigma", sigma_path)->required();

    auto* mea = app.add_subcommand("measured", "measured f-divergence / Renyi optimization");
    mea->add_option("--f", fspec);
    mea->add_option("--alpha", alpha);
    mea->add_option("--rho", rho_path)->required();
    mea->add_option("--sigma", sigma_path)->required();
    mea->add_option("--restarts", restarts);

    auto* saz = app.add_subcommand("scan-az", "alpha-z monotonicity region scan");
    saz->add_option("--alpha-grid", agrid);
    saz->add_option("--z-grid", zgrid);
    saz->add_option("--mode", mode);
    saz->add_option("--samples", samples, "random DPI probes per cell");

    auto* rep = app.add_subcommand("repro", "run a reference reproduction");
    rep->add_option("id", repro_id, "ex4.8|appC|appD|sec6-fid|sec6-dmax|appB|all");

    for (CLI::App* sub : {div, rec, chk, mea, saz, rep}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    qdiv::global_config().verdict_tol = tol;
    try {
        if (*div) return cmd_div(fspec, rho_path, sigma_path, alpha, z, out);
        if (*rec) return cmd_recover(chan_path, sigma_path, rho_path, out);
        if (*chk) return cmd_check(chan_path, rho_path, sigma_path, out);
        if (*mea) return cmd_measured(fspec, alpha, rho_path, sigma_path, restarts, seed, out);
        if (*saz) return cmd_scan_az(agrid, zgrid, mode, samples, seed, out);
        if (*rep) return cmd_repro(repro_id);
    } catch (const qdiv::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
