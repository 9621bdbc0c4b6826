#ifndef QDIV_DIVERGENCE_FUNCTION_HPP
#define QDIV_DIVERGENCE_FUNCTION_HPP

/*
 *  DivergenceFunction: scalar function on (0,inf) with endpoint data,
 *  convexity flags, f''(1), and optional finite integral-representation
 *  atoms; builtins eta, power:a, fs:s, gs:s, quad, fdelta:d, mu-atoms
 *
 *  representations carried:
 *    nu atoms   f(x) = f(0+) + f'(inf) x - sum w x(1+s)/(x+s)   (both endpoints finite)
 *    mu atoms   f(x) = f(0+) + a x + b x^2 + sum w (x/(1+s) - x/(x+s))
 */

#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>
#include "extended_real.hpp"

namespace qdiv {

struct RepAtom {
    double s;
    double w;
};

struct DivergenceFunction {
    std::string name;
    std::function<double(double)> eval;     // on (0, inf)
    ExtendedReal f_at_0;                    // f(0+)
    ExtendedReal fprime_at_inf;             // f'(+inf)
    bool operator_convex = false;
    bool strictly_convex = false;
    double d2_at_1 = 0.0;                   // f''(1), analytic

    bool has_nu_rep = false;
    std::vector<RepAtom> nu;                // finite-endpoint representation

    bool has_mu_rep = false;
    double mu_f0 = 0.0, mu_a = 0.0, mu_b = 0.0;
    std::vector<RepAtom> mu;

    bool mu_support_infinite = false;       // e.g. eta: mu_f = Lebesgue on (0,inf)
    size_t support_size = 0;                // atom count when finite

    double operator()(double x) const { return eval(x); }
};

inline double sign_alpha(double alpha) { return (alpha < 1.0) ? -1.0 : 1.0; }

inline DivergenceFunction make_eta() {
    DivergenceFunction f;
    f.name = "eta";
    f.eval = [](double x) { return x * std::log(x); };
    f.f_at_0 = ExtendedReal(0.0);
    f.fprime_at_inf = ExtendedReal::infinity();
    f.operator_convex = true;
    f.strictly_convex = true;
    f.d2_at_1 = 1.0;
    f.mu_support_infinite = true;
    return f;
}

inline DivergenceFunction make_power(double alpha) {
    require(alpha > 0.0, "make_power: alpha must be positive");
    DivergenceFunction f;
    double s = sign_alpha(alpha);
    f.name = "power:" + std::to_string(alpha);
    f.eval = [s, alpha](double x) { return s * std::pow(x, alpha); };
    f.f_at_0 = ExtendedReal(0.0);
    if (alpha < 1.0)
        f.fprime_at_inf = ExtendedReal(0.0);
    else if (alpha == 1.0)
        f.fprime_at_inf = ExtendedReal(1.0);
    else
        f.fprime_at_inf = ExtendedReal::infinity();
    f.operator_convex = (alpha <= 2.0);
    f.strictly_convex = (alpha != 1.0);
    f.d2_at_1 = s * alpha * (alpha - 1.0);
    if (alpha == 2.0) {
        f.has_mu_rep = true;
        f.mu_f0 = 0.0;
        f.mu_a = 0.0;
        f.mu_b = 1.0;
    } else if (alpha != 1.0 && alpha < 2.0) {
        f.mu_support_infinite = true;
    }
    return f;
}

inline DivergenceFunction make_fs(double s) {
    require(s > 0.0, "make_fs: s must be positive");
    DivergenceFunction f;
    f.name = "fs:" + std::to_string(s);
    f.eval = [s](double x) { return -x / (x + s); };
    f.f_at_0 = ExtendedReal(0.0);
    f.fprime_at_inf = ExtendedReal(0.0);
    f.operator_convex = true;
    f.strictly_convex = true;
    f.d2_at_1 = 2.0 * s / std::pow(1.0 + s, 3);
    f.has_nu_rep = true;
    f.nu = {{s, 1.0 / (1.0 + s)}};
    f.support_size = 1;
    return f;
}

inline DivergenceFunction make_gs(double s) {
    require(s > 0.0, "make_gs: s must be positive");
    DivergenceFunction f;
    f.name = "gs:" + std::to_string(s);
    f.eval = [s](double x) { return (x - 1.0) * (x - 1.0) / (x + s); };
    f.f_at_0 = ExtendedReal(1.0 / s);
    f.fprime_at_inf = ExtendedReal(1.0);
    f.operator_convex = true;
    f.strictly_convex = true;
    f.d2_at_1 = 2.0 / (1.0 + s);
    f.has_nu_rep = true;
    f.nu = {{s, (1.0 + s) / s}};
    f.support_size = 1;
    return f;
}

inline DivergenceFunction make_quad() { return make_power(2.0); }

inline DivergenceFunction make_fdelta(double delta) {
    require(delta > 0.0, "make_fdelta: delta must be positive");
    DivergenceFunction f;
    f.name = "fdelta:" + std::to_string(delta);
    f.eval = [delta](double x) { return 1.0 - x + delta * (1.0 - x) * (1.0 - x); };
    f.f_at_0 = ExtendedReal(1.0 + delta);
    f.fprime_at_inf = ExtendedReal::infinity();
    f.operator_convex = true;
    f.strictly_convex = true;
    f.d2_at_1 = 2.0 * delta;
    f.has_mu_rep = true;
    f.mu_f0 = 1.0 + delta;
    f.mu_a = -(1.0 + 2.0 * delta);
    f.mu_b = delta;
    return f;
}

// f(x) = f0 + a x + b x^2 + sum w (x/(1+s) - x/(x+s))
inline DivergenceFunction make_mu_atoms(double f0, double a, double b,
                                        const std::vector<RepAtom>& atoms) {
    for (const auto& at : atoms)
        require(at.s > 0.0 && at.w > 0.0, "make_mu_atoms: atoms need s>0, w>0");
    require(b >= 0.0, "make_mu_atoms: b must be nonnegative");
    DivergenceFunction f;
    f.name = "mu-atoms";
    f.eval = [f0, a, b, atoms](double x) {
        double v = f0 + a * x + b * x * x;
        for (const auto& at : atoms) v += at.w * (x / (1.0 + at.s) - x / (x + at.s));
        return v;
    };
    f.f_at_0 = ExtendedReal(f0);
    double slope = a;
    for (const auto& at : atoms) slope += at.w / (1.0 + at.s);
    f.fprime_at_inf = (b > 0.0) ? ExtendedReal::infinity() : ExtendedReal(slope);
    f.operator_convex = true;
    f.strictly_convex = (b > 0.0 || !atoms.empty());
    f.d2_at_1 = 2.0 * b;
    for (const auto& at : atoms) f.d2_at_1 += at.w * 2.0 * at.s / std::pow(1.0 + at.s, 3);
    f.has_mu_rep = true;
    f.mu_f0 = f0;
    f.mu_a = a;
    f.mu_b = b;
    f.mu = atoms;
    f.support_size = atoms.size();
    if (b == 0.0) {
        // dnu = (1+s)^-1 dmu gives the finite-endpoint form
        f.has_nu_rep = true;
        for (const auto& at : atoms) f.nu.push_back({at.s, at.w / (1.0 + at.s)});
    }
    return f;
}

// transpose f~(y) = y f(1/y); endpoints swap, nu atom (s,w) -> (1/s,w)
inline DivergenceFunction transpose_function(const DivergenceFunction& f) {
    DivergenceFunction t;
    t.name = f.name + "~";
    auto e = f.eval;
    t.eval = [e](double y) { return y * e(1.0 / y); };
    t.f_at_0 = f.fprime_at_inf;
    t.fprime_at_inf = f.f_at_0;
    t.operator_convex = f.operator_convex;
    t.strictly_convex = f.strictly_convex;
    t.d2_at_1 = f.d2_at_1;
    if (f.has_nu_rep) {
        t.has_nu_rep = true;
        for (const auto& at : f.nu) t.nu.push_back({1.0 / at.s, at.w});
    }
    t.mu_support_infinite = f.mu_support_infinite;
    t.support_size = f.support_size;
    return t;
}

// CLI function spec: eta | power:a | fs:s | gs:s | quad | fdelta:d | mu-atoms:[(s,w),...]
inline DivergenceFunction build_function(const std::string& spec) {
    auto colon = spec.find(':');
    std::string head = spec.substr(0, colon);
    std::string arg = (colon == std::string::npos) ? "" : spec.substr(colon + 1);
    if (head == "eta") return make_eta();
    if (head == "quad") return make_quad();
    if (head == "power") return make_power(std::stod(arg));
    if (head == "fs") return make_fs(std::stod(arg));
    if (head == "gs") return make_gs(std::stod(arg));
    if (head == "fdelta") return make_fdelta(std::stod(arg));
    if (head == "mu-atoms") {
        std::vector<RepAtom> atoms;
        std::string cur;
        double s = 0.0;
        bool have_s = false;
        for (char c : arg) {
            if (std::isdigit(c) || c == '.' || c == '-' || c == 'e' || c == 'E' || c == '+') {
                cur += c;
            } else if (!cur.empty()) {
                if (!have_s) {
                    s = std::stod(cur);
                    have_s = true;
                } else {
                    atoms.push_back({s, std::stod(cur)});
                    have_s = false;
                }
                cur.clear();
            }
        }
        if (!cur.empty() && have_s) atoms.push_back({s, std::stod(cur)});
        return make_mu_atoms(0.0, 0.0, 0.0, atoms);
    }
    throw Error("build_function: unknown spec '" + spec + "'");
}

} // namespace qdiv

#endif // QDIV_DIVERGENCE_FUNCTION_HPP
