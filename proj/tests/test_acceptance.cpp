/*
 *  acceptance battery: one line per criterion, exit 0 iff all pass
 */

#include <cstdio>
#include <vector>
#include "qdiv/qdiv.hpp"

using namespace qdiv;

namespace {

int g_failures = 0;

void report(int n, bool pass, const char* desc) {
    std::printf("criterion %d: %s - %s\n", n, pass ? "pass" : "FAIL", desc);
    if (!pass) ++g_failures;
}

Mat diag2(double a, double b) {
    Mat M = Mat::Zero(2, 2);
    M(0, 0) = a;
    M(1, 1) = b;
    return M;
}

// invertible qubit pair with commutator norm >= 0.1, by rejection
std::pair<PsdOperator, PsdOperator> noncommuting_qubit_pair(std::mt19937_64& rng) {
    while (true) {
        uint64_t s1 = rng(), s2 = rng();
        PsdOperator r = random_state(2, 2, s1), s = random_state(2, 2, s2);
        if (inf_norm(r.matrix() * s.matrix() - s.matrix() * r.matrix()) >= 0.1) return {r, s};
    }
}

double fidelity(const PsdOperator& r, const PsdOperator& s) {
    Mat sh = s.sqrt();
    return PsdOperator(sh * r.matrix() * sh)
        .func_calculus([](double x) { return std::sqrt(x); })
        .trace()
        .real();
}

bool criterion1() {
    ReproReport rep = reproduce_example("ex4.8");
    return rep.pass();
}

bool criterion2() {
    std::mt19937_64 rng(1002);
    DivergenceFunction f2 = make_quad();
    for (int k = 0; k < 100; ++k) {
        auto [r, s] = noncommuting_qubit_pair(rng);
        if (!(relative_entropy(r, s).value() < bs_relative_entropy(r, s).value() - 1e-6))
            return false;
        double gap = std::abs(standard_f_div(f2, r, s).value() - maximal_f_div(f2, r, s).value());
        if (gap > 1e-9) return false;
    }
    return true;
}

bool criterion3() {
    std::mt19937_64 rng(1003);
    std::vector<DivergenceFunction> fs = {make_eta(), make_power(0.5), make_gs(1.0)};
    for (int k = 0; k < 100; ++k) {
        auto [r, s] = noncommuting_qubit_pair(rng);
        ReverseTest rt = minimal_reverse_test(r, s);
        if (trace_norm(rt.channel.apply(rt.a) - r.matrix()) > 1e-9) return false;
        if (trace_norm(rt.channel.apply(rt.b) - s.matrix()) > 1e-9) return false;
        for (const auto& f : fs) {
            ExtendedReal cls = classical_f_div(f, rt.a, rt.b);
            ExtendedReal mx = maximal_f_div(f, r, s);
            if (detail::ext_gap(cls, mx) > 1e-9) return false;
        }
    }
    return true;
}

bool criterion4() {
    std::mt19937_64 rng(1004);
    std::vector<DivergenceFunction> fs = {make_eta(),    make_power(0.5), make_power(1.5),
                                          make_gs(1.0), make_gs(5.0),    make_quad()};
    for (int k = 0; k < 200; ++k) {
        int d = 2 + static_cast<int>(rng() % 3);
        QuantumChannel phi = random_channel(d, d, 2, rng());
        PsdOperator r = random_state(d, d, rng()), s = random_state(d, d, rng());
        PsdOperator pr = phi.apply_state(r), ps = phi.apply_state(s);
        QuantumChannel theta = make_channel(phi.kraus, true);  // positive TP, not CP
        PsdOperator tr = theta.apply_state(r), ts = theta.apply_state(s);
        for (const auto& f : fs) {
            double in_s = standard_f_div(f, r, s).value();
            double out_s = standard_f_div(f, pr, ps).value();
            if (out_s > in_s + 1e-8) return false;
            double in_m = maximal_f_div(f, r, s).value();
            double out_m = maximal_f_div(f, pr, ps).value();
            if (out_m > in_m + 1e-8) return false;
            if (maximal_f_div(f, tr, ts).value() > in_m + 1e-8) return false;
        }
    }
    return true;
}

bool criterion5() {
    std::mt19937_64 rng(1005);
    // Petz identity on assorted constructions
    for (int k = 0; k < 20; ++k) {
        int d = 2 + static_cast<int>(rng() % 3);
        QuantumChannel phi = random_channel(d, d, 2, rng());
        PsdOperator s = random_state(d, d, rng());
        PetzPair pp = petz_pair(phi, s);
        if (trace_norm(pp.phi_sigma_star(phi(s.matrix())) - s.matrix()) > 1e-9) return false;
    }
    // reversible constructions pass the full battery below 1e-9
    for (int k = 0; k < 10; ++k) {
        int d = 2 + static_cast<int>(rng() % 3);
        QuantumChannel uni = unitary_channel(haar_unitary(d, rng));
        PsdOperator r = random_state(d, d, rng()), s = random_state(d, d, rng());
        EqualityReport rep = standard_preservation_report(uni, r, s);
        for (const auto& c : rep.conditions)
            if (c.residual > 1e-9) return false;
        // block embedding: X -> V X V^dag for an isometry V
        Mat V = haar_unitary(d + 2, rng).leftCols(d);
        QuantumChannel emb = make_channel({V});
        EqualityReport rep2 = standard_preservation_report(emb, r, s);
        for (const auto& c : rep2.conditions)
            if (c.residual > 1e-9) return false;
    }
    return true;
}

bool criterion6() {
    std::mt19937_64 rng(1006);
    for (int k = 0; k < 50; ++k) {
        auto [r, s] = noncommuting_qubit_pair(rng);
        for (double a : {0.3, 0.5, 0.8, 1.5, 2.0, 3.0}) {
            double dm = measured_renyi_alpha(a, r, s);
            double dst = renyi_alpha(a, r, s).value();
            double dsw = sandwiched_renyi(a, r, s).value();
            if (dm > dst + 1e-8) return false;
            if (a >= 0.5 && dm > dsw + 1e-8) return false;
            if (!(dsw < dst - 1e-6)) return false;
        }
        double dm_half = measured_renyi_alpha(0.5, r, s);
        if (std::abs(dm_half + 2.0 * std::log(fidelity(r, s))) > 1e-5) return false;
    }
    return true;
}

bool criterion7() {
    std::mt19937_64 rng(1007);
    for (int k = 0; k < 4; ++k) {
        auto [r, s] = noncommuting_qubit_pair(rng);
        for (double a : {0.3, 0.75, 2.0}) {
            OptResult var = variational_measured_renyi(a, r, s);
            OptResult grid = bloch_grid_opt(make_power(a), r, s, 360, 720);
            if (std::abs(var.value - grid.value) > 1e-3) return false;
        }
    }
    return true;
}

bool criterion8() {
    std::mt19937_64 rng(1008);
    std::vector<DivergenceFunction> fs = {make_eta(), make_power(0.5), make_gs(1.0)};
    for (int k = 0; k < 200; ++k) {
        int d = 2 + static_cast<int>(rng() % 3);
        PsdOperator r = random_state(d, d, rng()), s = random_state(d, d, rng());
        for (const auto& f : fs)
            if (!pinsker_certificate(f, r, s).pass) return false;
    }
    return true;
}

bool criterion9() {
    std::mt19937_64 rng(1009);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto probe = [&](const AzParams& p, bool fixed_sigma) {
        int d = 2 + static_cast<int>(rng() % 2);
        QuantumChannel phi = random_bistochastic(d, 3, rng());
        PsdOperator mixed(Mat(Mat::Identity(d, d) / d));
        PsdOperator other = random_state(d, d, rng());
        ExtendedReal din, dout;
        if (fixed_sigma) {
            din = d_az(p, other, mixed);
            dout = d_az(p, phi.apply_state(other), mixed);
        } else {
            din = d_az(p, mixed, other);
            dout = d_az(p, mixed, phi.apply_state(other));
        }
        if (din.is_inf()) return true;
        return !dout.is_inf() && dout.value() <= din.value() + 1e-8;
    };
    for (int k = 0; k < 200; ++k) {
        // (i) alpha <= z <= 1, sigma fixed
        double z1 = 0.2 + 0.8 * u(rng);
        double a1 = z1 * (0.05 + 0.9 * u(rng));
        if (!probe(AzParams(a1, z1), true)) return false;
        // (iii) alpha >= z >= max(1, alpha/2), sigma fixed
        double a3 = 1.0 + 2.0 * u(rng);
        double lo3 = std::max(1.0, a3 / 2.0);
        double z3 = lo3 + (a3 - lo3) * u(rng);
        if (!probe(AzParams(a3 + 1e-6, z3), true)) return false;
        // (ii) alpha < 1, 1-alpha <= z <= 1, rho fixed
        double a2 = 0.05 + 0.9 * u(rng);
        double z2 = (1.0 - a2) + a2 * u(rng);
        if (!probe(AzParams(a2, z2), false)) return false;
        // (iv) alpha > 1, z >= max(1, alpha-1), rho fixed
        double a4 = 1.0 + 2.0 * u(rng);
        double z4 = std::max(1.0, a4 - 1.0) + 2.0 * u(rng);
        if (!probe(AzParams(a4 + 1e-6, z4), false)) return false;
    }
    return reproduce_example("sec6-fid").pass() && reproduce_example("sec6-dmax").pass();
}

bool criterion10() {
    std::mt19937_64 rng(1010);
    auto fsq = [](double x) { return x * x; };
    for (int k = 0; k < 200; ++k) {
        int d = 2 + static_cast<int>(rng() % 3);
        QuantumChannel phi = random_bistochastic(d, 3, rng());
        Mat G = gaussian_matrix(d, d, rng);
        HermitianOperator X(Mat(0.5 * (G + G.adjoint())));
        if (!ky_fan_majorization(phi, X).majorization_pass) return false;
    }
    // Tr-square equality and Phi* Phi X = X co-vanish; unitary vs mixing probes
    for (int k = 0; k < 20; ++k) {
        int d = 2 + static_cast<int>(rng() % 2);
        QuantumChannel phi = (k % 2 == 0) ? unitary_channel(haar_unitary(d, rng))
                                          : random_bistochastic(d, 3, rng());
        Mat G = gaussian_matrix(d, d, rng);
        HermitianOperator X(Mat(0.5 * (G + G.adjoint())));
        UnitaryEqualityResult r = trace_convexity_unitary_check(phi, X, fsq);
        bool trsq_zero = r.trsq_gap <= 1e-8 * std::max(1.0, inf_norm(X.matrix()));
        bool fix_zero = r.adjoint_fix_residual <= 1e-7 * std::max(1.0, inf_norm(X.matrix()));
        if (trsq_zero != fix_zero) return false;
        OperatorSubspace F1 = fixed_point_set(phi);
        OperatorSubspace F2 = fixed_point_set(phi.adjoint());
        if (subspace_distance(F1, F2) > 1e-8) return false;
    }
    return true;
}

bool criterion11() {
    std::mt19937_64 rng(1011);
    std::vector<DivergenceFunction> fs = {make_eta(),   make_power(0.5), make_gs(1.0),
                                          make_fs(1.0), make_quad(),     make_fdelta(0.5)};
    for (int k = 0; k < 10; ++k) {
        // rank-deficient rho against an invertible sigma in dim 3
        PsdOperator r = random_state(3, 2, rng()), s = random_state(3, 3, rng());
        Mat I3 = Mat::Identity(3, 3);
        for (const auto& f : fs) {
            double exact = standard_f_div(f, r, s).value();
            // regularization error carries both sqrt(eps) and eps terms, so fit
            // value + a sqrt(eps) + b eps through three epsilon evaluations
            double eps[3] = {1e-6, 1e-7, 1e-8};
            Eigen::Matrix3d M;
            Eigen::Vector3d v;
            for (int i = 0; i < 3; ++i) {
                double e = eps[i];
                v(i) = standard_f_div(f, PsdOperator(Mat(r.matrix() + e * I3)),
                                      PsdOperator(Mat(s.matrix() + e * I3))).value();
                M(i, 0) = 1.0;
                M(i, 1) = std::sqrt(e);
                M(i, 2) = e;
            }
            double extrap = M.fullPivLu().solve(v)(0);
            if (std::abs(extrap - exact) > 1e-4) return false;
        }
    }
    // x^4 counterexample: at least 8x growth per epsilon decade
    return reproduce_example("appD").pass();
}

bool criterion12() {
    return reproduce_example("appB").pass() && reproduce_example("appC").pass();
}

bool criterion13() {
    std::mt19937_64 rng(1013);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 500; ++k) {
        Eigen::Vector3d w(u(rng), u(rng), u(rng)), x(u(rng), u(rng), u(rng));
        w *= 0.9 / std::max(1.0, w.norm());
        x *= 0.9 / std::max(1.0, x.norm());
        double s = 0.25 + 2.0 * std::abs(u(rng));
        PsdOperator rho(density_from_bloch(w)), sigma(density_from_bloch(x));
        double gs = standard_f_div(make_gs(s), rho, sigma).value();
        double gm = maximal_f_div(make_gs(s), rho, sigma).value();
        if (std::abs(bloch_s_gs(w, x, s) - gs) > 1e-9) return false;
        if (std::abs(bloch_maxdiv_gs(w, x, s) - gm) > 1e-9) return false;
    }
    return true;
}

bool pinched_ladder() {
    std::mt19937_64 rng(1014);
    for (int k = 0; k < 10; ++k) {
        auto [r, s] = noncommuting_qubit_pair(rng);
        for (double a : {0.5, 1.0, 2.0}) {
            double prev = -1e18;
            for (int n = 1; n <= 3; ++n) {
                double v = pinched_measured_renyi(a, r, s, n);
                if (v < prev - 1e-8) return false;
                prev = v;
            }
        }
    }
    return true;
}

} // namespace

int main() {
    report(1, criterion1(), "rank-one pair under block pinching: norms, quadratic equality, Petz failure");
    report(2, criterion2(), "Umegaki strictly below BS entropy; quadratic divergences coincide");
    report(3, criterion3(), "minimal reverse test reproduces the pair and the maximal values");
    report(4, criterion4(), "data processing for standard and maximal divergences");
    report(5, criterion5(), "Petz identity and reversible constructions");
    report(6, criterion6(), "Renyi chain ordering measured <= sandwiched <= standard");
    report(7, criterion7(), "variational optimizer matches the certified Bloch grid");
    report(8, criterion8(), "Pinsker certificate on seeded density pairs");
    report(9, criterion9(), "alpha-z fixed-argument monotonicity regions and counterexamples");
    report(10, criterion10(), "majorization and unitary-equality suite");
    report(11, criterion11(), "continuity under epsilon regularization; quartic blowup");
    report(12, criterion12(), "fixed-point-algebra and tilde-divergence reproductions");
    report(13, criterion13(), "Bloch closed forms against the generic path");
    bool ladder = pinched_ladder();
    std::printf("pinched ladder: %s - n-copy measured lower bounds nondecreasing\n",
                ladder ? "pass" : "FAIL");
    if (!ladder) ++g_failures;
    return g_failures == 0 ? 0 : 1;
}
