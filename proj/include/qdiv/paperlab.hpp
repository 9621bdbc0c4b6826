#ifndef QDIV_PAPERLAB_HPP
#define QDIV_PAPERLAB_HPP

/*
 *  closed-form qubit oracles for S_{g_s} and S^_{g_s} in Bloch coordinates,
 *  and one-command reproductions of the library's reference constructions
 *  (ids: ex4.8, appC, appD, sec6-fid, sec6-dmax, appB)
 */

#include "azrenyi.hpp"
#include "measured.hpp"

namespace qdiv {

inline Mat pauli(int k) {
    Mat M(2, 2);
    switch (k) {
        case 0: M << 1, 0, 0, 1; break;
        case 1: M << 0, 1, 1, 0; break;
        case 2: M << 0, cxd(0, -1), cxd(0, 1), 0; break;
        default: M << 1, 0, 0, -1; break;
    }
    return M;
}

inline Mat density_from_bloch(const Eigen::Vector3d& w) {
    return 0.5 * (pauli(0) + w(0) * pauli(1) + w(1) * pauli(2) + w(2) * pauli(3));
}

// (1+s) <y, [((1+s)^2 - |u|^2) I + u u^T - v v^T]^{-1} y>, y = w-x, u = w-sx, v = w+sx
inline double bloch_s_gs(const Eigen::Vector3d& w, const Eigen::Vector3d& x, double s) {
    require(s > 0.0, "bloch_s_gs: s must be positive");
    require(x.norm() < 1.0, "bloch_s_gs: sigma must be invertible (|x| < 1)");
    Eigen::Vector3d y = w - x, u = w - s * x, v = w + s * x;
    Eigen::Matrix3d K = ((1.0 + s) * (1.0 + s) - u.squaredNorm()) * Eigen::Matrix3d::Identity() +
                        u * u.transpose() - v * v.transpose();
    return (1.0 + s) * y.dot(K.inverse() * y);
}

// (1+s) |y|^2 / ((1+s)^2 - |v|^2)
inline double bloch_maxdiv_gs(const Eigen::Vector3d& w, const Eigen::Vector3d& x, double s) {
    require(s > 0.0, "bloch_maxdiv_gs: s must be positive");
    require(x.norm() < 1.0, "bloch_maxdiv_gs: sigma must be invertible (|x| < 1)");
    Eigen::Vector3d y = w - x, v = w + s * x;
    return (1.0 + s) * y.squaredNorm() / ((1.0 + s) * (1.0 + s) - v.squaredNorm());
}

// strict-gap criterion |u|^2 + |v|^2 - 2 (1-s)/(1+s) u.v < 4s
inline bool bloch_strict_gap(const Eigen::Vector3d& w, const Eigen::Vector3d& x, double s) {
    Eigen::Vector3d u = w - s * x, v = w + s * x;
    return u.squaredNorm() + v.squaredNorm() - 2.0 * (1.0 - s) / (1.0 + s) * u.dot(v) < 4.0 * s;
}

struct ReproLine {
    std::string name;
    double value = 0.0;
    bool pass = false;
};

struct ReproReport {
    std::string id;
    std::vector<ReproLine> lines;
    std::string verdict;

    void check(const std::string& name, double value, bool pass) {
        lines.push_back({name, value, pass});
    }
    bool pass() const {
        for (const auto& l : lines)
            if (!l.pass) return false;
        return true;
    }
};

namespace repro {

inline ReproReport ex48() {
    ReproReport rep;
    rep.id = "ex4.8";
    Vec psi(3);
    psi << 1, 1, 0;
    Mat rho_m = psi * psi.adjoint();
    Vec x1(3), x2(3), x3(3);
    x1 << 1, 1, 1;
    x1 /= std::sqrt(3.0);
    x2 << 1, 0, -1;
    x2 /= std::sqrt(2.0);
    x3 << 1, -2, 1;
    x3 /= std::sqrt(6.0);
    double b1 = 1.0 / 3.0, b2 = 3.0 / 11.0;
    Mat sigma_m = b1 * x1 * x1.adjoint() + b2 * x2 * x2.adjoint() + x3 * x3.adjoint();
    Mat P = Mat::Zero(3, 3);
    P(0, 0) = P(1, 1) = 1.0;
    QuantumChannel phi = pinching_channel({P, Mat::Identity(3, 3) - P});
    PsdOperator rho(rho_m), sigma(sigma_m);

    double n1 = (psi.adjoint() * sigma.pinv() * psi)(0).real();
    PsdOperator psp(P * sigma_m * P);
    double n2 = (psi.adjoint() * psp.pinv() * psi)(0).real();
    rep.check("norms-agree", std::abs(n1 - n2), std::abs(n1 - n2) <= 1e-9);
    rep.check("norm-value-6", n1, std::abs(n1 - 6.0) <= 1e-9);

    EqualityReport maxrep = maximal_preservation_report(phi, rho, sigma);
    rep.check("cond-c-preserved", maxrep["cond-c-quadratic"].residual,
              maxrep["cond-c-quadratic"].pass);
    rep.check("maxdiv-eta-preserved", maxrep["maxSf-gap:eta"].residual,
              maxrep["maxSf-gap:eta"].residual <= 1e-9);

    EqualityReport stdrep = standard_preservation_report(phi, rho, sigma);
    double petz = stdrep["petz-recovery"].residual;
    rep.check("petz-residual-large", petz, petz > 1e-3);
    PsdOperator prho = phi.apply_state(rho), psigma = phi.apply_state(sigma);
    double sgap = relative_entropy(rho, sigma).value() - relative_entropy(prho, psigma).value();
    rep.check("relent-strictly-decreases", sgap, sgap > 1e-6);
    rep.verdict = rep.pass() ? "maximal-preserved, not reversible" : "FAILED";
    return rep;
}

inline ReproReport appC() {
    ReproReport rep;
    rep.id = "appC";
    double t = 0.3, eps = 1e-3, delta = 1e-3;
    Mat rho0(2, 2);
    rho0 << 0.5, 0.5, 0.5, 0.5;
    PsdOperator rho((rho0 + eps * Mat::Identity(2, 2)) / (1.0 + 2.0 * eps));
    Mat sig(2, 2);
    sig << t, 0, 0, 1.0 - t;
    PsdOperator sigma(sig);
    DivergenceFunction fd = make_fdelta(delta);
    Mat e0 = Mat::Zero(2, 2), e1 = Mat::Zero(2, 2);
    e0(0, 0) = 1.0;
    e1(1, 1) = 1.0;
    QuantumChannel phi = pinching_channel({e0, e1});
    double before = tilde_f_div(fd, rho, sigma);
    double after = tilde_f_div(fd, phi.apply_state(rho), phi.apply_state(sigma));
    rep.check("pinching-increases-tilde", after - before, after > before + 1e-6);

    PsdOperator cr(Mat((Mat(2, 2) << 0.7, 0, 0, 0.3).finished()));
    PsdOperator cs(Mat((Mat(2, 2) << 0.4, 0, 0, 0.6).finished()));
    double tv = tilde_f_div(fd, cr, cs);
    double sv = standard_f_div(fd, cr, cs).value();
    rep.check("commuting-conformity", std::abs(tv - sv), std::abs(tv - sv) <= 1e-10);
    rep.verdict = rep.pass() ? "tilde divergence not monotone" : "FAILED";
    return rep;
}

inline ReproReport appD() {
    ReproReport rep;
    rep.id = "appD";
    Mat r0 = Mat::Zero(2, 2), K = Mat::Zero(2, 2), L(2, 2);
    r0(0, 0) = 1.0;
    K(1, 1) = 1.0;
    L << 0.5, 0.5, 0.5, 0.5;
    DivergenceFunction f4 = make_power(4.0);
    auto val = [&](double eps) {
        PsdOperator r(r0 + eps * K), s(r0 + eps * L);
        return standard_f_div(f4, r, s).value();
    };
    double v3 = val(1e-3), v4 = val(1e-4);
    rep.check("divergence-growth-8x", v4 / v3, v4 >= 8.0 * v3);
    rep.verdict = rep.pass() ? "S_{x^4} blows up along the perturbation" : "FAILED";
    return rep;
}

inline ReproReport sec6fid() {
    ReproReport rep;
    rep.id = "sec6-fid";
    double th = M_PI / 5.0, a = 0.7, b = 0.3;
    Mat R(2, 2);
    R << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    Mat d_ab = Mat::Zero(2, 2);
    d_ab(0, 0) = a;
    d_ab(1, 1) = b;
    PsdOperator sigma(R * d_ab * R.adjoint());
    Mat r = Mat::Zero(2, 2);
    r(0, 0) = 1.0;
    PsdOperator rho(r);
    Mat e0 = Mat::Zero(2, 2), e1 = Mat::Zero(2, 2);
    e0(0, 0) = 1.0;
    e1(1, 1) = 1.0;
    QuantumChannel phi = pinching_channel({e0, e1});
    PsdOperator prho = phi.apply_state(rho), psigma = phi.apply_state(sigma);

    for (double alpha : {0.3, 0.5, 0.7}) {
        AzParams p(alpha, 1.0 - alpha);
        double gap = detail::ext_gap(d_az(p, rho, sigma), d_az(p, prho, psigma));
        rep.check("E1-z=1-alpha:" + std::to_string(alpha), gap, gap <= 1e-9);
    }
    double sgap = relative_entropy(rho, sigma).value() - relative_entropy(prho, psigma).value();
    rep.check("relent-strictly-decreases", sgap, sgap > 1e-4);
    PetzPair pp = petz_pair(phi, sigma);
    double petz = trace_norm(pp.phi_sigma_star(prho.matrix()) - rho.matrix());
    rep.check("E3-petz-fails", petz, petz > 1e-3);
    rep.verdict = rep.pass() ? "fidelity-type equality without reversibility" : "FAILED";
    return rep;
}

inline ReproReport sec6dmax() {
    ReproReport rep;
    rep.id = "sec6-dmax";
    Mat s = Mat::Zero(3, 3);
    s(0, 0) = 0.5;
    s(1, 1) = 0.25;
    s(2, 2) = 0.25;
    Mat r = Mat::Zero(3, 3);
    r(0, 0) = 0.9;
    r(1, 1) = 0.05;
    r(2, 2) = 0.05;
    r(1, 2) = 0.03;
    r(2, 1) = 0.03;
    PsdOperator rho(r), sigma(s);
    std::vector<Mat> projs;
    for (int i = 0; i < 3; ++i) {
        Mat P = Mat::Zero(3, 3);
        P(i, i) = 1.0;
        projs.push_back(P);
    }
    QuantumChannel phi = pinching_channel(projs);
    PsdOperator prho = phi.apply_state(rho), psigma = phi.apply_state(sigma);
    double dgap = std::abs(d_max(rho, sigma).value() - d_max(prho, psigma).value());
    rep.check("dmax-preserved", dgap, dgap <= 1e-9);
    double q_in = (rho.matrix() * sigma.pinv() * rho.matrix()).trace().real();
    double q_out = (prho.matrix() * psigma.pinv() * prho.matrix()).trace().real();
    rep.check("cond-c-violated", q_in - q_out, q_in - q_out > 1e-4);
    rep.verdict = rep.pass() ? "D_max preserved, quadratic condition violated" : "FAILED";
    return rep;
}

inline ReproReport appB() {
    ReproReport rep;
    rep.id = "appB";
    Eigen::MatrixXd T(4, 4);
    T << 1, 0, 0, 0, 0.25, 0.25, 0.25, 0.25, 0.25, 0.25, 0.25, 0.25, 0, 0, 0, 1;
    QuantumChannel phi = stochastic_matrix_channel(T);
    PsdOperator omega(Mat(0.25 * Mat::Identity(4, 4)));
    OperatorSubspace md = multiplicative_domain(phi, omega);
    rep.check("multdomain-dim-1", static_cast<double>(md.subspace_dim()), md.subspace_dim() == 1);
    OperatorSubspace fix = fixed_point_set(phi);
    rep.check("fix-dim-at-least-2", static_cast<double>(fix.subspace_dim()),
              fix.subspace_dim() >= 2);
    Mat A = Mat::Zero(4, 4);
    A(0, 0) = 1.0;
    A(1, 1) = 2.0;
    A(2, 2) = 2.0;
    A(3, 3) = 3.0;
    double fixres = inf_norm(phi.apply(A) - A);
    rep.check("A-fixed", fixres, fixres <= 1e-9);
    double sqres = inf_norm(phi.apply(A * A) - A * A);
    rep.check("A-squared-not-fixed", sqres, sqres > 1e-2);
    rep.verdict = rep.pass() ? "fix(Phi) is not an algebra; M_Phi = scalars" : "FAILED";
    return rep;
}

} // namespace repro

inline ReproReport reproduce_example(const std::string& id) {
    if (id == "ex4.8") return repro::ex48();
    if (id == "appC") return repro::appC();
    if (id == "appD") return repro::appD();
    if (id == "sec6-fid") return repro::sec6fid();
    if (id == "sec6-dmax") return repro::sec6dmax();
    if (id == "appB") return repro::appB();
    throw Error("reproduce_example: unknown id '" + id + "'");
}

inline std::vector<std::string> all_repro_ids() {
    return {"ex4.8", "appC", "appD", "sec6-fid", "sec6-dmax", "appB"};
}

} // namespace qdiv

#endif // QDIV_PAPERLAB_HPP
