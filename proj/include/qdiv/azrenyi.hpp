#ifndef QDIV_AZRENYI_HPP
#define QDIV_AZRENYI_HPP

/*
 *  alpha-z Renyi divergences, D_max, monotonicity-region predicates,
 *  the (E0)-(E5) equality battery for bistochastic maps, and the
 *  majorization / trace-convexity lemmas
 *
 *  D_{alpha,z} here follows the convention without division by Tr rho
 */

#include <set>
#include "reversibility.hpp"

namespace qdiv {

struct AzParams {
    double alpha = 0.0;
    double z = 0.0;
    AzParams(double a, double zz) : alpha(a), z(zz) {
        require(a > 0.0 && a != 1.0 && zz > 0.0, "AzParams: need alpha>0, alpha!=1, z>0");
    }
};

// Q = Tr (rho^{a/2z} sigma^{(1-a)/z} rho^{a/2z})^z on supports; +inf iff a>1
// and supp rho not<= supp sigma
inline ExtendedReal q_az(const AzParams& p, const PsdOperator& rho, const PsdOperator& sigma) {
    require(rho.dim() == sigma.dim(), "q_az: dimension mismatch");
    if (p.alpha > 1.0 && !support_leq(rho, sigma)) return ExtendedReal::infinity();
    Mat A = rho.pow_support(p.alpha / (2.0 * p.z));
    Mat B = sigma.pow_support((1.0 - p.alpha) / p.z);
    PsdOperator M(A * B * A);
    double Q = 0.0;
    const auto& sd = M.spectral();
    for (size_t k = 0; k < sd.eigenvalues.size(); ++k)
        if (sd.eigenvalues[k] > 0.0)
            Q += std::pow(sd.eigenvalues[k], p.z) * sd.projectors[k].trace().real();
    return ExtendedReal(Q);
}

inline ExtendedReal d_az(const AzParams& p, const PsdOperator& rho, const PsdOperator& sigma) {
    ExtendedReal Q = q_az(p, rho, sigma);
    if (Q.is_inf()) return ExtendedReal::infinity();
    if (Q.value() <= 0.0) {
        require(p.alpha < 1.0, "d_az: vanishing trace functional at alpha > 1");
        return ExtendedReal::infinity();
    }
    return ExtendedReal(std::log(Q.value()) / (p.alpha - 1.0));
}

inline ExtendedReal sandwiched_renyi(double alpha, const PsdOperator& rho, const PsdOperator& sigma) {
    return d_az(AzParams(alpha, alpha), rho, sigma);
}

inline ExtendedReal d_max(const PsdOperator& rho, const PsdOperator& sigma) {
    if (!support_leq(rho, sigma)) return ExtendedReal::infinity();
    Mat sih = sigma.pinv_sqrt();
    PsdOperator M(sih * rho.matrix() * sih);
    double lmax = M.spectral().eigenvalues.front();
    return ExtendedReal(std::log(lmax));
}

enum class RegionContext { general, fixed_sigma, fixed_rho };

struct RegionVerdict {
    std::set<char> general_conditions;       // subset of {a,b,c,d}
    std::set<char> fixedpoint_conditions;    // roman i..iv as '1'..'4'
    bool monotone_claimed = false;
};

inline RegionVerdict monotonicity_region(const AzParams& p, RegionContext ctx) {
    RegionVerdict v;
    double a = p.alpha, z = p.z;
    const double eps = 1e-12;
    if (ctx == RegionContext::general) {
        if (a < 1.0 && z >= std::max(a, 1.0 - a) - eps) v.general_conditions.insert('a');
        if (a > 1.0 && a <= 2.0 + eps && std::abs(z - 1.0) <= eps) v.general_conditions.insert('b');
        if (a > 1.0 && std::abs(z - a) <= eps) v.general_conditions.insert('c');
        if (a > 1.0 && a <= 2.0 + eps && std::abs(z - a / 2.0) <= eps) v.general_conditions.insert('d');
        v.monotone_claimed = !v.general_conditions.empty();
    } else if (ctx == RegionContext::fixed_sigma) {
        if (a <= z + eps && z <= 1.0 + eps) v.fixedpoint_conditions.insert('1');
        if (a >= z - eps && z >= std::max(1.0, a / 2.0) - eps) v.fixedpoint_conditions.insert('3');
        v.monotone_claimed = !v.fixedpoint_conditions.empty();
    } else {
        if (a < 1.0 && 1.0 - a <= z + eps && z <= 1.0 + eps) v.fixedpoint_conditions.insert('2');
        if (a > 1.0 && z >= std::max(1.0, a - 1.0) - eps) v.fixedpoint_conditions.insert('4');
        v.monotone_claimed = !v.fixedpoint_conditions.empty();
    }
    return v;
}

namespace detail {

inline double eigen_multiset_distance(const Mat& A, const Mat& B) {
    Eigen::SelfAdjointEigenSolver<Mat> ea(A), eb(B);
    return (ea.eigenvalues() - eb.eigenvalues()).cwiseAbs().maxCoeff();
}

} // namespace detail

inline EqualityReport az_equality_battery(const QuantumChannel& phi, const PsdOperator& rho,
                                          const PsdOperator& sigma, const AzParams& p) {
    require(phi.trace_preserving && phi.unital, "az_equality_battery: channel must be bistochastic");
    EqualityReport rep;
    PsdOperator prho = phi.apply_state(rho);
    PsdOperator psigma = phi.apply_state(sigma);

    rep.add("E1-daz-gap", detail::ext_gap(d_az(p, rho, sigma), d_az(p, prho, psigma)), 1e-9);

    QuantumChannel adj = phi.adjoint();
    double e2 = std::max(trace_norm(adj.apply(prho.matrix()) - rho.matrix()),
                         trace_norm(adj.apply(psigma.matrix()) - sigma.matrix()));
    rep.add("E2-adjoint-fix", e2, 1e-8);

    PetzPair ps = petz_pair(phi, sigma);
    rep.add("E3-petz-sigma", trace_norm(ps.phi_sigma_star(prho.matrix()) - rho.matrix()), 1e-8);

    PetzPair pr = petz_pair(phi, rho);
    rep.add("E4-petz-rho", trace_norm(pr.phi_sigma_star(psigma.matrix()) - sigma.matrix()), 1e-8);

    double mdist = std::max(detail::eigen_multiset_distance(prho.matrix(), rho.matrix()),
                            detail::eigen_multiset_distance(psigma.matrix(), sigma.matrix()));
    rep.add("E5-unitary-orbit", std::max(e2, mdist), 1e-8);

    rep.verdict = rep["E3-petz-sigma"].pass ? "reversible-on-pair" : "not-reversible";
    return rep;
}

struct MajorizationResult {
    RVec partial_sum_gaps;  // sum_k lam(X) - sum_k lam(Phi X), k = 1..d
    bool majorization_pass = false;
    double kyfan_crosscheck = 0.0;  // worst |top-k projector value - partial sum|
};

inline MajorizationResult ky_fan_majorization(const QuantumChannel& phi,
                                              const HermitianOperator& X, double tol = 1e-9) {
    require(phi.trace_preserving && phi.unital, "ky_fan_majorization: channel must be bistochastic");
    Mat Y = phi.apply(X.matrix());
    Eigen::SelfAdjointEigenSolver<Mat> ex(X.matrix()), ey(Y);
    int d = X.dim();
    MajorizationResult r;
    r.partial_sum_gaps.resize(d);
    r.majorization_pass = true;
    double sx = 0.0, sy = 0.0, worst = 0.0;
    for (int k = 0; k < d; ++k) {
        sx += ex.eigenvalues()(d - 1 - k);
        sy += ey.eigenvalues()(d - 1 - k);
        r.partial_sum_gaps(k) = sx - sy;
        if (sx - sy < -tol) r.majorization_pass = false;
        // Ky Fan value via the projector onto the top k+1 eigenvectors
        Mat P = Mat::Zero(d, d);
        for (int i = 0; i <= k; ++i)
            P += ey.eigenvectors().col(d - 1 - i) * ey.eigenvectors().col(d - 1 - i).adjoint();
        worst = std::max(worst, std::abs((P * Y).trace().real() - sy));
    }
    if (std::abs(r.partial_sum_gaps(d - 1)) > tol) r.majorization_pass = false;  // equal totals
    r.kyfan_crosscheck = worst;
    return r;
}

struct UnitaryEqualityResult {
    double trace_f_gap = 0.0;       // Tr f(X) - Tr f(Phi X), >= 0 expected
    double trsq_gap = 0.0;          // |Tr (Phi X)^2 - Tr X^2|
    double adjoint_fix_residual = 0.0;  // ||Phi* Phi X - X||
    double eigen_multiset_gap = 0.0;
};

inline UnitaryEqualityResult trace_convexity_unitary_check(const QuantumChannel& phi,
                                                           const HermitianOperator& X,
                                                           const std::function<double(double)>& f) {
    require(phi.trace_preserving && phi.unital,
            "trace_convexity_unitary_check: channel must be bistochastic");
    Mat Y = phi.apply(X.matrix());
    auto trf = [&f](const Mat& M) {
        Eigen::SelfAdjointEigenSolver<Mat> es(M);
        double t = 0.0;
        for (int i = 0; i < es.eigenvalues().size(); ++i) t += f(es.eigenvalues()(i));
        return t;
    };
    UnitaryEqualityResult r;
    r.trace_f_gap = trf(X.matrix()) - trf(Y);
    r.trsq_gap = std::abs((Y * Y).trace().real() - (X.matrix() * X.matrix()).trace().real());
    r.adjoint_fix_residual = hs_norm(phi.adjoint().apply(Y) - X.matrix());
    r.eigen_multiset_gap = detail::eigen_multiset_distance(Y, X.matrix());
    return r;
}

} // namespace qdiv

#endif // QDIV_AZRENYI_HPP
