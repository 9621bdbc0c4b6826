#ifndef QDIV_FDIV_HPP
#define QDIV_FDIV_HPP

/*
 *  standard, maximal and S~ f-divergences with exact extended-real case
 *  analysis, plus relative entropy, Belavkin-Staszewski entropy and the
 *  Renyi wrapper
 */

#include "perspective.hpp"

namespace qdiv {

namespace detail {
// kills eigensolver dust so that 0 * inf = 0 is decided exactly
inline double chop(double x, double tol = 1e-11) { return (std::abs(x) <= tol) ? 0.0 : x; }
} // namespace detail

// S_f = sum_{a>0,b>0} b f(a/b) Tr Pa Qb + f(0+) Tr (I-rho0) sigma + f'(inf) Tr rho (I-sigma0)
inline ExtendedReal standard_f_div(const DivergenceFunction& f, const PsdOperator& rho,
                                   const PsdOperator& sigma) {
    require(rho.dim() == sigma.dim(), "standard_f_div: dimension mismatch");
    RelativeModular rm = relative_modular(rho, sigma);
    int d = rho.dim();
    Mat I = Mat::Identity(d, d);
    double w0 = detail::chop(((I - rho.support()) * sigma.matrix()).trace().real());
    double winf = detail::chop((rho.matrix() * (I - sigma.support())).trace().real());
    ExtendedReal val(0.0);
    for (size_t i = 0; i < rm.a.size(); ++i)
        for (size_t j = 0; j < rm.b.size(); ++j) {
            double a = rm.a[i], b = rm.b[j];
            if (a <= 0.0 || b <= 0.0) continue;
            double w = detail::chop(rm.overlap(i, j));
            if (w == 0.0) continue;
            val += ExtendedReal(b * f(a / b) * w);
        }
    val += w0 * f.f_at_0;
    val += winf * f.fprime_at_inf;
    return val;
}

// S^_f = Tr P_f(rho, sigma); +inf iff f'(inf)=inf and supp rho not<= supp sigma
inline ExtendedReal maximal_f_div(const DivergenceFunction& f, const PsdOperator& rho,
                                  const PsdOperator& sigma) {
    require(f.operator_convex, "maximal_f_div: f must be operator convex");
    require(rho.dim() == sigma.dim(), "maximal_f_div: dimension mismatch");
    if (f.fprime_at_inf.is_inf() && !support_leq(rho, sigma)) return ExtendedReal::infinity();
    Mat P = operator_perspective(f, rho, sigma);
    return ExtendedReal(P.trace().real());
}

// Tr sigma f(rho^{1/2} sigma^{-1} rho^{1/2}); Appendix-style quantity, invertible inputs only
inline double tilde_f_div(const DivergenceFunction& f, const PsdOperator& rho,
                          const PsdOperator& sigma) {
    require(rho.rank() == rho.dim() && sigma.rank() == sigma.dim(),
            "tilde_f_div: inputs must be invertible");
    Mat Rh = rho.sqrt();
    PsdOperator M(Rh * sigma.pinv() * Rh);
    Mat F = M.func_calculus(f.eval);
    return (sigma.matrix() * F).trace().real();
}

inline ExtendedReal relative_entropy(const PsdOperator& rho, const PsdOperator& sigma) {
    return standard_f_div(make_eta(), rho, sigma);
}

inline ExtendedReal bs_relative_entropy(const PsdOperator& rho, const PsdOperator& sigma) {
    return maximal_f_div(make_eta(), rho, sigma);
}

// D_alpha = (alpha-1)^{-1} [log(s(alpha) S_{f_alpha}) - log Tr rho]; alpha=1 is S / Tr rho
inline ExtendedReal renyi_alpha(double alpha, const PsdOperator& rho, const PsdOperator& sigma) {
    require(alpha > 0.0, "renyi_alpha: alpha must be positive");
    double tr = rho.trace();
    require(tr > 0.0, "renyi_alpha: rho must be nonzero");
    if (alpha == 1.0) {
        ExtendedReal S = relative_entropy(rho, sigma);
        if (S.is_inf()) return S;
        return ExtendedReal(S.value() / tr);
    }
    ExtendedReal S = standard_f_div(make_power(alpha), rho, sigma);
    if (S.is_inf()) return ExtendedReal::infinity();
    double q = sign_alpha(alpha) * S.value();  // Tr rho^alpha sigma^{1-alpha}
    if (q <= 0.0) return ExtendedReal::infinity();
    return ExtendedReal((std::log(q) - std::log(tr)) / (alpha - 1.0));
}

} // namespace qdiv

#endif // QDIV_FDIV_HPP
