#ifndef QDIV_PERSPECTIVE_HPP
#define QDIV_PERSPECTIVE_HPP

/*
 *  scalar and operator perspectives, operator connections (Kubo-Ando means)
 *  and monotone metric forms
 *
 *  operator_perspective case analysis (never an epsilon limit):
 *    (1) equal supports        B^{1/2} f(B^{-1/2} A B^{-1/2}) B^{1/2} on supp B
 *    (3) f(0+)<inf, A0<=B0     same formula, f extended by f(0+) on ker within supp B
 *    (4) f'(inf)<inf, B0<=A0   transposed: P_f(A,B) = P_{f~}(B,A)
 *    (2) both endpoints finite f(0+)B + f'(inf)A - sum w (1+s) (B : A/s)
 *  with the parallel sum B : C = B - B (B+C)^+ B, exact for PSD inputs
 */

#include <functional>
#include "divergence_function.hpp"
#include "operators.hpp"

namespace qdiv {

inline ExtendedReal scalar_perspective(const DivergenceFunction& f, double x, double y) {
    require(x >= 0.0 && y >= 0.0, "scalar_perspective: negative argument");
    if (y > 0.0 && x > 0.0) return ExtendedReal(y * f(x / y));
    if (x == 0.0 && y == 0.0) return ExtendedReal(0.0);
    if (x == 0.0) return y * f.f_at_0;
    return x * f.fprime_at_inf;  // y == 0, x > 0
}

inline Mat parallel_sum(const Mat& A, const Mat& B) {
    PsdOperator S(A + B);
    Mat R = A - A * S.pinv() * A;
    return 0.5 * (R + R.adjoint());
}

namespace detail {

// B^{1/2} f(B^{-1/2} A B^{-1/2}) B^{1/2} with f(0+) on ker(G) inside supp B
inline Mat sandwich_calculus(const DivergenceFunction& f, const PsdOperator& A,
                             const PsdOperator& B, bool extend_at_zero) {
    Mat Bh = B.sqrt();
    Mat Bih = B.pinv_sqrt();
    PsdOperator G(Bih * A.matrix() * Bih);
    Mat FG = G.func_calculus(f.eval);
    if (extend_at_zero) {
        Mat ker_in_supp = B.support() - G.support();
        FG += f.f_at_0.value() * ker_in_supp;
    }
    Mat R = Bh * FG * Bh;
    return 0.5 * (R + R.adjoint());
}

} // namespace detail

inline Mat operator_perspective(const DivergenceFunction& f, const PsdOperator& A,
                                const PsdOperator& B) {
    require(f.operator_convex, "operator_perspective: f must be operator convex");
    require(A.dim() == B.dim(), "operator_perspective: dimension mismatch");
    bool a_le_b = support_leq(A, B);
    bool b_le_a = support_leq(B, A);
    if (a_le_b && b_le_a) return detail::sandwich_calculus(f, A, B, false);
    if (!f.f_at_0.is_inf() && a_le_b) return detail::sandwich_calculus(f, A, B, true);
    if (!f.fprime_at_inf.is_inf() && b_le_a)
        return detail::sandwich_calculus(transpose_function(f), B, A, true);
    if (!f.f_at_0.is_inf() && !f.fprime_at_inf.is_inf()) {
        require(f.has_nu_rep,
                "operator_perspective: case (2) needs a finite-endpoint representation");
        Mat R = f.f_at_0.value() * B.matrix() + f.fprime_at_inf.value() * A.matrix();
        for (const auto& at : f.nu)
            R -= at.w * (1.0 + at.s) * parallel_sum(B.matrix(), A.matrix() / at.s);
        return 0.5 * (R + R.adjoint());
    }
    std::string which = a_le_b ? "supp B <= supp A fails with f'(inf)=inf"
                               : "supp A <= supp B fails with f(0+)=inf";
    throw Error("operator_perspective: undefined, " + which);
}

/*
 *  A tau_h B for nonnegative operator monotone h with h(0+) finite
 *
 *  exact paths: equal supports (direct calculus) and connection atoms
 *  h = a + b x + sum v x(1+s)/(x+s); otherwise a pseudo-inverse heuristic
 *  checked against epsilon-regularized evaluations at 1e-7 and 1e-9
 */
struct ConnectionFunction {
    std::string name;
    std::function<double(double)> eval;
    double h_at_0 = 0.0;
    bool has_atoms = false;
    double a = 0.0, b = 0.0;
    std::vector<RepAtom> atoms;
};

inline ConnectionFunction make_hs_connection(double s) {
    require(s > 0.0, "make_hs_connection: s must be positive");
    ConnectionFunction h;
    h.name = "hs:" + std::to_string(s);
    h.eval = [s](double x) { return x * (1.0 + s) / (x + s); };
    h.has_atoms = true;
    h.atoms = {{s, 1.0}};
    return h;
}

inline ConnectionFunction make_geometric_mean(double alpha) {
    require(alpha >= 0.0 && alpha <= 1.0, "make_geometric_mean: alpha in [0,1]");
    ConnectionFunction h;
    h.name = "geo:" + std::to_string(alpha);
    h.eval = [alpha](double x) { return std::pow(x, alpha); };
    if (alpha == 0.0) h.h_at_0 = 1.0;
    return h;
}

namespace detail {

inline Mat connection_eps(const ConnectionFunction& h, const Mat& A, const Mat& B, double eps) {
    int d = static_cast<int>(A.rows());
    PsdOperator Ae(A + eps * Mat::Identity(d, d));
    Mat Ah = Ae.sqrt(), Aih = Ae.pinv_sqrt();
    PsdOperator G(Aih * (B + eps * Mat::Identity(d, d)) * Aih);
    Mat R = Ah * G.func_calculus(h.eval) * Ah;
    return 0.5 * (R + R.adjoint());
}

} // namespace detail

inline Mat operator_connection(const ConnectionFunction& h, const PsdOperator& A,
                               const PsdOperator& B) {
    require(A.dim() == B.dim(), "operator_connection: dimension mismatch");
    require(std::isfinite(h.h_at_0), "operator_connection: h(0+) must be finite");
    if (h.has_atoms) {
        Mat R = h.a * A.matrix() + h.b * B.matrix();
        for (const auto& at : h.atoms)
            R += at.w * (1.0 + at.s) * parallel_sum(A.matrix(), B.matrix() / at.s);
        return 0.5 * (R + R.adjoint());
    }
    // exact whenever supp B <= supp A (h continuous at 0 kills the rest)
    bool dominated = support_leq(B, A);
    Mat Ah = PsdOperator(A.matrix()).sqrt();
    Mat Aih = PsdOperator(A.matrix()).pinv_sqrt();
    PsdOperator G(Aih * B.matrix() * Aih);
    Mat primary = Ah * (G.func_calculus(h.eval) + h.h_at_0 * (A.support() - G.support())) * Ah;
    primary = Mat(0.5 * (primary + primary.adjoint()).eval());
    if (!dominated) {
        // epsilon evaluations drift like sqrt(eps); cancel that in the check only
        Mat e9 = detail::connection_eps(h, A.matrix(), B.matrix(), 1e-9);
        Mat e7 = detail::connection_eps(h, A.matrix(), B.matrix(), 1e-7);
        double r9 = std::sqrt(1e-9), r7 = std::sqrt(1e-7);
        Mat extrap = (e9 * r7 - e7 * r9) / (r7 - r9);
        double scale = std::max(1.0, inf_norm(primary));
        if (inf_norm(primary - extrap) > 1e-5 * scale)
            throw Error("operator_connection: epsilon-consistency check failed");
    }
    return primary;
}

// <X, Omega_sigma^kappa X> for invertible sigma, assembled from eigen-data
inline double monotone_metric_form(const std::function<double(double)>& kappa,
                                   const PsdOperator& sigma, const HermitianOperator& X) {
    require(sigma.rank() == sigma.dim(), "monotone_metric_form: sigma not invertible");
    const auto& sd = sigma.spectral();
    double val = 0.0;
    for (size_t i = 0; i < sd.eigenvalues.size(); ++i)
        for (size_t j = 0; j < sd.eigenvalues.size(); ++j) {
            double a = sd.eigenvalues[i], b = sd.eigenvalues[j];
            double term = (sd.projectors[i] * X.matrix() * sd.projectors[j] * X.matrix())
                              .trace()
                              .real();
            val += kappa(a / b) / b * term;
        }
    return val;
}

inline double bkm_kernel(double x) {
    if (std::abs(x - 1.0) < 1e-8) return 1.0 - (x - 1.0) / 2.0 + (x - 1.0) * (x - 1.0) / 3.0;
    return std::log(x) / (x - 1.0);
}

} // namespace qdiv

#endif // QDIV_PERSPECTIVE_HPP
