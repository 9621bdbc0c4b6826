#ifndef QDIV_REVERSIBILITY_HPP
#define QDIV_REVERSIBILITY_HPP

/*
 *  fixed-point sets, multiplicative domains, numeric Wedderburn block
 *  decomposition of fixed-point algebras, and the equality-condition
 *  batteries for standard and maximal divergence preservation
 */

#include <random>
#include "channels.hpp"

namespace qdiv {

struct OperatorSubspace {
    int dim = 0;
    std::vector<Mat> basis;  // Hilbert-Schmidt orthonormal
    bool star_closed = false;
    bool unital = false;

    size_t subspace_dim() const { return basis.size(); }

    Mat span_projector() const {
        Mat P = Mat::Zero(dim * dim, dim * dim);
        for (const auto& B : basis) {
            Vec v = vec(B);
            P += v * v.adjoint();
        }
        return P;
    }

    Mat project(const Mat& X) const {
        Vec v = vec(X);
        Vec w = Vec::Zero(v.size());
        for (const auto& B : basis) {
            Vec b = vec(B);
            w += (b.adjoint() * v)(0) * b;
        }
        return unvec(w, dim);
    }

    bool contains(const Mat& X, double tol = 1e-8) const {
        return hs_norm(X - project(X)) <= tol * std::max(1.0, hs_norm(X));
    }
};

inline double subspace_distance(const OperatorSubspace& A, const OperatorSubspace& B) {
    return inf_norm(A.span_projector() - B.span_projector());
}

namespace detail {

inline std::vector<Mat> orthonormalize(const std::vector<Mat>& mats, int d, double tol = 1e-10) {
    std::vector<Mat> out;
    std::vector<Vec> vs;
    for (const auto& M : mats) {
        Vec v = vec(M);
        for (const auto& u : vs) v -= (u.adjoint() * v)(0) * u;
        double n = v.norm();
        if (n > tol) {
            v /= n;
            vs.push_back(v);
            out.push_back(unvec(v, d));
        }
    }
    return out;
}

inline void set_structure_flags(OperatorSubspace& S) {
    S.star_closed = true;
    for (const auto& B : S.basis)
        if (!S.contains(B.adjoint())) {
            S.star_closed = false;
            break;
        }
    S.unital = S.contains(Mat::Identity(S.dim, S.dim));
}

// columns of M spanning the kernel (singular value < thresh)
inline std::vector<Vec> kernel_vectors(const Mat& M, double thresh) {
    Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeFullV);
    std::vector<Vec> out;
    const auto& sv = svd.singularValues();
    for (int i = 0; i < svd.matrixV().cols(); ++i)
        if (i >= sv.size() || sv(i) < thresh) out.push_back(svd.matrixV().col(i));
    return out;
}

} // namespace detail

// kernel of (superoperator - id); basis orthonormalized
inline OperatorSubspace fixed_point_set_of(const Mat& superop, int d, double thresh = 1e-8) {
    Mat M = superop - Mat::Identity(d * d, d * d);
    OperatorSubspace S;
    S.dim = d;
    std::vector<Mat> raw;
    for (const auto& v : detail::kernel_vectors(M, thresh)) raw.push_back(unvec(v, d));
    S.basis = detail::orthonormalize(raw, d);
    detail::set_structure_flags(S);
    return S;
}

inline OperatorSubspace fixed_point_set(const QuantumChannel& phi, double thresh = 1e-8) {
    require(phi.in_dim == phi.out_dim, "fixed_point_set: channel must be endomorphic");
    return fixed_point_set_of(phi.superoperator(), phi.in_dim, thresh);
}

// joint kernel of the Schwarz-defect sesquilinear forms with reference omega
inline OperatorSubspace multiplicative_domain(const QuantumChannel& phi, const PsdOperator& omega,
                                              double thresh = 1e-8) {
    require(phi.in_dim == phi.out_dim, "multiplicative_domain: channel must be endomorphic");
    require(phi.unital, "multiplicative_domain: channel must be unital");
    require(omega.rank() == omega.dim(), "multiplicative_domain: omega must be invertible");
    int d = phi.in_dim;
    int n = d * d;
    auto unit = [d](int i, int j) {
        Mat E = Mat::Zero(d, d);
        E(i, j) = 1.0;
        return E;
    };
    std::vector<Mat> phiE(n);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) phiE[j * d + i] = phi.apply(unit(i, j));
    // B1(X,Y) = Tr omega (Phi(Y^dag X) - Phi(Y)^dag Phi(X)); B2 with XY^dag
    Mat F1 = Mat::Zero(n, n), F2 = Mat::Zero(n, n);
    const Mat& W = omega.matrix();
    for (int a = 0; a < n; ++a) {
        int ia = a % d, ja = a / d;
        for (int b = 0; b < n; ++b) {
            int ib = b % d, jb = b / d;
            Mat YdX = unit(ib, jb).adjoint() * unit(ia, ja);
            Mat XYd = unit(ia, ja) * unit(ib, jb).adjoint();
            F1(b, a) = (W * (phi.apply(YdX) - phiE[b].adjoint() * phiE[a])).trace();
            F2(b, a) = (W * (phi.apply(XYd) - phiE[a] * phiE[b].adjoint())).trace();
        }
    }
    Mat F = F1 + F2;  // both PSD forms in the coefficient vector
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (F + F.adjoint()));
    OperatorSubspace S;
    S.dim = d;
    std::vector<Mat> raw;
    for (int i = 0; i < n; ++i)
        if (std::abs(es.eigenvalues()(i)) < thresh) raw.push_back(unvec(es.eigenvectors().col(i), d));
    S.basis = detail::orthonormalize(raw, d);
    detail::set_structure_flags(S);
    return S;
}

struct AlgebraBlock {
    int d_L = 0, d_R = 0;
    Mat isometry;       // (d_L * d_R) columns mapping C^{d_L} (x) C^{d_R} -> H
    Mat omega;          // d_R x d_R, set by decompose_fixed_point_states
    bool has_omega = false;
};

struct AlgebraBlockDecomposition {
    std::vector<AlgebraBlock> blocks;
    Mat residual_projector;  // complement of the algebra unit
};

namespace detail {

inline Mat random_hermitian_in(const std::vector<Mat>& basis, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Mat H = Mat::Zero(basis[0].rows(), basis[0].cols());
    for (const auto& B : basis) H += cxd(g(rng), g(rng)) * B;
    return 0.5 * (H + H.adjoint());
}

} // namespace detail

/*
 *  numeric Wedderburn decomposition of a star-closed algebra given by an
 *  orthonormal basis; the unit may be a proper projection
 */
inline AlgebraBlockDecomposition algebra_block_structure(const OperatorSubspace& A,
                                                         uint64_t seed = 0x5eed) {
    require(!A.basis.empty(), "algebra_block_structure: empty subspace");
    int d = A.dim;
    size_t n = A.basis.size();
    for (const auto& Bi : A.basis)
        for (const auto& Bj : A.basis)
            require(A.contains(Bi * Bj), "algebra_block_structure: input not closed under products");
    // unit of the algebra = support of sum B B^dag
    Mat G = Mat::Zero(d, d);
    for (const auto& B : A.basis) G += B * B.adjoint();
    Mat e = PsdOperator(G).support();
    // center: kernel of the stacked commutator map on coefficients
    Mat C(d * d * n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Mat comm = A.basis[i] * A.basis[j] - A.basis[j] * A.basis[i];
            C.block(j * d * d, i, d * d, 1) = vec(comm);
        }
    std::vector<Mat> center;
    for (const auto& v : detail::kernel_vectors(C, 1e-8)) {
        Mat Z = Mat::Zero(d, d);
        for (size_t i = 0; i < n; ++i) Z += v(i) * A.basis[i];
        center.push_back(Z);
    }
    require(!center.empty(), "algebra_block_structure: empty center");

    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 5; ++attempt) {
        Mat Zg = detail::random_hermitian_in(center, rng) + 3.0 * e;  // keep unit sector off 0
        SpectralDecomposition sd = spectral_decompose(HermitianOperator(Zg), 1e-7);
        std::vector<Mat> central_proj;
        bool ok = true;
        for (size_t k = 0; k < sd.eigenvalues.size(); ++k) {
            if (std::abs(sd.eigenvalues[k]) < 1e-6) continue;  // complement of e
            if (!A.contains(sd.projectors[k])) {
                ok = false;
                break;
            }
            central_proj.push_back(sd.projectors[k]);
        }
        if (!ok) continue;

        AlgebraBlockDecomposition out;
        out.residual_projector = Mat::Identity(d, d) - e;
        for (const auto& p : central_proj) {
            int m = static_cast<int>(std::lround(p.trace().real()));
            // compressed algebra basis
            std::vector<Mat> comp;
            for (const auto& B : A.basis) comp.push_back(p * B * p);
            comp = detail::orthonormalize(comp, d);
            int nk = static_cast<int>(comp.size());
            int dL = static_cast<int>(std::lround(std::sqrt(static_cast<double>(nk))));
            if (dL * dL != nk || m % dL != 0) {
                ok = false;
                break;
            }
            int dR = m / dL;
            // generic Hermitian element of the block: dL eigenvalue clusters of rank dR
            Mat Hk = detail::random_hermitian_in(comp, rng) + 7.0 * p;
            SpectralDecomposition hsd = spectral_decompose(HermitianOperator(Hk), 1e-7);
            std::vector<Mat> q;
            for (size_t k = 0; k < hsd.eigenvalues.size(); ++k)
                if (std::abs(hsd.eigenvalues[k]) > 1e-6) q.push_back(hsd.projectors[k]);
            if (static_cast<int>(q.size()) != dL) {
                ok = false;
                break;
            }
            for (const auto& qk : q)
                if (std::lround(qk.trace().real()) != dR) ok = false;
            if (!ok) break;
            // ONB of ran q_0 and partial isometries u_j: ran q_0 -> ran q_j inside the algebra
            Eigen::SelfAdjointEigenSolver<Mat> esq(q[0]);
            Mat V0(d, dR);
            int c = 0;
            for (int i = 0; i < d && c < dR; ++i)
                if (esq.eigenvalues()(d - 1 - i) > 0.5) V0.col(c++) = esq.eigenvectors().col(d - 1 - i);
            Mat V(d, dL * dR);
            for (int j = 0; j < dL; ++j) {
                Mat u;
                if (j == 0) {
                    u = q[0];
                } else {
                    Mat w = q[j] * detail::random_hermitian_in(comp, rng) * q[0];
                    PsdOperator wd(w.adjoint() * w);
                    u = w * wd.pinv_sqrt();
                    if (std::abs((u.adjoint() * u - q[0]).norm()) > 1e-6 * dR) {
                        ok = false;
                        break;
                    }
                }
                for (int r = 0; r < dR; ++r) V.col(j * dR + r) = u * V0.col(r);
            }
            if (!ok) break;
            AlgebraBlock blk;
            blk.d_L = dL;
            blk.d_R = dR;
            blk.isometry = V;
            out.blocks.push_back(blk);
        }
        if (!ok) continue;
        // reassembly check: span of { V (X (x) I_R) V^dag } must match A
        std::vector<Mat> rebuilt;
        for (const auto& blk : out.blocks) {
            for (int i = 0; i < blk.d_L; ++i)
                for (int j = 0; j < blk.d_L; ++j) {
                    Mat E = Mat::Zero(blk.d_L, blk.d_L);
                    E(i, j) = 1.0;
                    rebuilt.push_back(blk.isometry * kron(E, Mat::Identity(blk.d_R, blk.d_R)) *
                                      blk.isometry.adjoint());
                }
        }
        OperatorSubspace R;
        R.dim = d;
        R.basis = detail::orthonormalize(rebuilt, d);
        if (R.basis.size() == n && subspace_distance(R, A) < 1e-7) return out;
    }
    throw Error("algebra_block_structure: failed to extract a consistent decomposition");
}

namespace detail {

inline Mat partial_trace_L(const Mat& M, int dL, int dR) {
    Mat R = Mat::Zero(dR, dR);
    for (int i = 0; i < dL; ++i) R += M.block(i * dR, i * dR, dR, dR);
    return R;
}

inline Mat partial_trace_R(const Mat& M, int dL, int dR) {
    Mat L = Mat::Zero(dL, dL);
    for (int i = 0; i < dL; ++i)
        for (int j = 0; j < dL; ++j) {
            cxd t = 0.0;
            for (int r = 0; r < dR; ++r) t += M(i * dR + r, j * dR + r);
            L(i, j) = t;
        }
    return L;
}

} // namespace detail

// fix(Phi^* o Phi_sigma) as an algebra, with omega_k extracted from sigma
inline AlgebraBlockDecomposition decompose_fixed_point_states(const QuantumChannel& phi,
                                                              const PsdOperator& sigma,
                                                              uint64_t seed = 0x5eed) {
    PetzPair pp = petz_pair(phi, sigma);
    int d = sigma.dim();
    Mat s0 = sigma.support();
    LinearMap composed{d, d, [&phi, &pp, &s0](const Mat& X) {
                           return Mat(s0 * phi.adjoint().apply(pp.phi_sigma(s0 * X * s0)) * s0);
                       }};
    OperatorSubspace F = fixed_point_set_of(composed.superoperator(), d);
    AlgebraBlockDecomposition dec = algebra_block_structure(F, seed);
    for (auto& blk : dec.blocks) {
        Mat sk = blk.isometry.adjoint() * sigma.matrix() * blk.isometry;
        Mat omega = detail::partial_trace_L(sk, blk.d_L, blk.d_R);
        omega /= omega.trace().real();
        Mat sL = detail::partial_trace_R(sk, blk.d_L, blk.d_R);
        require(inf_norm(sk - kron(sL, omega)) <= 1e-7 * std::max(1.0, inf_norm(sk)),
                "decompose_fixed_point_states: sigma does not factor over a block");
        blk.omega = omega;
        blk.has_omega = true;
    }
    return dec;
}

// --- equality-condition batteries ---

struct ConditionResult {
    std::string name;
    double residual = 0.0;
    double tol = 0.0;
    bool pass = false;
};

struct EqualityReport {
    std::vector<ConditionResult> conditions;
    std::string verdict;

    void add(const std::string& name, double residual, double tol) {
        conditions.push_back({name, residual, tol, residual <= tol});
    }
    const ConditionResult& operator[](const std::string& name) const {
        for (const auto& c : conditions)
            if (c.name == name) return c;
        throw Error("EqualityReport: unknown condition " + name);
    }
};

namespace detail {

inline double ext_gap(const ExtendedReal& in, const ExtendedReal& out) {
    if (in.is_inf() && out.is_inf()) return 0.0;
    if (in.is_inf() || out.is_inf()) return std::numeric_limits<double>::infinity();
    return std::abs(in.value() - out.value());
}

} // namespace detail

inline EqualityReport standard_preservation_report(
    const QuantumChannel& phi, const PsdOperator& rho, const PsdOperator& sigma,
    const std::vector<DivergenceFunction>& f_list = {make_eta(), make_power(0.5), make_gs(1.0)},
    const std::vector<double>& z_list = {0.5, 1.0, 1.5, 2.0}, double tol = 1e-9) {
    require(support_leq(rho, sigma), "standard_preservation_report: supp rho <= supp sigma required");
    EqualityReport rep;
    PetzPair pp = petz_pair(phi, sigma);
    PsdOperator prho = phi.apply_state(rho);
    PsdOperator psigma = phi.apply_state(sigma);

    double petz_res = trace_norm(pp.phi_sigma_star(prho.matrix()) - rho.matrix());
    rep.add("petz-recovery", petz_res, 1e-8);

    Mat s0 = sigma.support();
    QuantumChannel adj = phi.adjoint();
    for (double z : z_list) {
        Mat lhs = s0 * adj.apply(psigma.pow_support(-z) * prho.pow_support(2.0 * z) *
                                 psigma.pow_support(-z)) * s0;
        Mat rhs = sigma.pow_support(-z) * rho.pow_support(2.0 * z) * sigma.pow_support(-z);
        std::string nm = (z == 0.5) ? "cond-vii" : "cond-vi-z=" + std::to_string(z);
        // sigma^{-z} amplifies small eigenvalues, so compare relative to the operand scale
        double scale = std::max(1.0, std::max(inf_norm(lhs), inf_norm(rhs)));
        rep.add(nm, inf_norm(lhs - rhs) / scale, 1e-8);
    }

    for (const auto& f : f_list) {
        ExtendedReal in = standard_f_div(f, rho, sigma);
        ExtendedReal out = standard_f_div(f, prho, psigma);
        rep.add("Sf-gap:" + f.name, detail::ext_gap(in, out), 1e-7);
    }

    bool densities = rho.rank() == rho.dim() && sigma.rank() == sigma.dim() &&
                     psigma.rank() == psigma.dim() && std::abs(rho.trace() - 1.0) < 1e-9 &&
                     std::abs(sigma.trace() - 1.0) < 1e-9;
    if (densities) {
        HermitianOperator X(rho.matrix() - sigma.matrix());
        HermitianOperator Y(prho.matrix() - psigma.matrix());
        auto half = [](double x) { return std::pow(x, -0.5); };
        rep.add("metric-gap:x^-1/2",
                std::abs(monotone_metric_form(half, sigma, X) - monotone_metric_form(half, psigma, Y)),
                1e-7);
        rep.add("metric-gap:bkm",
                std::abs(monotone_metric_form(bkm_kernel, sigma, X) -
                         monotone_metric_form(bkm_kernel, psigma, Y)),
                1e-7);
    }
    rep.verdict = (petz_res <= 1e-8) ? "reversible" : "not-reversible";
    return rep;
}

// P_phi for plain scalar phi with phi(0)=0, computed on supp B
inline Mat direct_perspective(const std::function<double(double)>& phi_fn, const PsdOperator& A,
                              const PsdOperator& B) {
    Mat Bh = B.sqrt(), Bih = B.pinv_sqrt();
    PsdOperator G(Bih * A.matrix() * Bih);
    Mat R = Bh * G.func_calculus(phi_fn) * Bh;
    return 0.5 * (R + R.adjoint());
}

inline EqualityReport maximal_preservation_report(const QuantumChannel& phi, const PsdOperator& rho,
                                                  const PsdOperator& sigma, double tol = 1e-9) {
    require(support_leq(rho, sigma), "maximal_preservation_report: supp rho <= supp sigma required");
    EqualityReport rep;
    PsdOperator prho = phi.apply_state(rho);
    PsdOperator psigma = phi.apply_state(sigma);

    double quad_in = (rho.matrix() * sigma.pinv() * rho.matrix()).trace().real();
    double quad_out = (prho.matrix() * psigma.pinv() * prho.matrix()).trace().real();
    rep.add("cond-c-quadratic", std::abs(quad_in - quad_out), tol);

    Mat g_lhs = phi.apply(rho.matrix() * sigma.pinv() * rho.matrix());
    Mat g_rhs = prho.matrix() * psigma.pinv() * prho.matrix();
    rep.add("cond-g-operator", inf_norm(g_lhs - g_rhs), 1e-8);

    std::vector<std::pair<std::string, std::function<double(double)>>> phis = {
        {"sqrt", [](double x) { return std::sqrt(x); }},
        {"square", [](double x) { return x * x; }},
        {"x/(x+1)", [](double x) { return x / (x + 1.0); }}};
    for (const auto& [nm, fn] : phis) {
        Mat lhs = direct_perspective(fn, prho, psigma);
        Mat rhs = phi.apply(direct_perspective(fn, rho, sigma));
        rep.add("cond-d-persp:" + nm, inf_norm(lhs - rhs), 1e-8);
    }

    ConnectionFunction geo = make_geometric_mean(0.5);
    Mat f_lhs = operator_connection(geo, psigma, prho);
    Mat f_rhs = phi.apply(operator_connection(geo, sigma, rho));
    rep.add("cond-f-geomean", inf_norm(f_lhs - f_rhs), 1e-8);

    for (const auto& f : {make_eta(), make_power(0.5), make_gs(1.0), make_quad()}) {
        ExtendedReal in = maximal_f_div(f, rho, sigma);
        ExtendedReal out = maximal_f_div(f, prho, psigma);
        rep.add("maxSf-gap:" + f.name, detail::ext_gap(in, out), 1e-7);
    }

    bool c_pass = rep["cond-c-quadratic"].pass;
    bool g_pass = rep["cond-g-operator"].pass;
    rep.add("consistency-c-g", (c_pass == g_pass) ? 0.0 : 1.0, 0.5);
    rep.verdict = c_pass ? "maximal-preserved" : "not-preserved";
    return rep;
}

} // namespace qdiv

#endif // QDIV_REVERSIBILITY_HPP
