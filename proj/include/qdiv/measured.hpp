#ifndef QDIV_MEASURED_HPP
#define QDIV_MEASURED_HPP

/*
 *  measured and projectively measured f-divergences
 *
 *  classical_f_div            sum of scalar perspectives P_f(p_x, q_x)
 *  measured_projective_opt    multi-start ascent over orthonormal bases
 *  bloch_grid_opt             exhaustive qubit baseline (certified grid)
 *  variational_measured_renyi concave variational formula for S_{f_alpha}^pr
 *  pinched_measured_renyi     n-copy pinched eigenbasis lower-bound ladder
 *  pinsker_certificate        f''(1)/2 ||rho-sigma||_1^2 vs dephased classical value
 */

#include <random>
#include <unsupported/Eigen/MatrixFunctions>
#include "channels.hpp"

namespace qdiv {

struct Measurement {
    std::vector<Mat> effects;
    bool projective = false;
    bool rank_one = false;
};

inline Measurement make_measurement(std::vector<Mat> effects, double tol = 1e-9) {
    require(!effects.empty(), "make_measurement: no effects");
    int d = static_cast<int>(effects[0].rows());
    Mat sum = Mat::Zero(d, d);
    for (const auto& M : effects) sum += M;
    require(inf_norm(sum - Mat::Identity(d, d)) <= tol,
            "make_measurement: effects must sum to identity");
    Measurement m;
    m.effects = std::move(effects);
    m.projective = true;
    for (const auto& M : m.effects)
        if (inf_norm(M * M - M) > 1e-8) m.projective = false;
    m.rank_one = m.projective;
    if (m.projective)
        for (const auto& M : m.effects)
            if (std::lround(M.trace().real()) != 1) m.rank_one = false;
    return m;
}

inline Measurement basis_measurement(const Mat& U) {
    std::vector<Mat> eff;
    for (int i = 0; i < U.cols(); ++i) eff.push_back(U.col(i) * U.col(i).adjoint());
    return make_measurement(std::move(eff));
}

inline RVec apply_measurement(const Measurement& m, const PsdOperator& rho) {
    require(m.effects[0].rows() == rho.dim(), "apply_measurement: dimension mismatch");
    RVec p(m.effects.size());
    for (size_t i = 0; i < m.effects.size(); ++i)
        p(static_cast<int>(i)) = std::max(0.0, (m.effects[i] * rho.matrix()).trace().real());
    return p;
}

// eigen-split every effect into rank-1 pieces (never decreases any S_f)
inline Measurement refine_rank_one(const Measurement& m) {
    std::vector<Mat> eff;
    for (const auto& M : m.effects) {
        Eigen::SelfAdjointEigenSolver<Mat> es(M);
        for (int i = 0; i < es.eigenvalues().size(); ++i)
            if (es.eigenvalues()(i) > 1e-12)
                eff.push_back(es.eigenvalues()(i) * es.eigenvectors().col(i) *
                              es.eigenvectors().col(i).adjoint());
    }
    return make_measurement(std::move(eff));
}

inline ExtendedReal classical_f_div(const DivergenceFunction& f, const RVec& p, const RVec& q) {
    require(p.size() == q.size(), "classical_f_div: length mismatch");
    ExtendedReal val(0.0);
    for (int i = 0; i < p.size(); ++i) {
        double pi = (std::abs(p(i)) < 1e-14) ? 0.0 : p(i);
        double qi = (std::abs(q(i)) < 1e-14) ? 0.0 : q(i);
        val += scalar_perspective(f, pi, qi);
    }
    return val;
}

struct OptResult {
    double value = 0.0;  // +inf allowed
    Mat argument;        // optimizing basis (columns) or omega
    int iterations = 0;
    double stationarity = 0.0;
    int restarts_used = 0;
};

namespace detail {

inline double basis_objective(const DivergenceFunction& f, const Mat& U, const Mat& rho,
                              const Mat& sigma) {
    ExtendedReal v(0.0);
    for (int i = 0; i < U.cols(); ++i) {
        double p = std::max(0.0, (U.col(i).adjoint() * rho * U.col(i))(0).real());
        double q = std::max(0.0, (U.col(i).adjoint() * sigma * U.col(i))(0).real());
        if (p < 1e-14) p = 0.0;
        if (q < 1e-14) q = 0.0;
        v += scalar_perspective(f, p, q);
    }
    return v.as_double();
}

} // namespace detail

/*
 *  lower bound on S_f^pr via multi-start stochastic geodesic ascent over U(d);
 *  non-convergence shows up in the stationarity field, never as a throw
 */
inline OptResult measured_projective_opt(const DivergenceFunction& f, const PsdOperator& rho,
                                         const PsdOperator& sigma, int restarts = 8,
                                         int max_iter = 500, uint64_t seed = 1) {
    int d = rho.dim();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    OptResult best;
    best.value = -std::numeric_limits<double>::infinity();
    for (int r = 0; r < restarts; ++r) {
        Mat U = (r == 0) ? Mat(Mat::Identity(d, d)) : haar_unitary(d, rng);
        double cur = detail::basis_objective(f, U, rho.matrix(), sigma.matrix());
        double step = 0.3;
        int iters = 0, stale = 0;
        while (iters < max_iter && step > 1e-10 && std::isfinite(cur)) {
            ++iters;
            Mat A(d, d);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) A(i, j) = cxd(g(rng), g(rng));
            Mat skew = 0.5 * (A - A.adjoint());
            A = skew;
            A /= std::max(1e-12, inf_norm(A));
            Mat Unew = U * (step * A).exp();
            double v = detail::basis_objective(f, Unew, rho.matrix(), sigma.matrix());
            if (v > cur + 1e-15) {
                cur = v;
                U = Unew;
                stale = 0;
            } else if (++stale >= 16) {
                step *= 0.5;
                stale = 0;
            }
        }
        if (cur > best.value) {
            best.value = cur;
            best.argument = U;
            best.iterations = iters;
            best.stationarity = step;
            best.restarts_used = r + 1;
        }
        if (!std::isfinite(best.value) && best.value > 0) break;  // hit +inf, done
    }
    return best;
}

// exhaustive rank-1 basis grid on the Bloch sphere; dim 2 only
inline OptResult bloch_grid_opt(const DivergenceFunction& f, const PsdOperator& rho,
                                const PsdOperator& sigma, int n_theta = 360, int n_phi = 720) {
    require(rho.dim() == 2, "bloch_grid_opt: qubits only");
    OptResult best;
    best.value = -std::numeric_limits<double>::infinity();
    for (int it = 0; it <= n_theta; ++it) {
        double th = M_PI * it / n_theta;
        for (int ip = 0; ip < n_phi; ++ip) {
            double ph = 2.0 * M_PI * ip / n_phi;
            Mat U(2, 2);
            U(0, 0) = std::cos(th / 2.0);
            U(1, 0) = std::polar(std::sin(th / 2.0), ph);
            U(0, 1) = -std::polar(std::sin(th / 2.0), -ph);
            U(1, 1) = std::cos(th / 2.0);
            double v = detail::basis_objective(f, U, rho.matrix(), sigma.matrix());
            if (v > best.value) {
                best.value = v;
                best.argument = U;
            }
        }
    }
    return best;
}

namespace detail {

// gradient of c * Tr(A exp(p H)) at H, exact divided differences
inline Mat exp_trace_gradient(const Mat& A, const Mat& H, double p, double c) {
    Eigen::SelfAdjointEigenSolver<Mat> es(H);
    const RVec& lam = es.eigenvalues();
    Mat At = es.eigenvectors().adjoint() * A * es.eigenvectors();
    int d = static_cast<int>(lam.size());
    Mat G(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            double li = lam(i), lj = lam(j);
            double phi = (std::abs(li - lj) < 1e-9)
                             ? p * std::exp(p * 0.5 * (li + lj))
                             : (std::exp(p * li) - std::exp(p * lj)) / (li - lj);
            G(i, j) = At(i, j) * phi;
        }
    return c * (es.eigenvectors() * G * es.eigenvectors().adjoint());
}

} // namespace detail

/*
 *  S_{f_alpha}^pr by the two-branch concave variational formula over
 *  omega = exp(H) > 0; stationarity is global by concavity in omega
 */
inline OptResult variational_measured_renyi(double alpha, const PsdOperator& rho,
                                            const PsdOperator& sigma, int max_iter = 500) {
    require(alpha > 0.0 && alpha != 1.0, "variational_measured_renyi: alpha > 0, != 1");
    int d = rho.dim();
    double s = sign_alpha(alpha);
    // objective F(H) = c1 Tr rho exp(p1 H) + c2 Tr sigma exp(p2 H)
    double c1, p1, c2, p2;
    if (alpha < 0.5) {
        c1 = s * alpha;
        p1 = 1.0;
        c2 = s * (1.0 - alpha);
        p2 = alpha / (alpha - 1.0);
    } else {
        c1 = s * alpha;
        p1 = (alpha - 1.0) / alpha;
        c2 = s * (1.0 - alpha);
        p2 = 1.0;
    }
    auto value = [&](const Mat& H) {
        Eigen::SelfAdjointEigenSolver<Mat> es(H);
        Mat e1 = Mat::Zero(d, d), e2 = Mat::Zero(d, d);
        for (int i = 0; i < d; ++i) {
            Mat P = es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
            e1 += std::exp(p1 * es.eigenvalues()(i)) * P;
            e2 += std::exp(p2 * es.eigenvalues()(i)) * P;
        }
        return c1 * (rho.matrix() * e1).trace().real() + c2 * (sigma.matrix() * e2).trace().real();
    };
    Mat H = Mat::Zero(d, d);
    double cur = value(H);
    OptResult res;
    double gnorm = 0.0;
    int it = 0;
    for (; it < max_iter; ++it) {
        Mat G = detail::exp_trace_gradient(rho.matrix(), H, p1, c1) +
                detail::exp_trace_gradient(sigma.matrix(), H, p2, c2);
        gnorm = hs_norm(G);
        if (gnorm < 1e-9) break;
        double t = 1.0;
        bool moved = false;
        while (t > 1e-14) {
            Mat Hn = H + t * G;
            double vn = value(Hn);
            if (vn > cur + 1e-6 * t * gnorm * gnorm) {
                H = Hn;
                cur = vn;
                moved = true;
                break;
            }
            t *= 0.5;
        }
        if (!moved) break;
    }
    res.value = cur;
    res.argument = H;
    res.iterations = it;
    res.stationarity = gnorm;
    return res;
}

// D_alpha form of the variational value, for density inputs
inline double measured_renyi_alpha(double alpha, const PsdOperator& rho, const PsdOperator& sigma,
                                   int max_iter = 500) {
    OptResult r = variational_measured_renyi(alpha, rho, sigma, max_iter);
    double q = sign_alpha(alpha) * r.value;
    if (q <= 0.0) return std::numeric_limits<double>::infinity();
    return (std::log(q) - std::log(rho.trace())) / (alpha - 1.0);
}

// n-copy pinched eigenbasis measurement, (1/n) D_alpha of the outcome pair
inline double pinched_measured_renyi(double alpha, const PsdOperator& rho, const PsdOperator& sigma,
                                     int n) {
    require(n >= 1 && n <= 3, "pinched_measured_renyi: n in 1..3");
    Mat R = rho.matrix(), S = sigma.matrix();
    Mat Rn = R, Sn = S;
    for (int k = 1; k < n; ++k) {
        Rn = kron(Rn, R);
        Sn = kron(Sn, S);
    }
    PsdOperator rn(Rn), sn(Sn);
    // pinch rho^(x)n by the spectral projections of sigma^(x)n, then take the
    // common eigenbasis: diagonalize the compression of rho in each eigenspace
    const auto& sd = sn.spectral();
    std::vector<double> p, q;
    for (size_t k = 0; k < sd.eigenvalues.size(); ++k) {
        Mat P = sd.projectors[k];
        Eigen::SelfAdjointEigenSolver<Mat> es(P * Rn * P);
        for (int i = 0; i < es.eigenvalues().size(); ++i) {
            Mat v = es.eigenvectors().col(i);
            double inP = (v.adjoint() * P * v)(0).real();
            if (inP < 0.5) continue;  // eigenvector outside this eigenspace
            p.push_back(std::max(0.0, es.eigenvalues()(i)));
            q.push_back(std::max(0.0, (v.adjoint() * Sn * v)(0).real()));
        }
    }
    RVec pv(p.size()), qv(q.size());
    for (size_t i = 0; i < p.size(); ++i) pv(static_cast<int>(i)) = p[i];
    for (size_t i = 0; i < q.size(); ++i) qv(static_cast<int>(i)) = q[i];
    if (alpha == 1.0) {
        ExtendedReal v = classical_f_div(make_eta(), pv, qv);
        return v.as_double() / (n * rho.trace());
    }
    ExtendedReal Sf = classical_f_div(make_power(alpha), pv, qv);
    if (Sf.is_inf()) return std::numeric_limits<double>::infinity();
    double qq = sign_alpha(alpha) * Sf.value();
    if (qq <= 0.0) return std::numeric_limits<double>::infinity();
    return (std::log(qq) - std::log(pv.sum())) / ((alpha - 1.0) * n);
}

struct PinskerResult {
    double lhs = 0.0, rhs = 0.0;
    bool pass = false;
};

// f''(1)/2 ||rho - sigma||_1^2 <= S_f of the (rho - sigma)-eigenbasis dephasing;
// f is normalized to f - f(1) internally, which leaves f''(1) unchanged
inline PinskerResult pinsker_certificate(const DivergenceFunction& f, const PsdOperator& rho,
                                         const PsdOperator& sigma) {
    Eigen::SelfAdjointEigenSolver<Mat> es(rho.matrix() - sigma.matrix());
    double t1 = es.eigenvalues().cwiseAbs().sum();
    RVec p(rho.dim()), q(rho.dim());
    for (int i = 0; i < rho.dim(); ++i) {
        Mat v = es.eigenvectors().col(i);
        p(i) = std::max(0.0, (v.adjoint() * rho.matrix() * v)(0).real());
        q(i) = std::max(0.0, (v.adjoint() * sigma.matrix() * v)(0).real());
    }
    PinskerResult r;
    r.lhs = 0.5 * f.d2_at_1 * t1 * t1;
    r.rhs = classical_f_div(f, p, q).as_double() - f(1.0) * q.sum();
    r.pass = r.lhs <= r.rhs + 1e-10;
    return r;
}

struct RenyiChainReport {
    double d_standard = 0.0;     // D_alpha
    double d_sandwiched = 0.0;   // D*_alpha
    double d_measured = 0.0;     // variational S^pr value in D form
    std::vector<double> d_pinched;  // n = 1..3 ladder
};

} // namespace qdiv

#endif // QDIV_MEASURED_HPP
