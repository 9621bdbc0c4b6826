#ifndef QDIV_OPERATORS_HPP
#define QDIV_OPERATORS_HPP

/*
 *  dense Hermitian / PSD operator core
 *
 *  HermitianOperator      validated, stored symmetrized
 *  SpectralDecomposition  distinct clustered eigenvalues + projectors
 *  PsdOperator            PSD-validated with clipping, cached spectral data,
 *                         support projections and functional calculus
 *  Superoperator          d^2 x d^2 matrix in column-stacking convention
 *  relative_modular       L_rho R_{sigma^-1} with joint spectral table Tr Pa Qb
 */

#include <algorithm>
#include <functional>
#include <memory>
#include <vector>
#include "core.hpp"

namespace qdiv {

class HermitianOperator {
  public:
    explicit HermitianOperator(const Mat& A, double tol = global_config().hermiticity_tol) {
        require(A.rows() == A.cols(), "HermitianOperator: matrix not square");
        double scale = std::max(1.0, inf_norm(A));
        require(inf_norm(A - A.adjoint()) <= tol * scale,
                "HermitianOperator: not Hermitian within tolerance");
        m_ = 0.5 * (A + A.adjoint());
    }

    int dim() const { return static_cast<int>(m_.rows()); }
    const Mat& matrix() const { return m_; }
    double trace() const { return m_.trace().real(); }

  private:
    Mat m_;
};

struct SpectralDecomposition {
    std::vector<double> eigenvalues;  // distinct, descending
    std::vector<Mat> projectors;

    Mat reconstruct() const {
        Mat A = Mat::Zero(projectors[0].rows(), projectors[0].cols());
        for (size_t k = 0; k < eigenvalues.size(); ++k) A += eigenvalues[k] * projectors[k];
        return A;
    }
};

// clusters raw eigenvalues whose relative gap is below clustering_gap
inline SpectralDecomposition spectral_decompose(const HermitianOperator& A,
                                                double clustering_gap = global_config().clustering_gap) {
    Eigen::SelfAdjointEigenSolver<Mat> es(A.matrix());
    require(es.info() == Eigen::Success, "spectral_decompose: eigensolver failure");
    RVec ev = es.eigenvalues();
    Mat U = es.eigenvectors();
    int d = A.dim();
    double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    double gap = clustering_gap * scale;

    SpectralDecomposition sd;
    int i = d - 1;  // Eigen sorts ascending; emit descending
    while (i >= 0) {
        int j = i;
        while (j > 0 && ev(i) - ev(j - 1) < gap) --j;
        Mat P = Mat::Zero(d, d);
        double mean = 0.0;
        for (int k = j; k <= i; ++k) {
            P += U.col(k) * U.col(k).adjoint();
            mean += ev(k);
        }
        sd.eigenvalues.push_back(mean / (i - j + 1));
        sd.projectors.push_back(P);
        i = j - 1;
    }
    return sd;
}

class PsdOperator {
  public:
    explicit PsdOperator(const HermitianOperator& A, double psd_tol = global_config().psd_tol)
        : base_(A) {
        auto sd = spectral_decompose(base_);
        double lmax = sd.eigenvalues.empty() ? 0.0 : std::abs(sd.eigenvalues.front());
        double clip = psd_tol * std::max(1.0, lmax);
        for (auto& ev : sd.eigenvalues) {
            require(ev >= -clip, "PsdOperator: negative eigenvalue beyond psd_tol");
            if (ev < clip) ev = 0.0;  // eigensolver dust on either side of zero
        }
        spectral_ = std::make_shared<SpectralDecomposition>(std::move(sd));
    }
    explicit PsdOperator(const Mat& A) : PsdOperator(HermitianOperator(A)) {}

    int dim() const { return base_.dim(); }
    const Mat& matrix() const { return base_.matrix(); }
    double trace() const { return base_.trace(); }
    const SpectralDecomposition& spectral() const { return *spectral_; }

    Mat support() const {
        Mat P = Mat::Zero(dim(), dim());
        for (size_t k = 0; k < spectral_->eigenvalues.size(); ++k)
            if (spectral_->eigenvalues[k] > 0.0) P += spectral_->projectors[k];
        return P;
    }

    int rank() const {
        int r = 0;
        for (size_t k = 0; k < spectral_->eigenvalues.size(); ++k)
            if (spectral_->eigenvalues[k] > 0.0)
                r += static_cast<int>(std::lround(spectral_->projectors[k].trace().real()));
        return r;
    }

    // f applied on the support only; eigenvalue 0 contributes nothing
    Mat func_calculus(const std::function<double(double)>& f) const {
        Mat R = Mat::Zero(dim(), dim());
        for (size_t k = 0; k < spectral_->eigenvalues.size(); ++k) {
            double ev = spectral_->eigenvalues[k];
            if (ev <= 0.0) continue;
            double fv = f(ev);
            require(std::isfinite(fv), "func_calculus: non-finite value on a positive eigenvalue");
            R += fv * spectral_->projectors[k];
        }
        return R;
    }

    Mat pow_support(double t) const {
        return func_calculus([t](double x) { return std::pow(x, t); });
    }
    Mat sqrt() const { return pow_support(0.5); }
    Mat pinv() const { return pow_support(-1.0); }
    Mat pinv_sqrt() const { return pow_support(-0.5); }

  private:
    HermitianOperator base_;
    std::shared_ptr<SpectralDecomposition> spectral_;
};

inline Mat support_projection(const PsdOperator& A) { return A.support(); }

// true if supp A <= supp B within tol
inline bool support_leq(const PsdOperator& A, const PsdOperator& B, double tol = 1e-8) {
    Mat PA = A.support(), PB = B.support();
    return inf_norm(PA - PB * PA) <= tol;
}

struct Superoperator {
    int dim = 0;
    Mat matrix;  // dim^2 x dim^2, column-stacking convention

    static Superoperator left_mult(const Mat& A) {
        int d = static_cast<int>(A.rows());
        return {d, kron(Mat::Identity(d, d), A)};
    }
    static Superoperator right_mult(const Mat& A) {
        int d = static_cast<int>(A.rows());
        return {d, kron(A.transpose(), Mat::Identity(d, d))};
    }

    Mat apply(const Mat& X) const { return unvec(matrix * vec(X), dim); }

    Superoperator compose(const Superoperator& o) const { return {dim, matrix * o.matrix}; }
};

// L_rho R_{sigma^-1} with its full joint spectral bookkeeping
struct RelativeModular {
    std::vector<double> a;        // eigenvalues of rho (descending, incl. 0 cluster)
    std::vector<double> b;        // eigenvalues of sigma
    Eigen::MatrixXd overlap;      // overlap(i,j) = Tr P_{a_i} Q_{b_j}
    std::vector<Mat> P;           // projectors of rho
    std::vector<Mat> Q;           // projectors of sigma
    Superoperator op;             // L_rho R_{sigma^+}

    std::vector<double> spectrum() const {
        std::vector<double> s;
        for (double ai : a)
            for (double bj : b)
                if (bj > 0.0) s.push_back(ai / bj);
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end(),
                            [](double x, double y) { return std::abs(x - y) <= 1e-10 * std::max(1.0, std::abs(x)); }),
                s.end());
        return s;
    }
};

inline RelativeModular relative_modular(const PsdOperator& rho, const PsdOperator& sigma) {
    require(rho.dim() == sigma.dim(), "relative_modular: dimension mismatch");
    RelativeModular rm;
    const auto& sr = rho.spectral();
    const auto& ss = sigma.spectral();
    rm.a = sr.eigenvalues;
    rm.b = ss.eigenvalues;
    rm.P = sr.projectors;
    rm.Q = ss.projectors;
    rm.overlap.resize(rm.a.size(), rm.b.size());
    for (size_t i = 0; i < rm.a.size(); ++i)
        for (size_t j = 0; j < rm.b.size(); ++j)
            rm.overlap(i, j) = (rm.P[i] * rm.Q[j]).trace().real();
    rm.op = Superoperator::left_mult(rho.matrix()).compose(Superoperator::right_mult(sigma.pinv()));
    return rm;
}

} // namespace qdiv

#endif // QDIV_OPERATORS_HPP
