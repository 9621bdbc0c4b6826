#ifndef QDIV_CORE_HPP
#define QDIV_CORE_HPP

/*
 *  common aliases, tolerance configuration and error type used by all
 *  qdiv headers
 */

#include <complex>
#include <stdexcept>
#include <string>
#include <Eigen/Dense>

namespace qdiv {

using cxd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

struct Config {
    double hermiticity_tol = 1e-9;
    double psd_tol = 1e-10;
    double clustering_gap = 1e-8;
    double verdict_tol = 1e-9;
};

inline Config& global_config() {
    static Config cfg;
    return cfg;
}

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw Error(msg);
}

inline double inf_norm(const Mat& A) {
    return A.cwiseAbs().maxCoeff();
}

inline double hs_norm(const Mat& A) {
    return A.norm();
}

inline double trace_norm(const Mat& A) {
    Eigen::JacobiSVD<Mat> svd(A);
    return svd.singularValues().sum();
}

inline Mat dagger(const Mat& A) { return A.adjoint(); }

// column-stacking vectorization, fixed convention for all superoperators
inline Vec vec(const Mat& X) {
    Vec v(X.size());
    int d = static_cast<int>(X.rows());
    for (int j = 0; j < X.cols(); ++j)
        for (int i = 0; i < d; ++i) v(j * d + i) = X(i, j);
    return v;
}

inline Mat unvec(const Vec& v, int rows) {
    int cols = static_cast<int>(v.size()) / rows;
    Mat X(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) X(i, j) = v(j * rows + i);
    return X;
}

inline Mat kron(const Mat& A, const Mat& B) {
    Mat K(A.rows() * B.rows(), A.cols() * B.cols());
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j)
            K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return K;
}

} // namespace qdiv

#endif // QDIV_CORE_HPP
