#ifndef QDIV_CHANNELS_HPP
#define QDIV_CHANNELS_HPP

/*
 *  quantum channels and positive maps
 *
 *  QuantumChannel           Kraus form, optional transposition pre-step for
 *                           positive-not-CP test maps
 *  LinearMap                closure-backed map (Petz pair objects)
 *  ClassicalQuantumChannel  images of classical basis indicators
 *  petz_pair                Phi_sigma and the Petz recovery map Phi_sigma^*
 *  minimal_reverse_test     classical pair (a,b) and channel with Phi(a)=rho,
 *                           Phi(b)=sigma and S_f(a||b)=S^_f(rho||sigma)
 *  samplers                 Haar unitaries, Stinespring channels, states
 */

#include <numeric>
#include <random>
#include "fdiv.hpp"

namespace qdiv {

struct QuantumChannel {
    int in_dim = 0, out_dim = 0;
    std::vector<Mat> kraus;     // out_dim x in_dim each
    bool pre_transpose = false; // apply X -> X^T before the Kraus sum
    bool trace_preserving = false;
    bool unital = false;

    Mat apply(const Mat& X) const {
        Mat Y = pre_transpose ? Mat(X.transpose()) : X;
        Mat R = Mat::Zero(out_dim, out_dim);
        for (const auto& K : kraus) R += K * Y * K.adjoint();
        return R;
    }
    Mat operator()(const Mat& X) const { return apply(X); }
    PsdOperator apply_state(const PsdOperator& r) const { return PsdOperator(apply(r.matrix())); }

    // adjoint of sum K X^T K^dag is sum K^T X^T (K^T)^dag, again pre-transposed
    QuantumChannel adjoint() const {
        QuantumChannel adj;
        adj.in_dim = out_dim;
        adj.out_dim = in_dim;
        adj.pre_transpose = pre_transpose;
        for (const auto& K : kraus)
            adj.kraus.push_back(pre_transpose ? Mat(K.transpose()) : Mat(K.adjoint()));
        adj.trace_preserving = unital;
        adj.unital = trace_preserving;
        return adj;
    }

    Mat superoperator() const {
        int di = in_dim, dd = out_dim;
        Mat S = Mat::Zero(dd * dd, di * di);
        for (const auto& K : kraus) S += kron(K.conjugate(), K);
        if (pre_transpose) {
            Mat T = Mat::Zero(di * di, di * di);
            for (int i = 0; i < di; ++i)
                for (int j = 0; j < di; ++j) T(i * di + j, j * di + i) = 1.0;
            S = S * T;
        }
        return S;
    }
};

inline void finalize_flags(QuantumChannel& c, double tol = 1e-9) {
    Mat ktk = Mat::Zero(c.in_dim, c.in_dim);
    Mat kkt = Mat::Zero(c.out_dim, c.out_dim);
    for (const auto& K : c.kraus) {
        ktk += K.adjoint() * K;
        kkt += K * K.adjoint();
    }
    c.trace_preserving = inf_norm(ktk - Mat::Identity(c.in_dim, c.in_dim)) <= tol;
    c.unital = inf_norm(kkt - Mat::Identity(c.out_dim, c.out_dim)) <= tol;
}

inline QuantumChannel make_channel(std::vector<Mat> kraus, bool pre_transpose = false) {
    require(!kraus.empty(), "make_channel: empty Kraus list");
    QuantumChannel c;
    c.out_dim = static_cast<int>(kraus[0].rows());
    c.in_dim = static_cast<int>(kraus[0].cols());
    c.kraus = std::move(kraus);
    c.pre_transpose = pre_transpose;
    finalize_flags(c);
    return c;
}

inline QuantumChannel identity_channel(int d) {
    return make_channel({Mat::Identity(d, d)});
}

inline QuantumChannel unitary_channel(const Mat& U) { return make_channel({U}); }

inline QuantumChannel pinching_channel(const std::vector<Mat>& projections) {
    require(!projections.empty(), "pinching_channel: empty projector list");
    int d = static_cast<int>(projections[0].rows());
    Mat sum = Mat::Zero(d, d);
    for (size_t i = 0; i < projections.size(); ++i) {
        require(inf_norm(projections[i] * projections[i] - projections[i]) <= 1e-9,
                "pinching_channel: non-idempotent projector");
        for (size_t j = i + 1; j < projections.size(); ++j)
            require(inf_norm(projections[i] * projections[j]) <= 1e-9,
                    "pinching_channel: projectors not orthogonal");
        sum += projections[i];
    }
    require(inf_norm(sum - Mat::Identity(d, d)) <= 1e-9,
            "pinching_channel: projectors do not sum to identity");
    return make_channel(projections);
}

struct LinearMap {
    int in_dim = 0, out_dim = 0;
    std::function<Mat(const Mat&)> action;
    Mat operator()(const Mat& X) const { return action(X); }

    Mat superoperator() const {
        Mat S(out_dim * out_dim, in_dim * in_dim);
        for (int j = 0; j < in_dim; ++j)
            for (int i = 0; i < in_dim; ++i) {
                Mat E = Mat::Zero(in_dim, in_dim);
                E(i, j) = 1.0;
                S.col(j * in_dim + i) = vec(action(E));
            }
        return S;
    }
};

inline LinearMap channel_as_map(const QuantumChannel& c) {
    return {c.in_dim, c.out_dim, [c](const Mat& X) { return c.apply(X); }};
}

struct PetzPair {
    LinearMap phi_sigma;       // B(supp sigma) -> B(supp Phi(sigma))
    LinearMap phi_sigma_star;  // the recovery map, B(K) -> B(H)
};

inline PetzPair petz_pair(const QuantumChannel& phi, const PsdOperator& sigma,
                          double tol = 1e-9) {
    require(sigma.trace() > 0.0, "petz_pair: sigma must be nonzero");
    PsdOperator phi_sigma_out(phi.apply(sigma.matrix()));
    Mat sh = sigma.sqrt();
    Mat osh = phi_sigma_out.pinv_sqrt();
    QuantumChannel adj = phi.adjoint();
    PetzPair pp;
    pp.phi_sigma = {sigma.dim(), phi.out_dim,
                    [phi, sh, osh](const Mat& X) { return Mat(osh * phi.apply(sh * X * sh) * osh); }};
    pp.phi_sigma_star = {phi.out_dim, sigma.dim(),
                         [adj, sh, osh](const Mat& Y) { return Mat(sh * adj.apply(osh * Y * osh) * sh); }};
    Mat rec = pp.phi_sigma_star(phi_sigma_out.matrix());
    require(inf_norm(rec - sigma.matrix()) <= tol * std::max(1.0, inf_norm(sigma.matrix())),
            "petz_pair: Phi_sigma^*(Phi(sigma)) != sigma");
    return pp;
}

struct ClassicalQuantumChannel {
    int k = 0;
    std::vector<Mat> outputs;

    Mat apply(const RVec& x) const {
        Mat R = Mat::Zero(outputs[0].rows(), outputs[0].cols());
        for (int i = 0; i < k; ++i) R += x(i) * outputs[i];
        return R;
    }
};

struct ReverseTest {
    RVec a, b;
    ClassicalQuantumChannel channel;
};

// sigma^{-1/2} rho sigma^{-1/2} = sum lambda_i P_i; a_i = lambda_i Tr sigma P_i,
// b_i = Tr sigma P_i, channel delta_i -> sigma^{1/2} P_i sigma^{1/2} / Tr sigma P_i
inline ReverseTest minimal_reverse_test(const PsdOperator& rho, const PsdOperator& sigma) {
    require(rho.rank() == rho.dim() && sigma.rank() == sigma.dim(),
            "minimal_reverse_test: inputs must be invertible");
    Mat sih = sigma.pinv_sqrt();
    Mat sh = sigma.sqrt();
    PsdOperator ratio(sih * rho.matrix() * sih);
    const auto& sd = ratio.spectral();
    int k = static_cast<int>(sd.eigenvalues.size());
    ReverseTest rt;
    rt.a.resize(k);
    rt.b.resize(k);
    rt.channel.k = k;
    for (int i = 0; i < k; ++i) {
        double tsp = (sigma.matrix() * sd.projectors[i]).trace().real();
        rt.a(i) = sd.eigenvalues[i] * tsp;
        rt.b(i) = tsp;
        rt.channel.outputs.push_back(sh * sd.projectors[i] * sh / tsp);
    }
    return rt;
}

inline QuantumChannel stochastic_matrix_channel(const Eigen::MatrixXd& T) {
    int k = static_cast<int>(T.rows());
    require(T.cols() == k, "stochastic_matrix_channel: T must be square");
    std::vector<Mat> kraus;
    for (int x = 0; x < k; ++x) {
        double row = 0.0;
        for (int y = 0; y < k; ++y) {
            require(T(x, y) >= 0.0, "stochastic_matrix_channel: negative entry");
            row += T(x, y);
            if (T(x, y) > 0.0) {
                Mat K = Mat::Zero(k, k);
                K(x, y) = std::sqrt(T(x, y));
                kraus.push_back(K);
            }
        }
        require(std::abs(row - 1.0) <= 1e-12, "stochastic_matrix_channel: row sums must be 1");
    }
    return make_channel(std::move(kraus));
}

// connected classes of indices sharing a positive column pair in some row;
// M_Phi = diagonal matrices constant on each class
inline std::vector<int> classical_mult_domain_classes(const Eigen::MatrixXd& T) {
    int k = static_cast<int>(T.rows());
    std::vector<int> parent(k);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int i) {
        return parent[i] == i ? i : parent[i] = find(parent[i]);
    };
    for (int x = 0; x < k; ++x) {
        int first = -1;
        for (int y = 0; y < k; ++y)
            if (T(x, y) > 0.0) {
                if (first < 0)
                    first = y;
                else
                    parent[find(y)] = find(first);
            }
    }
    std::vector<int> label(k);
    for (int i = 0; i < k; ++i) label[i] = find(i);
    return label;
}

// --- seeded samplers ---

inline Mat gaussian_matrix(int rows, int cols, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Mat G(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) G(i, j) = cxd(g(rng), g(rng));
    return G;
}

inline Mat haar_unitary(int d, std::mt19937_64& rng) {
    Mat G = gaussian_matrix(d, d, rng);
    Eigen::HouseholderQR<Mat> qr(G);
    Mat Q = qr.householderQ() * Mat::Identity(d, d);
    Mat R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < d; ++j) {
        cxd r = R(j, j);
        Q.col(j) *= (std::abs(r) > 0.0) ? r / std::abs(r) : cxd(1.0, 0.0);
    }
    return Q;
}

inline QuantumChannel random_channel(int in_dim, int out_dim, int env_dim, uint64_t seed) {
    std::mt19937_64 rng(seed);
    int big = out_dim * env_dim;
    require(big >= in_dim, "random_channel: out*env must be >= in for an isometry");
    Mat U = haar_unitary(big, rng);
    Mat V = U.leftCols(in_dim);  // Stinespring isometry
    std::vector<Mat> kraus;
    for (int e = 0; e < env_dim; ++e) {
        Mat K(out_dim, in_dim);
        for (int o = 0; o < out_dim; ++o) K.row(o) = V.row(o * env_dim + e);
        kraus.push_back(K);
    }
    return make_channel(std::move(kraus));
}

inline PsdOperator random_state(int dim, int rank, uint64_t seed) {
    std::mt19937_64 rng(seed);
    Mat G = gaussian_matrix(dim, rank, rng);
    Mat W = G * G.adjoint();
    return PsdOperator(W / W.trace().real());
}

inline QuantumChannel random_bistochastic(int dim, int num_unitaries, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.1, 1.0);
    std::vector<double> w(num_unitaries);
    double tot = 0.0;
    for (auto& x : w) tot += (x = u(rng));
    std::vector<Mat> kraus;
    for (int i = 0; i < num_unitaries; ++i)
        kraus.push_back(std::sqrt(w[i] / tot) * haar_unitary(dim, rng));
    return make_channel(std::move(kraus));
}

} // namespace qdiv

#endif // QDIV_CHANNELS_HPP
