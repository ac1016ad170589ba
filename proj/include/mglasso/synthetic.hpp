#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "mglasso/rng.hpp"
#include "mglasso/types.hpp"

namespace mglasso {

enum class GraphModel { SBM, ER, ScaleFree };

inline GraphModel graph_model_from_string(const std::string& s) {
    if (s == "sbm") return GraphModel::SBM;
    if (s == "er") return GraphModel::ER;
    if (s == "sf") return GraphModel::ScaleFree;
    throw ConfigError("unknown model: " + s + " (expected 'sbm', 'er' or 'sf')");
}

struct GroundTruth {
    Graph adjacency;
    Matrix precision;
    Partition labels;          // planted clusters; singleton-free trivial partition for ER/SF
    double rho = 0.0;          // target within-block correlation (SBM only)
    double diagonal_shift = 0.0;  // loading applied when the masked precision was not PD
};

struct SimConfig {
    int p = 40;
    int n = 80;
    GraphModel model = GraphModel::SBM;
    // SBM
    int k = 5;
    std::vector<double> pi;  // cluster proportions, must sum to 1
    double alpha_in = 0.75;
    double alpha_out = 0.01;
    double rho = 0.3;
    // ER
    double alpha = 0.1;
    // Scale-free
    int num_edges = 40;
    std::uint64_t seed = 0;

    void validate() const {
        if (p < 2) throw ConfigError("p must be >= 2");
        if (n < 2) throw ConfigError("n must be >= 2");
        switch (model) {
            case GraphModel::SBM: {
                if (k < 1) throw ConfigError("k must be >= 1");
                if (pi.empty()) throw ConfigError("pi required for SBM");
                if (static_cast<int>(pi.size()) != k) throw ConfigError("pi must have k entries");
                const double total = std::accumulate(pi.begin(), pi.end(), 0.0);
                if (std::abs(total - 1.0) > 1e-12) throw ConfigError("pi must sum to 1");
                for (double v : pi)
                    if (v < 0 || v > 1) throw ConfigError("pi entries must lie in [0,1]");
                if (alpha_in < 0 || alpha_in > 1 || alpha_out < 0 || alpha_out > 1)
                    throw ConfigError("alpha_in and alpha_out must lie in [0,1]");
                break;
            }
            case GraphModel::ER:
                if (alpha < 0 || alpha > 1) throw ConfigError("alpha must lie in [0,1]");
                break;
            case GraphModel::ScaleFree:
                if (num_edges < p - 1) throw ConfigError("num_edges must be at least p-1");
                if (num_edges > p * (p - 1) / 2) throw ConfigError("num_edges exceeds the complete graph");
                break;
        }
    }

    static std::vector<double> uniform_pi(int k) {
        return std::vector<double>(static_cast<std::size_t>(k), 1.0 / static_cast<double>(k));
    }
};

namespace detail {

// Edge values drawn uniform on +-[0.2, 0.6], diagonal = row l1 norm + 0.1, so
// the result is strictly diagonally dominant and hence positive definite.
inline Matrix dominant_precision(const BoolMatrix& adjacency, rng::Engine& eng) {
    const int p = static_cast<int>(adjacency.rows());
    Matrix omega = Matrix::Zero(p, p);
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j)
            if (adjacency(i, j)) {
                const double magnitude = 0.2 + 0.4 * rng::uniform01(eng);
                const double sign = rng::uniform01(eng) < 0.5 ? -1.0 : 1.0;
                omega(i, j) = omega(j, i) = sign * magnitude;
            }
    for (int i = 0; i < p; ++i) omega(i, i) = omega.row(i).cwiseAbs().sum() + 0.1;
    return omega;
}

inline double min_eigenvalue(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

// Diagonal-load to positive definiteness when needed; returns the shift.
inline double ensure_positive_definite(Matrix& omega) {
    const double min_eig = min_eigenvalue(omega);
    if (min_eig > 1e-10) return 0.0;
    const double shift = std::abs(min_eig) + 0.01;
    omega.diagonal().array() += shift;
    return shift;
}

}  // namespace detail

// Latent blocks Z ~ multinomial(pi), edges Bernoulli(alpha_{Z_i Z_j}), and the
// within-block precision entries
//   omega_ii = (1 + rho (p_k - 2)) / (1 + rho (p_k - 2) - rho^2 (p_k - 1))
//   omega_ij = -rho / (1 + rho (p_k - 2) - rho^2 (p_k - 1))
// which pin the within-block correlation to rho when a block is complete.
inline GroundTruth sbm_ground_truth(const SimConfig& cfg, rng::Engine& eng) {
    cfg.validate();
    if (cfg.model != GraphModel::SBM) throw ConfigError("sbm_ground_truth requires model = SBM");
    const int p = cfg.p;

    std::vector<int> z(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) {
        const double u = rng::uniform01(eng);
        double cumulative = 0.0;
        int chosen = cfg.k - 1;
        for (int c = 0; c < cfg.k; ++c) {
            cumulative += cfg.pi[static_cast<std::size_t>(c)];
            if (u < cumulative) {
                chosen = c;
                break;
            }
        }
        z[static_cast<std::size_t>(i)] = chosen;
    }

    std::vector<int> block_size(static_cast<std::size_t>(cfg.k), 0);
    for (int i = 0; i < p; ++i) block_size[static_cast<std::size_t>(z[static_cast<std::size_t>(i)])] += 1;
    for (int c = 0; c < cfg.k; ++c) {
        const int pk = block_size[static_cast<std::size_t>(c)];
        if (pk == 0) continue;
        const double denom = 1.0 + cfg.rho * (pk - 2) - cfg.rho * cfg.rho * (pk - 1);
        if (denom <= 0)
            throw ConfigError("rho = " + std::to_string(cfg.rho) + " is inadmissible for block size " +
                              std::to_string(pk));
    }

    GroundTruth truth;
    truth.rho = cfg.rho;
    truth.adjacency = Graph::empty(p);
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j) {
            const double prob =
                z[static_cast<std::size_t>(i)] == z[static_cast<std::size_t>(j)] ? cfg.alpha_in : cfg.alpha_out;
            if (rng::uniform01(eng) < prob) truth.adjacency.adjacency(i, j) = truth.adjacency.adjacency(j, i) = true;
        }

    truth.precision = Matrix::Zero(p, p);
    for (int i = 0; i < p; ++i) {
        const int pk = block_size[static_cast<std::size_t>(z[static_cast<std::size_t>(i)])];
        const double denom = 1.0 + cfg.rho * (pk - 2) - cfg.rho * cfg.rho * (pk - 1);
        truth.precision(i, i) = (1.0 + cfg.rho * (pk - 2)) / denom;
        for (int j = 0; j < p; ++j) {
            if (j == i || z[static_cast<std::size_t>(i)] != z[static_cast<std::size_t>(j)]) continue;
            if (truth.adjacency.adjacency(i, j)) truth.precision(i, j) = -cfg.rho / denom;
        }
    }
    truth.diagonal_shift = detail::ensure_positive_definite(truth.precision);
    truth.labels = Partition::from_labels(z);
    return truth;
}

// Erdos-Renyi support with density alpha; values via the diagonally dominant scheme.
inline GroundTruth erdos_ground_truth(const SimConfig& cfg, rng::Engine& eng) {
    cfg.validate();
    if (cfg.model != GraphModel::ER) throw ConfigError("erdos_ground_truth requires model = ER");
    const int p = cfg.p;
    GroundTruth truth;
    truth.adjacency = Graph::empty(p);
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j)
            if (rng::uniform01(eng) < cfg.alpha) truth.adjacency.adjacency(i, j) = truth.adjacency.adjacency(j, i) = true;
    truth.precision = detail::dominant_precision(truth.adjacency.adjacency, eng);
    truth.diagonal_shift = detail::ensure_positive_definite(truth.precision);
    truth.labels = Partition::singletons(p);
    return truth;
}

// Preferential attachment from a 2-node chain, one edge per new node, then
// extra preferential edges (uniform first endpoint, degree-weighted second)
// until the edge budget is met.
inline GroundTruth scale_free_ground_truth(const SimConfig& cfg, rng::Engine& eng) {
    cfg.validate();
    if (cfg.model != GraphModel::ScaleFree) throw ConfigError("scale_free_ground_truth requires model = SF");
    const int p = cfg.p;
    GroundTruth truth;
    truth.adjacency = Graph::empty(p);
    std::vector<int> degree(static_cast<std::size_t>(p), 0);
    auto add_edge = [&](int a, int b) {
        truth.adjacency.adjacency(a, b) = truth.adjacency.adjacency(b, a) = true;
        degree[static_cast<std::size_t>(a)] += 1;
        degree[static_cast<std::size_t>(b)] += 1;
    };
    add_edge(0, 1);
    for (int node = 2; node < p; ++node) {
        double total = 0.0;
        for (int t = 0; t < node; ++t) total += degree[static_cast<std::size_t>(t)];
        double u = rng::uniform01(eng) * total;
        int target = node - 1;
        for (int t = 0; t < node; ++t) {
            u -= degree[static_cast<std::size_t>(t)];
            if (u < 0) {
                target = t;
                break;
            }
        }
        add_edge(node, target);
    }
    int edges = p - 1;
    while (edges < cfg.num_edges) {
        const int a = static_cast<int>(rng::uniform_below(eng, static_cast<std::uint64_t>(p)));
        double total = 0.0;
        for (int t = 0; t < p; ++t)
            if (t != a && !truth.adjacency.adjacency(a, t)) total += degree[static_cast<std::size_t>(t)];
        if (total == 0.0) continue;
        double u = rng::uniform01(eng) * total;
        int target = -1;
        for (int t = 0; t < p; ++t) {
            if (t == a || truth.adjacency.adjacency(a, t)) continue;
            u -= degree[static_cast<std::size_t>(t)];
            if (u < 0) {
                target = t;
                break;
            }
        }
        if (target < 0) continue;
        add_edge(a, target);
        ++edges;
    }
    truth.precision = detail::dominant_precision(truth.adjacency.adjacency, eng);
    truth.diagonal_shift = detail::ensure_positive_definite(truth.precision);
    truth.labels = Partition::singletons(p);
    return truth;
}

inline GroundTruth make_ground_truth(const SimConfig& cfg, rng::Engine& eng) {
    switch (cfg.model) {
        case GraphModel::SBM: return sbm_ground_truth(cfg, eng);
        case GraphModel::ER: return erdos_ground_truth(cfg, eng);
        case GraphModel::ScaleFree: return scale_free_ground_truth(cfg, eng);
    }
    throw ConfigError("unknown graph model");
}

// n i.i.d. rows from N(0, Omega^{-1}) via the Cholesky factor of Omega:
// with Omega = L L^T, solving L^T x = z gives cov(x) = Omega^{-1}.
inline DataMatrix sample_gaussian(const GroundTruth& truth, int n, rng::Engine& eng) {
    const int p = static_cast<int>(truth.precision.rows());
    Eigen::LLT<Matrix> llt(truth.precision);
    if (llt.info() != Eigen::Success)
        throw NumericalError("precision matrix is not positive definite (min eigenvalue " +
                             std::to_string(detail::min_eigenvalue(truth.precision)) + ")");
    DataMatrix out;
    out.values.resize(n, p);
    rng::NormalSampler normal;
    Vector z(p);
    for (int row = 0; row < n; ++row) {
        for (int j = 0; j < p; ++j) z(j) = normal(eng);
        out.values.row(row) = llt.matrixU().solve(z).transpose();
    }
    return out;
}

}  // namespace mglasso
