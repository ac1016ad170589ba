#pragma once

#include <Eigen/QR>
#include <cmath>
#include <numeric>
#include <vector>

#include "mglasso/mb.hpp"
#include "mglasso/model.hpp"
#include "mglasso/solver.hpp"

namespace mglasso {

struct PathConfig {
    double lambda2_start = 0.0;  // <= 0 means: use lambda2_start_heuristic(X)
    double kappa = 1.3;          // geometric step, > 1
    double eps_fuse = 1e-4;      // fusion threshold on aligned-difference norms
    int max_levels = 50;
    int min_clusters = 1;  // stop once the partition has at most this many clusters

    void validate() const {
        if (kappa <= 1) throw ConfigError("kappa must be > 1");
        if (eps_fuse < 0) throw ConfigError("eps_fuse must be nonnegative");
        if (max_levels < 1) throw ConfigError("max_levels must be >= 1");
        if (min_clusters < 1) throw ConfigError("min_clusters must be >= 1");
    }
};

// Scale heuristic for the start of the lambda2 sweep.
inline double lambda2_start_heuristic(const DataMatrix& X) { return 1e-3 * lambda1_max(X); }

// Row i = min-norm least-squares solution of X^i ~ X^{\i}.
inline RegressionMatrix init_beta(const DataMatrix& X) {
    X.validate();
    const int p = static_cast<int>(X.p());
    RegressionMatrix beta = RegressionMatrix::zero(p);
    Matrix design(X.n(), p - 1);
    for (int i = 0; i < p; ++i) {
        for (int slot = 0; slot < p - 1; ++slot) design.col(slot) = X.values.col(RegressionMatrix::slot_to_var(i, slot));
        Eigen::CompleteOrthogonalDecomposition<Matrix> cod(design);
        beta.coeffs.row(i) = cod.solve(X.values.col(i)).transpose();
    }
    return beta;
}

namespace detail {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int a) {
        while (parent[static_cast<std::size_t>(a)] != a) {
            parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
            a = parent[static_cast<std::size_t>(a)];
        }
        return a;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
};

}  // namespace detail

// Merge clusters by transitive closure of {||beta^i - tau_ij(beta^j)||_2 < eps_fuse},
// coarsening `current` (never splitting).
inline Partition detect_fusions(const RegressionMatrix& beta, const Partition& current, double eps_fuse) {
    beta.validate();
    if (current.size() != beta.p) throw DataError("detect_fusions: partition size mismatch");
    const int p = beta.p;
    detail::UnionFind uf(p);
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j)
            if (current.labels[static_cast<std::size_t>(i)] == current.labels[static_cast<std::size_t>(j)]) uf.unite(i, j);
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j)
            if (aligned_difference(beta, i, j).norm() < eps_fuse) uf.unite(i, j);
    std::vector<int> roots(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) roots[static_cast<std::size_t>(i)] = uf.find(i);
    return Partition::from_labels(roots);
}

// Cluster-level conditional independence graph: meta-edge between clusters a != b
// iff some variable-level edge crosses the pair; meta-weight = mean |beta| over
// the crossing ordered pairs that exceed tol.
inline Graph cluster_level_graph(const RegressionMatrix& beta, const Partition& partition, EdgeRule rule = EdgeRule::Or,
                                 double tol = 1e-8) {
    beta.validate();
    if (partition.size() != beta.p) throw DataError("cluster_level_graph: partition size mismatch");
    const Graph var_graph = graph_from_beta(beta, rule, tol);
    const int k = partition.num_clusters;
    Graph meta = Graph::empty(k);
    meta.weights = Matrix::Zero(k, k);
    Matrix sums = Matrix::Zero(k, k);
    Eigen::MatrixXi counts = Eigen::MatrixXi::Zero(k, k);
    for (int i = 0; i < beta.p; ++i) {
        for (int j = 0; j < beta.p; ++j) {
            if (i == j) continue;
            const int a = partition.labels[static_cast<std::size_t>(i)];
            const int b = partition.labels[static_cast<std::size_t>(j)];
            if (a == b) continue;
            if (var_graph.adjacency(i, j)) meta.adjacency(a, b) = meta.adjacency(b, a) = true;
            const double mag = std::abs(beta.coeff(i, j));
            if (mag > tol) {
                sums(a, b) += mag;
                counts(a, b) += 1;
            }
        }
    }
    for (int a = 0; a < k; ++a) {
        for (int b = a + 1; b < k; ++b) {
            const double sum = sums(a, b) + sums(b, a);
            const int count = counts(a, b) + counts(b, a);
            if (count > 0) (*meta.weights)(a, b) = (*meta.weights)(b, a) = sum / count;
        }
    }
    return meta;
}

// Algorithm: sweep lambda2 geometrically with warm starts, record fusions into
// a nested hierarchy.
inline Hierarchy mglasso_path(const DataMatrix& X, double lambda1, const PathConfig& cfg = {},
                              const SolverConfig& solver_cfg = {}) {
    cfg.validate();
    solver_cfg.validate();
    if (lambda1 < 0) throw ConfigError("mglasso_path: lambda1 must be nonnegative");

    detail::Workspace ws(X, std::nullopt, true);
    const int p = ws.p;
    double lambda2 = cfg.lambda2_start > 0 ? cfg.lambda2_start : lambda2_start_heuristic(X);
    Partition partition = Partition::singletons(p);
    Vector beta = vectorize(init_beta(X));

    Hierarchy hierarchy;
    for (int level = 0; level < cfg.max_levels; ++level) {
        Hyperparameters hp;
        hp.lambda1 = lambda1;
        hp.lambda2 = lambda2;
        SolveDiagnostics diag;
        try {
            auto [solution, level_diag] = detail::conesta(ws, hp, solver_cfg, beta);
            beta = solution;
            diag = std::move(level_diag);
        } catch (const NumericalError&) {
            // keep the warm start, record the level as not converged, move on
            diag.objective_trace.push_back(ws.objective(beta, lambda1, lambda2));
            diag.final_duality_gap = std::numeric_limits<double>::infinity();
            diag.converged = false;
        }

        const RegressionMatrix beta_mat = devectorize(beta, p);
        const Partition previous = partition;
        partition = detect_fusions(beta_mat, previous, cfg.eps_fuse);

        // merge events in terms of the previous level's cluster ids
        if (partition.num_clusters < previous.num_clusters) {
            std::vector<int> image(static_cast<std::size_t>(previous.num_clusters), -1);
            std::vector<int> keeper(static_cast<std::size_t>(partition.num_clusters), -1);
            for (int i = 0; i < p; ++i) {
                const int from = previous.labels[static_cast<std::size_t>(i)];
                const int to = partition.labels[static_cast<std::size_t>(i)];
                image[static_cast<std::size_t>(from)] = to;
            }
            for (int from = 0; from < previous.num_clusters; ++from) {
                const int to = image[static_cast<std::size_t>(from)];
                if (keeper[static_cast<std::size_t>(to)] == -1)
                    keeper[static_cast<std::size_t>(to)] = from;
                else
                    hierarchy.merges.push_back({lambda2, keeper[static_cast<std::size_t>(to)], from});
            }
        }

        HierarchyLevel rec;
        rec.lambda2 = lambda2;
        rec.partition = partition;
        rec.beta = beta_mat;
        rec.converged = diag.converged;
        rec.duality_gap = diag.final_duality_gap;
        rec.start_objective = diag.objective_trace.front();
        rec.inner_iterations = diag.iterations;
        hierarchy.levels.push_back(std::move(rec));

        if (partition.num_clusters <= cfg.min_clusters) break;
        lambda2 *= cfg.kappa;
    }
    return hierarchy;
}

}  // namespace mglasso
