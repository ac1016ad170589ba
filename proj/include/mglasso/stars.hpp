#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

#include "mglasso/model.hpp"
#include "mglasso/preprocess.hpp"
#include "mglasso/rng.hpp"
#include "mglasso/solver.hpp"

namespace mglasso {

struct StarsConfig {
    std::vector<double> lambda1_grid;   // strictly decreasing, positive
    int num_subsamples = 20;            // N
    int subsample_size = 0;             // b; 0 means min(n-1, floor(10 sqrt(n)))
    double instability_threshold = 0.05;
    bool with_replacement = false;      // subsampling is the default
    std::uint64_t seed = 0;
    int threads = 1;
    double edge_tol = 1e-8;
    SolverConfig solver;

    int effective_subsample_size(Eigen::Index n) const {
        if (subsample_size > 0) return subsample_size;
        const auto b = static_cast<int>(std::floor(10.0 * std::sqrt(static_cast<double>(n))));
        return std::min<int>(static_cast<int>(n) - 1, std::max(b, 2));
    }

    void validate(Eigen::Index n) const {
        if (lambda1_grid.empty()) throw ConfigError("lambda1_grid must be nonempty");
        for (std::size_t k = 0; k < lambda1_grid.size(); ++k) {
            if (lambda1_grid[k] <= 0) throw ConfigError("lambda1_grid values must be positive");
            if (k > 0 && lambda1_grid[k] >= lambda1_grid[k - 1])
                throw ConfigError("lambda1_grid must be strictly decreasing");
        }
        if (num_subsamples < 1) throw ConfigError("num_subsamples must be >= 1");
        const int b = effective_subsample_size(n);
        if (b < 2 || (!with_replacement && b >= n)) throw ConfigError("subsample size must satisfy 2 <= b < n");
        if (instability_threshold <= 0 || instability_threshold > 0.5)
            throw ConfigError("instability_threshold must lie in (0, 0.5]");
        if (threads < 1) throw ConfigError("threads must be >= 1");
    }
};

// 30 log-spaced values from lambda1_max down to 0.01 * lambda1_max.
inline std::vector<double> default_lambda1_grid(const DataMatrix& X, int size = 30) {
    const double top = lambda1_max(X);
    std::vector<double> grid(static_cast<std::size_t>(size));
    for (int k = 0; k < size; ++k)
        grid[static_cast<std::size_t>(k)] = top * std::pow(1e-2, static_cast<double>(k) / (size - 1));
    return grid;
}

struct EdgeProbabilities {
    Matrix theta;        // p x p, symmetric, zero diagonal
    int failed = 0;      // replicates skipped because the subsample fit failed
    int used = 0;        // replicates that contributed
};

namespace detail {

inline void parallel_over(int count, int threads, const std::function<void(int)>& body) {
    if (threads <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    const int workers = std::min(threads, count);
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&body, w, workers, count] {
            for (int i = w; i < count; i += workers) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

// One subsample fit: draw rows, re-standardize, solve at (lambda1, lambda2=0),
// extract the adjacency. Returns nullopt if the fit fails (e.g. a constant
// column inside the subsample).
inline std::optional<BoolMatrix> stars_replicate(const DataMatrix& X, double lambda1, const StarsConfig& cfg,
                                                 int replicate) {
    const auto n = static_cast<std::size_t>(X.n());
    const auto b = static_cast<std::size_t>(cfg.effective_subsample_size(X.n()));
    rng::Engine eng = rng::make_stream(cfg.seed, static_cast<std::uint64_t>(replicate));
    const std::vector<std::size_t> rows = cfg.with_replacement ? rng::sample_with_replacement(eng, n, b)
                                                               : rng::sample_without_replacement(eng, n, b);
    DataMatrix sub;
    sub.values.resize(static_cast<Eigen::Index>(b), X.p());
    for (std::size_t r = 0; r < rows.size(); ++r)
        sub.values.row(static_cast<Eigen::Index>(r)) = X.values.row(static_cast<Eigen::Index>(rows[r]));
    try {
        const DataMatrix ready = standardize(sub).data;
        Hyperparameters hp;
        hp.lambda1 = lambda1;
        auto [beta, diag] = conesta_solve(ready, hp, cfg.solver);
        (void)diag;
        return graph_from_beta(beta, EdgeRule::Or, cfg.edge_tol).adjacency;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

}  // namespace detail

// theta_hat = empirical edge appearance probabilities over N subsample fits.
inline EdgeProbabilities edge_probabilities(const DataMatrix& X, double lambda1, const StarsConfig& cfg) {
    X.validate();
    cfg.validate(X.n());
    const int p = static_cast<int>(X.p());
    std::vector<std::optional<BoolMatrix>> results(static_cast<std::size_t>(cfg.num_subsamples));
    detail::parallel_over(cfg.num_subsamples, cfg.threads,
                          [&](int j) { results[static_cast<std::size_t>(j)] = detail::stars_replicate(X, lambda1, cfg, j); });

    EdgeProbabilities out;
    Eigen::MatrixXi counts = Eigen::MatrixXi::Zero(p, p);
    for (const auto& adj : results) {
        if (!adj) {
            ++out.failed;
            continue;
        }
        ++out.used;
        for (int i = 0; i < p; ++i)
            for (int j = i + 1; j < p; ++j)
                if ((*adj)(i, j)) {
                    counts(i, j) += 1;
                    counts(j, i) += 1;
                }
    }
    if (out.used == 0) throw NumericalError("all StARS replicates failed");
    out.theta = counts.cast<double>() / static_cast<double>(out.used);
    return out;
}

// D_hat = sum_{s<t} 2 theta_st (1 - theta_st) / C(p,2); always in [0, 0.5].
inline double instability(const Matrix& theta_hat) {
    const int p = static_cast<int>(theta_hat.rows());
    double total = 0.0;
    for (int s = 0; s < p; ++s)
        for (int t = s + 1; t < p; ++t) {
            const double th = theta_hat(s, t);
            if (th < 0 || th > 1) throw DataError("instability: theta entries must lie in [0,1]");
            total += 2.0 * th * (1.0 - th);
        }
    return total / (0.5 * p * (p - 1));
}

struct StarsResult {
    std::vector<double> grid;
    std::vector<double> instabilities;  // raw D_hat per grid value
    std::vector<double> monotonized;    // running max along decreasing lambda1
    std::vector<int> failed;            // skipped replicates per grid value
    double selected_lambda1 = 0.0;
    std::size_t selected_index = 0;
    bool selected = false;  // false: nothing qualified, largest grid value returned
};

// Selection rule on a decreasing grid: monotonize D_hat by running max, walk
// down the grid until the first value exceeding the threshold and keep the one
// just before it; if the threshold is never exceeded, keep the largest
// (sparsest) grid value.
inline std::pair<std::size_t, bool> select_from_instabilities(const std::vector<double>& monotonized,
                                                              double threshold) {
    std::size_t first_violation = monotonized.size();
    for (std::size_t k = 0; k < monotonized.size(); ++k) {
        if (monotonized[k] > threshold) {
            first_violation = k;
            break;
        }
    }
    if (first_violation == monotonized.size()) return {0, true};
    if (first_violation == 0) return {0, false};
    return {first_violation - 1, true};
}

inline StarsResult select_lambda1(const DataMatrix& X, const StarsConfig& cfg) {
    X.validate();
    cfg.validate(X.n());
    StarsResult res;
    res.grid = cfg.lambda1_grid;
    double running_max = 0.0;
    for (double lambda1 : cfg.lambda1_grid) {
        const EdgeProbabilities probs = edge_probabilities(X, lambda1, cfg);
        const double d_hat = instability(probs.theta);
        res.instabilities.push_back(d_hat);
        running_max = std::max(running_max, d_hat);
        res.monotonized.push_back(running_max);
        res.failed.push_back(probs.failed);
    }
    const auto [index, ok] = select_from_instabilities(res.monotonized, cfg.instability_threshold);
    res.selected_index = index;
    res.selected = ok;
    res.selected_lambda1 = res.grid[index];
    return res;
}

}  // namespace mglasso
