#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "mglasso/mb.hpp"
#include "mglasso/model.hpp"
#include "mglasso/preprocess.hpp"
#include "mglasso/rng.hpp"
#include "mglasso/solver.hpp"
#include "mglasso/synthetic.hpp"

namespace mglasso {

struct ConfusionCounts {
    long tp = 0, fp = 0, tn = 0, fn = 0;
    long total() const { return tp + fp + tn + fn; }
};

// Counts over unordered variable pairs.
inline ConfusionCounts confusion(const Graph& est, const Graph& truth) {
    if (est.size() != truth.size()) throw DataError("confusion: graphs must have the same size");
    ConfusionCounts c;
    for (Eigen::Index i = 0; i < est.size(); ++i)
        for (Eigen::Index j = i + 1; j < est.size(); ++j) {
            const bool e = est.adjacency(i, j);
            const bool t = truth.adjacency(i, j);
            if (e && t) ++c.tp;
            else if (e && !t) ++c.fp;
            else if (!e && t) ++c.fn;
            else ++c.tn;
        }
    return c;
}

// Empty denominators return 1 by convention.
inline double sensitivity(const ConfusionCounts& c) {
    return c.tp + c.fn == 0 ? 1.0 : static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
}

inline double specificity(const ConfusionCounts& c) {
    return c.tn + c.fp == 0 ? 1.0 : static_cast<double>(c.tn) / static_cast<double>(c.tn + c.fp);
}

struct RocCurve {
    std::vector<std::pair<double, double>> points;  // (fpr, tpr), sorted, endpoints included
    double auc = 0.0;
};

namespace detail {

// Trapezoid rule over points sorted by (fpr, tpr).
inline double auc_from_points(std::vector<std::pair<double, double>> points) {
    std::sort(points.begin(), points.end());
    double area = 0.0;
    for (std::size_t k = 1; k < points.size(); ++k)
        area += (points[k].first - points[k - 1].first) * 0.5 * (points[k].second + points[k - 1].second);
    return area;
}

inline std::vector<std::pair<double, double>> augment_endpoints(std::vector<std::pair<double, double>> points) {
    points.emplace_back(0.0, 0.0);
    points.emplace_back(1.0, 1.0);
    std::sort(points.begin(), points.end());
    return points;
}

// tpr at a given fpr by linear interpolation on the curve (max tpr at tied fpr).
inline double interpolate_tpr(const std::vector<std::pair<double, double>>& sorted_points, double fpr) {
    double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;
    for (const auto& [x, y] : sorted_points) {
        if (x <= fpr && (x > x0 || (x == x0 && y > y0))) { x0 = x; y0 = std::max(y0, y); }
    }
    for (auto it = sorted_points.rbegin(); it != sorted_points.rend(); ++it) {
        if (it->first >= fpr && (it->first < x1 || (it->first == x1 && it->second < y1))) {
            x1 = it->first;
            y1 = std::min(y1, it->second);
        }
    }
    if (x1 == x0) return std::max(y0, y1);
    const double t = (fpr - x0) / (x1 - x0);
    return y0 + t * (y1 - y0);
}

}  // namespace detail

inline RocCurve roc_from_graphs(const std::vector<Graph>& estimates, const Graph& truth) {
    if (estimates.empty()) throw ConfigError("roc_from_graphs: need at least one estimate");
    std::vector<std::pair<double, double>> points;
    points.reserve(estimates.size());
    for (const Graph& est : estimates) {
        const ConfusionCounts c = confusion(est, truth);
        points.emplace_back(1.0 - specificity(c), sensitivity(c));
    }
    RocCurve curve;
    curve.points = detail::augment_endpoints(std::move(points));
    curve.auc = detail::auc_from_points(curve.points);
    return curve;
}

// Fit MGLasso across the lambda1 grid (warm-started from sparse to dense) at a
// fixed lambda2 and trace the support-recovery operating points.
inline RocCurve roc_curve(const DataMatrix& X, const Graph& truth, const std::vector<double>& lambda1_grid,
                          double lambda2, const SolverConfig& solver_cfg = {}, double edge_tol = 1e-8) {
    if (lambda1_grid.empty()) throw ConfigError("roc_curve: lambda1 grid must be nonempty");
    std::vector<double> grid = lambda1_grid;
    std::sort(grid.begin(), grid.end(), std::greater<double>());
    detail::Workspace ws(X, std::nullopt, lambda2 > 0);
    Vector beta = Vector::Zero(static_cast<Eigen::Index>(ws.p) * (ws.p - 1));
    std::vector<Graph> estimates;
    estimates.reserve(grid.size());
    for (double lambda1 : grid) {
        Hyperparameters hp;
        hp.lambda1 = lambda1;
        hp.lambda2 = lambda2;
        try {
            auto [solution, diag] = detail::conesta(ws, hp, solver_cfg, beta);
            beta = solution;
            (void)diag;
            estimates.push_back(graph_from_beta(devectorize(beta, ws.p), EdgeRule::Or, edge_tol));
        } catch (const NumericalError&) {
            // skip this grid point, keep the warm start
        }
    }
    return roc_from_graphs(estimates, truth);
}

// Same operating points for the neighborhood-selection comparator.
inline RocCurve mb_roc_curve(const DataMatrix& X, const Graph& truth, const std::vector<double>& lambda1_grid,
                             double edge_tol = 1e-8) {
    std::vector<double> grid = lambda1_grid;
    std::sort(grid.begin(), grid.end(), std::greater<double>());
    std::vector<Graph> estimates;
    estimates.reserve(grid.size());
    for (double lambda1 : grid)
        estimates.push_back(graph_from_beta(neighborhood_selection(X, lambda1), EdgeRule::Or, edge_tol));
    return roc_from_graphs(estimates, truth);
}

struct AveragedCurve {
    double lambda2 = 0.0;
    std::vector<double> mean_tpr;     // on the shared fpr grid
    std::vector<double> rep_aucs;     // per replication
    double auc_mean = 0.0;
    double auc_sd = 0.0;
};

struct AveragedRocResult {
    std::vector<double> fpr_grid;  // 101 points on [0, 1]
    std::vector<AveragedCurve> curves;
    std::vector<AveragedCurve> mb;  // empty unless requested; single entry
};

namespace detail {

inline void finalize_curve(AveragedCurve& curve, const std::vector<std::vector<double>>& tprs) {
    const std::size_t grid_size = tprs.front().size();
    curve.mean_tpr.assign(grid_size, 0.0);
    for (const auto& tpr : tprs)
        for (std::size_t g = 0; g < grid_size; ++g) curve.mean_tpr[g] += tpr[g];
    for (std::size_t g = 0; g < grid_size; ++g) curve.mean_tpr[g] /= static_cast<double>(tprs.size());
    double mean = 0.0;
    for (double a : curve.rep_aucs) mean += a;
    mean /= static_cast<double>(curve.rep_aucs.size());
    double var = 0.0;
    for (double a : curve.rep_aucs) var += (a - mean) * (a - mean);
    curve.auc_mean = mean;
    curve.auc_sd = curve.rep_aucs.size() > 1 ? std::sqrt(var / static_cast<double>(curve.rep_aucs.size() - 1)) : 0.0;
}

}  // namespace detail

// Replicated support-recovery benchmark: fresh ground truth and data per
// replication, one ROC per lambda2 value, vertically averaged on a common fpr
// grid. Optionally runs the neighborhood-selection comparator on the same data.
inline AveragedRocResult averaged_roc(const SimConfig& sim, const std::vector<double>& lambda1_grid,
                                      const std::vector<double>& lambda2_values, int replications,
                                      const SolverConfig& solver_cfg = {}, bool include_mb = false) {
    if (replications < 1) throw ConfigError("averaged_roc: replications must be >= 1");
    sim.validate();
    AveragedRocResult out;
    out.fpr_grid.resize(101);
    for (int g = 0; g <= 100; ++g) out.fpr_grid[static_cast<std::size_t>(g)] = static_cast<double>(g) / 100.0;

    std::vector<std::vector<std::vector<double>>> tprs(lambda2_values.size());  // [lambda2][rep][grid]
    std::vector<std::vector<double>> aucs(lambda2_values.size());
    std::vector<std::vector<double>> mb_tprs;
    std::vector<double> mb_aucs;

    for (int rep = 0; rep < replications; ++rep) {
        rng::Engine eng = rng::make_stream(sim.seed, static_cast<std::uint64_t>(rep));
        const GroundTruth truth = make_ground_truth(sim, eng);
        // unit-variance columns: lambda values are on the scale the experiment
        // design quotes them in
        const DataMatrix data = standardize(sample_gaussian(truth, sim.n, eng), true, ScaleMode::UnitVariance).data;
        for (std::size_t li = 0; li < lambda2_values.size(); ++li) {
            const RocCurve curve = roc_curve(data, truth.adjacency, lambda1_grid, lambda2_values[li], solver_cfg);
            std::vector<double> tpr(out.fpr_grid.size());
            for (std::size_t g = 0; g < out.fpr_grid.size(); ++g)
                tpr[g] = detail::interpolate_tpr(curve.points, out.fpr_grid[g]);
            tprs[li].push_back(std::move(tpr));
            aucs[li].push_back(curve.auc);
        }
        if (include_mb) {
            const RocCurve curve = mb_roc_curve(data, truth.adjacency, lambda1_grid);
            std::vector<double> tpr(out.fpr_grid.size());
            for (std::size_t g = 0; g < out.fpr_grid.size(); ++g)
                tpr[g] = detail::interpolate_tpr(curve.points, out.fpr_grid[g]);
            mb_tprs.push_back(std::move(tpr));
            mb_aucs.push_back(curve.auc);
        }
    }

    for (std::size_t li = 0; li < lambda2_values.size(); ++li) {
        AveragedCurve curve;
        curve.lambda2 = lambda2_values[li];
        curve.rep_aucs = aucs[li];
        detail::finalize_curve(curve, tprs[li]);
        out.curves.push_back(std::move(curve));
    }
    if (include_mb) {
        AveragedCurve curve;
        curve.lambda2 = 0.0;
        curve.rep_aucs = mb_aucs;
        detail::finalize_curve(curve, mb_tprs);
        out.mb.push_back(std::move(curve));
    }
    return out;
}

// Chance-corrected pair-counting agreement between two partitions.
inline double adjusted_rand_index(const Partition& a, const Partition& b) {
    if (a.size() != b.size()) throw DataError("adjusted_rand_index: partitions must have the same size");
    const int p = a.size();
    using LongMatrix = Eigen::Matrix<long, Eigen::Dynamic, Eigen::Dynamic>;
    LongMatrix contingency = LongMatrix::Zero(a.num_clusters, b.num_clusters);
    for (int i = 0; i < p; ++i)
        contingency(a.labels[static_cast<std::size_t>(i)], b.labels[static_cast<std::size_t>(i)]) += 1;

    auto choose2 = [](long m) { return 0.5 * static_cast<double>(m) * static_cast<double>(m - 1); };
    double index = 0.0;
    for (int i = 0; i < a.num_clusters; ++i)
        for (int j = 0; j < b.num_clusters; ++j) index += choose2(contingency(i, j));
    double sum_a = 0.0, sum_b = 0.0;
    for (int i = 0; i < a.num_clusters; ++i) sum_a += choose2(contingency.row(i).sum());
    for (int j = 0; j < b.num_clusters; ++j) sum_b += choose2(contingency.col(j).sum());
    const double expected = sum_a * sum_b / choose2(p);
    const double max_index = 0.5 * (sum_a + sum_b);
    const double denom = max_index - expected;
    if (denom == 0.0) return 1.0;  // both partitions trivial and identical in pair structure
    return (index - expected) / denom;
}

}  // namespace mglasso
