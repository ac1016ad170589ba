#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mglasso/errors.hpp"

namespace mglasso {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using BoolMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

// n x p observations, rows = samples, columns = variables. Treated as
// immutable once built; all estimators take it by const reference.
struct DataMatrix {
    Matrix values;
    std::optional<std::vector<std::string>> column_names;
    bool centered = false;  // column means are zero
    bool scaled = false;    // columns have unit l2 norm

    Eigen::Index n() const { return values.rows(); }
    Eigen::Index p() const { return values.cols(); }

    std::string name_of(int j) const {
        if (column_names) return (*column_names)[static_cast<std::size_t>(j)];
        return "x" + std::to_string(j + 1);
    }

    void validate() const {
        if (n() < 2 || p() < 2) throw DataError("DataMatrix requires n >= 2 and p >= 2");
        if (!values.allFinite()) throw DataError("DataMatrix contains non-finite entries");
        if (column_names && static_cast<Eigen::Index>(column_names->size()) != p())
            throw DataError("column_names size does not match p");
        if (centered) {
            for (Eigen::Index j = 0; j < p(); ++j) {
                if (std::abs(values.col(j).mean()) > 1e-10)
                    throw DataError("column " + name_of(static_cast<int>(j)) + " marked centered but has nonzero mean");
            }
        }
    }
};

// Stacked nodewise regression coefficients: p rows, row i holds beta^i over the
// ordered index set {1..p}\{i}. Slot k of row i refers to variable k when k < i
// and to variable k+1 otherwise.
struct RegressionMatrix {
    Matrix coeffs;  // p x (p-1)
    int p = 0;

    static RegressionMatrix zero(int p) {
        RegressionMatrix b;
        b.p = p;
        b.coeffs = Matrix::Zero(p, p - 1);
        return b;
    }

    static int slot_to_var(int i, int slot) { return slot < i ? slot : slot + 1; }
    static int var_to_slot(int i, int var) { return var < i ? var : var - 1; }

    double coeff(int i, int j) const { return coeffs(i, var_to_slot(i, j)); }
    double& coeff(int i, int j) { return coeffs(i, var_to_slot(i, j)); }

    void validate() const {
        if (p < 2) throw DataError("RegressionMatrix requires p >= 2");
        if (coeffs.rows() != p || coeffs.cols() != p - 1)
            throw DataError("RegressionMatrix shape must be p x (p-1)");
        if (!coeffs.allFinite()) throw DataError("RegressionMatrix contains non-finite entries");
    }
};

// lambda1: sparsity weight, lambda2: fusion weight, optional pair weights w_ij.
struct Hyperparameters {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    std::optional<Matrix> weights;  // symmetric, nonnegative, zero diagonal

    double weight(int i, int j) const { return weights ? (*weights)(i, j) : 1.0; }

    void validate(int p) const {
        if (lambda1 < 0 || lambda2 < 0) throw ConfigError("lambda1 and lambda2 must be nonnegative");
        if (!weights) return;
        if (weights->rows() != p || weights->cols() != p)
            throw ConfigError("weights must be p x p");
        for (int i = 0; i < p; ++i) {
            if ((*weights)(i, i) != 0.0) throw ConfigError("weights must have zero diagonal");
            for (int j = 0; j < p; ++j) {
                if ((*weights)(i, j) < 0) throw ConfigError("weights must be nonnegative");
                if ((*weights)(i, j) != (*weights)(j, i)) throw ConfigError("weights must be symmetric");
            }
        }
    }
};

// Flat clustering: labels in {0..K-1}, every id used at least once.
struct Partition {
    std::vector<int> labels;
    int num_clusters = 0;

    static Partition singletons(int p) {
        Partition part;
        part.labels.resize(static_cast<std::size_t>(p));
        for (int i = 0; i < p; ++i) part.labels[static_cast<std::size_t>(i)] = i;
        part.num_clusters = p;
        return part;
    }

    // Canonical form: clusters numbered by first occurrence.
    static Partition from_labels(const std::vector<int>& raw) {
        Partition part;
        part.labels.resize(raw.size());
        std::vector<int> seen;
        for (std::size_t i = 0; i < raw.size(); ++i) {
            const auto it = std::find(seen.begin(), seen.end(), raw[i]);
            if (it == seen.end()) {
                part.labels[i] = static_cast<int>(seen.size());
                seen.push_back(raw[i]);
            } else {
                part.labels[i] = static_cast<int>(it - seen.begin());
            }
        }
        part.num_clusters = static_cast<int>(seen.size());
        return part;
    }

    int size() const { return static_cast<int>(labels.size()); }

    std::vector<std::vector<int>> clusters() const {
        std::vector<std::vector<int>> out(static_cast<std::size_t>(num_clusters));
        for (std::size_t i = 0; i < labels.size(); ++i)
            out[static_cast<std::size_t>(labels[i])].push_back(static_cast<int>(i));
        return out;
    }

    void validate() const {
        if (labels.empty()) throw DataError("Partition is empty");
        if (num_clusters < 1 || num_clusters > size()) throw DataError("Partition has invalid cluster count");
        std::vector<bool> used(static_cast<std::size_t>(num_clusters), false);
        for (int lab : labels) {
            if (lab < 0 || lab >= num_clusters) throw DataError("Partition label out of range");
            used[static_cast<std::size_t>(lab)] = true;
        }
        if (!std::all_of(used.begin(), used.end(), [](bool b) { return b; }))
            throw DataError("Partition has an empty cluster id");
    }
};

// `refines` = every cluster of *this maps into exactly one cluster of `coarser`.
inline bool refines(const Partition& fine, const Partition& coarse) {
    if (fine.size() != coarse.size()) return false;
    std::vector<int> image(static_cast<std::size_t>(fine.num_clusters), -1);
    for (int i = 0; i < fine.size(); ++i) {
        const auto c = static_cast<std::size_t>(fine.labels[static_cast<std::size_t>(i)]);
        const int target = coarse.labels[static_cast<std::size_t>(i)];
        if (image[c] == -1)
            image[c] = target;
        else if (image[c] != target)
            return false;
    }
    return true;
}

// Symmetric hollow adjacency over variables (or clusters), optional weights.
struct Graph {
    BoolMatrix adjacency;
    std::optional<Matrix> weights;

    static Graph empty(int p) {
        Graph g;
        g.adjacency = BoolMatrix::Constant(p, p, false);
        return g;
    }

    Eigen::Index size() const { return adjacency.rows(); }

    std::size_t edge_count() const {
        std::size_t count = 0;
        for (Eigen::Index i = 0; i < size(); ++i)
            for (Eigen::Index j = i + 1; j < size(); ++j)
                if (adjacency(i, j)) ++count;
        return count;
    }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        for (Eigen::Index i = 0; i < size(); ++i)
            for (Eigen::Index j = i + 1; j < size(); ++j)
                if (adjacency(i, j)) out.emplace_back(static_cast<int>(i), static_cast<int>(j));
        return out;
    }

    void validate() const {
        if (adjacency.rows() != adjacency.cols()) throw DataError("Graph adjacency must be square");
        for (Eigen::Index i = 0; i < size(); ++i) {
            if (adjacency(i, i)) throw DataError("Graph adjacency must have empty diagonal");
            for (Eigen::Index j = 0; j < size(); ++j)
                if (adjacency(i, j) != adjacency(j, i)) throw DataError("Graph adjacency must be symmetric");
        }
        if (weights && (weights->rows() != size() || weights->cols() != size()))
            throw DataError("Graph weights shape mismatch");
    }
};

struct SolveDiagnostics {
    std::vector<double> objective_trace;  // original (unsmoothed) J, entry 0 = at the start point
    double final_duality_gap = 0.0;       // certified bound for the returned iterate
    long iterations = 0;                  // total inner (FISTA) iterations
    std::vector<double> mu_trace;         // smoothing parameter per continuation step
    bool converged = false;
};

struct HierarchyLevel {
    double lambda2 = 0.0;
    Partition partition;
    RegressionMatrix beta;
    bool converged = false;
    double duality_gap = 0.0;
    double start_objective = 0.0;  // J(warm start) under this level's penalties
    long inner_iterations = 0;
};

// Merge of two clusters of the previous level's partition, by previous-level ids.
struct MergeEvent {
    double lambda2 = 0.0;
    int kept = 0;
    int absorbed = 0;
};

struct Hierarchy {
    std::vector<HierarchyLevel> levels;
    std::vector<MergeEvent> merges;

    void validate() const {
        for (std::size_t k = 0; k < levels.size(); ++k) {
            levels[k].partition.validate();
            if (k == 0) continue;
            if (!(levels[k].lambda2 > levels[k - 1].lambda2))
                throw DataError("Hierarchy lambda2 values must be strictly increasing");
            if (!refines(levels[k - 1].partition, levels[k].partition))
                throw DataError("Hierarchy partitions must be nested (merges only)");
        }
    }
};

}  // namespace mglasso
