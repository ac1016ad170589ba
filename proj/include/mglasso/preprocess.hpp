#pragma once

#include <cmath>
#include <string>

#include "mglasso/types.hpp"

namespace mglasso {

// UnitNorm divides columns by their l2 norm; UnitVariance divides by the
// (population) standard deviation. The two lead to the same estimates with
// both penalties rescaled by n, so UnitVariance is the scale on which the
// usual "paper scale" penalty values are quoted.
enum class ScaleMode { None, UnitNorm, UnitVariance };

inline ScaleMode scale_mode_from_string(const std::string& s) {
    if (s == "none") return ScaleMode::None;
    if (s == "norm") return ScaleMode::UnitNorm;
    if (s == "sd") return ScaleMode::UnitVariance;
    throw ConfigError("unknown scale mode: " + s + " (expected 'none', 'norm' or 'sd')");
}

struct StandardizeResult {
    DataMatrix data;
    Vector centers;  // subtracted column means (zero when center = false)
    Vector scales;   // factors divided out (ones when scaling is off)
};

// Center columns to mean zero and optionally rescale them. A constant column
// makes its nodewise regression ill-posed and is rejected.
inline StandardizeResult standardize(const DataMatrix& X, bool center = true,
                                     ScaleMode scale = ScaleMode::UnitNorm) {
    X.validate();
    StandardizeResult out;
    out.data = X;
    out.centers = Vector::Zero(X.p());
    out.scales = Vector::Ones(X.p());
    for (Eigen::Index j = 0; j < X.p(); ++j) {
        auto col = out.data.values.col(j);
        const double mean = col.mean();
        const double sd = std::sqrt((col.array() - mean).square().sum() / static_cast<double>(X.n()));
        if (sd <= 1e-12 * std::max(1.0, std::abs(mean)))
            throw DataError("column " + X.name_of(static_cast<int>(j)) + " has zero variance");
        if (center) {
            col.array() -= mean;
            out.centers(j) = mean;
        }
        if (scale == ScaleMode::UnitNorm) {
            const double norm = col.norm();
            col /= norm;
            out.scales(j) = norm;
        } else if (scale == ScaleMode::UnitVariance) {
            const double factor = center ? col.norm() / std::sqrt(static_cast<double>(X.n())) : sd;
            col /= factor;
            out.scales(j) = factor;
        }
    }
    out.data.centered = center;
    out.data.scaled = scale == ScaleMode::UnitNorm;
    return out;
}

inline StandardizeResult standardize(const DataMatrix& X, bool center, bool scale) {
    return standardize(X, center, scale ? ScaleMode::UnitNorm : ScaleMode::None);
}

// Centered log-ratio transform for compositional counts: per row,
// y = log(x + pseudo) and the row mean of y is subtracted.
inline DataMatrix clr_transform(const Matrix& counts, double pseudo = 1.0,
                                const std::optional<std::vector<std::string>>& names = std::nullopt) {
    if (pseudo <= 0) throw ConfigError("clr_transform: pseudocount must be positive");
    if ((counts.array() < 0).any()) throw DataError("clr_transform: counts must be nonnegative");
    DataMatrix out;
    out.values = (counts.array() + pseudo).log().matrix();
    const Vector row_means = out.values.rowwise().mean();
    out.values.colwise() -= row_means;
    out.column_names = names;
    return out;
}

// Drop columns whose nonzero prevalence is below min_prevalence (a fraction of
// the rows). Returns the kept column indices.
inline std::vector<int> prevalence_filter(const Matrix& counts, double min_prevalence) {
    std::vector<int> keep;
    for (Eigen::Index j = 0; j < counts.cols(); ++j) {
        const double present = (counts.col(j).array() > 0).count();
        if (present / static_cast<double>(counts.rows()) >= min_prevalence) keep.push_back(static_cast<int>(j));
    }
    return keep;
}

// Drop rows whose total count is below min_depth. Returns the kept row indices.
inline std::vector<int> depth_filter(const Matrix& counts, double min_depth) {
    std::vector<int> keep;
    for (Eigen::Index i = 0; i < counts.rows(); ++i)
        if (counts.row(i).sum() >= min_depth) keep.push_back(static_cast<int>(i));
    return keep;
}

}  // namespace mglasso
