// Test-only oracles, independent of the library implementation paths they
// check: straight-line objective evaluation, finite differences, brute-force
// pair counting, and explicit pseudo-inverse solutions.
#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/SVD>

#include "mglasso/mglasso.hpp"

namespace oracles {

using mglasso::Matrix;
using mglasso::Vector;

// Plain-loop evaluation of the objective straight off its formula; no shared
// code with objective_value.
inline double objective_by_hand(const Matrix& beta, const Matrix& X, double lambda1, double lambda2) {
    const int n = static_cast<int>(X.rows());
    const int p = static_cast<int>(X.cols());
    double quad = 0.0;
    for (int i = 0; i < p; ++i) {
        for (int r = 0; r < n; ++r) {
            double fitted = 0.0;
            for (int j = 0; j < p; ++j) {
                if (j == i) continue;
                const int slot = j < i ? j : j - 1;
                fitted += X(r, j) * beta(i, slot);
            }
            const double resid = X(r, i) - fitted;
            quad += resid * resid;
        }
    }
    double l1 = 0.0;
    for (int i = 0; i < p; ++i)
        for (int s = 0; s < p - 1; ++s) l1 += std::abs(beta(i, s));
    double fused = 0.0;
    for (int i = 0; i < p; ++i) {
        for (int j = i + 1; j < p; ++j) {
            double sq = 0.0;
            for (int k = 0; k < p; ++k) {
                if (k == i) continue;
                const int slot_i = k < i ? k : k - 1;
                double other;
                if (k == j) {
                    const int slot_j = i < j ? i : i - 1;
                    other = beta(j, slot_j);
                } else {
                    const int slot_j = k < j ? k : k - 1;
                    other = beta(j, slot_j);
                }
                const double diff = beta(i, slot_i) - other;
                sq += diff * diff;
            }
            fused += std::sqrt(sq);
        }
    }
    return 0.5 * quad + lambda1 * l1 + lambda2 * fused;
}

// Central finite differences of a scalar function.
inline Vector finite_difference_gradient(const std::function<double(const Vector&)>& f, const Vector& x,
                                         double h = 1e-6) {
    Vector grad(x.size());
    Vector probe = x;
    for (Eigen::Index k = 0; k < x.size(); ++k) {
        probe(k) = x(k) + h;
        const double up = f(probe);
        probe(k) = x(k) - h;
        const double down = f(probe);
        probe(k) = x(k);
        grad(k) = (up - down) / (2.0 * h);
    }
    return grad;
}

// Rand-index style agreement by exhaustive pair enumeration.
inline double ari_by_pairs(const std::vector<int>& a, const std::vector<int>& b) {
    const int p = static_cast<int>(a.size());
    double n11 = 0, n10 = 0, n01 = 0, n00 = 0;
    for (int i = 0; i < p; ++i) {
        for (int j = i + 1; j < p; ++j) {
            const bool same_a = a[i] == a[j];
            const bool same_b = b[i] == b[j];
            if (same_a && same_b) ++n11;
            else if (same_a) ++n10;
            else if (same_b) ++n01;
            else ++n00;
        }
    }
    const double total = n11 + n10 + n01 + n00;
    const double expected = (n11 + n10) * (n11 + n01) / total;
    const double max_index = 0.5 * ((n11 + n10) + (n11 + n01));
    if (max_index == expected) return 1.0;
    return (n11 - expected) / (max_index - expected);
}

// Confusion counts by explicit pair enumeration over adjacency matrices.
struct PairCounts {
    long tp = 0, fp = 0, tn = 0, fn = 0;
};

inline PairCounts confusion_by_pairs(const mglasso::BoolMatrix& est, const mglasso::BoolMatrix& truth) {
    PairCounts c;
    for (Eigen::Index i = 0; i < est.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < est.rows(); ++j) {
            if (est(i, j) && truth(i, j)) ++c.tp;
            else if (est(i, j)) ++c.fp;
            else if (truth(i, j)) ++c.fn;
            else ++c.tn;
        }
    }
    return c;
}

// Min-norm least squares via an explicit SVD pseudo-inverse.
inline Vector pinv_solve(const Matrix& A, const Vector& b) {
    Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double cutoff = 1e-12 * sv(0) * std::max(A.rows(), A.cols());
    Vector inv_sv(sv.size());
    for (Eigen::Index k = 0; k < sv.size(); ++k) inv_sv(k) = sv(k) > cutoff ? 1.0 / sv(k) : 0.0;
    return svd.matrixV() * inv_sv.asDiagonal() * svd.matrixU().transpose() * b;
}

// Deterministic random test instances.
inline Matrix random_matrix(mglasso::rng::Engine& eng, int rows, int cols, double scale = 1.0) {
    mglasso::rng::NormalSampler normal;
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = scale * normal(eng);
    return m;
}

inline mglasso::DataMatrix random_data(mglasso::rng::Engine& eng, int n, int p) {
    mglasso::DataMatrix X;
    X.values = random_matrix(eng, n, p);
    return mglasso::standardize(X).data;
}

inline mglasso::RegressionMatrix random_beta(mglasso::rng::Engine& eng, int p, double scale = 1.0) {
    mglasso::RegressionMatrix beta = mglasso::RegressionMatrix::zero(p);
    beta.coeffs = random_matrix(eng, p, p - 1, scale);
    return beta;
}

}  // namespace oracles
