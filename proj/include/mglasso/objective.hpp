#pragma once

#include <Eigen/Sparse>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "mglasso/model.hpp"
#include "mglasso/types.hpp"

namespace mglasso {

// Stacked pairwise difference operator: block b (pair i<j, lexicographic) maps
// beta~ to w_ij * (beta^i - tau_ij(beta^j)), a segment of length p-1. Each block
// row has exactly two nonzero entries, +w_ij and -w_ij.
class DifferenceOperator {
public:
    explicit DifferenceOperator(int p, const std::optional<Matrix>& weights = std::nullopt) : p_(p) {
        const int d = p * (p - 1);
        const int block = p - 1;
        pairs_.reserve(static_cast<std::size_t>(p) * (p - 1) / 2);
        std::vector<Eigen::Triplet<double>> trips;
        trips.reserve(static_cast<std::size_t>(p) * (p - 1) / 2 * block * 2);
        int row = 0;
        for (int i = 0; i < p; ++i) {
            for (int j = i + 1; j < p; ++j) {
                const double w = weights ? (*weights)(i, j) : 1.0;
                pairs_.emplace_back(i, j);
                for (int slot = 0; slot < block; ++slot, ++row) {
                    if (w == 0.0) continue;
                    const int k = RegressionMatrix::slot_to_var(i, slot);
                    const int other_var = (k == j) ? i : k;
                    trips.emplace_back(row, i * block + slot, w);
                    trips.emplace_back(row, j * block + RegressionMatrix::var_to_slot(j, other_var), -w);
                }
            }
        }
        mat_.resize(row, d);
        mat_.setFromTriplets(trips.begin(), trips.end());
        mat_.makeCompressed();
    }

    int p() const { return p_; }
    int num_blocks() const { return static_cast<int>(pairs_.size()); }
    int block_size() const { return p_ - 1; }
    Eigen::Index rows() const { return mat_.rows(); }
    const std::vector<std::pair<int, int>>& pair_list() const { return pairs_; }
    std::pair<int, int> pair(int b) const { return pairs_[static_cast<std::size_t>(b)]; }
    const Eigen::SparseMatrix<double>& matrix() const { return mat_; }

    Vector apply(const Vector& beta_vec) const { return mat_ * beta_vec; }
    Vector apply_transpose(const Vector& z) const { return mat_.transpose() * z; }

private:
    int p_;
    std::vector<std::pair<int, int>> pairs_;
    Eigen::SparseMatrix<double> mat_;
};

namespace detail {

inline void check_dims(const RegressionMatrix& beta, const DataMatrix& X) {
    if (beta.p != static_cast<int>(X.p()) || beta.coeffs.cols() != X.p() - 1)
        throw DataError("beta shape inconsistent with data dimensions");
}

// Residual of the i-th nodewise regression: X^{\i} beta^i - X^i.
inline Vector nodewise_residual(const RegressionMatrix& beta, const DataMatrix& X, int i) {
    const int p = static_cast<int>(X.p());
    Vector r = -X.values.col(i);
    for (int slot = 0; slot < p - 1; ++slot)
        r += beta.coeffs(i, slot) * X.values.col(RegressionMatrix::slot_to_var(i, slot));
    return r;
}

// Per-block Huber value: closed form of max_{|a|<=1} <a,z> - mu/2 |a|^2.
inline double huber_block(double norm, double mu) {
    return norm >= mu ? norm - 0.5 * mu : norm * norm / (2.0 * mu);
}

}  // namespace detail

// J(beta; X) = 1/2 sum_i ||X^i - X^{\i} beta^i||^2 + lambda1 sum_i ||beta^i||_1
//            + lambda2 sum_{i<j} w_ij ||beta^i - tau_ij(beta^j)||_2
inline double objective_value(const RegressionMatrix& beta, const DataMatrix& X, const Hyperparameters& hp) {
    detail::check_dims(beta, X);
    const int p = static_cast<int>(X.p());
    double quad = 0.0;
    for (int i = 0; i < p; ++i) quad += detail::nodewise_residual(beta, X, i).squaredNorm();
    double value = 0.5 * quad + hp.lambda1 * beta.coeffs.cwiseAbs().sum();
    if (hp.lambda2 > 0) {
        for (int i = 0; i < p; ++i)
            for (int j = i + 1; j < p; ++j)
                value += hp.lambda2 * hp.weight(i, j) * aligned_difference(beta, i, j).norm();
    }
    return value;
}

// Gradient of the quadratic part; row i = -(X^{\i})^T (X^i - X^{\i} beta^i).
inline RegressionMatrix smooth_gradient(const RegressionMatrix& beta, const DataMatrix& X) {
    detail::check_dims(beta, X);
    const int p = static_cast<int>(X.p());
    RegressionMatrix grad = RegressionMatrix::zero(p);
    for (int i = 0; i < p; ++i) {
        const Vector r = detail::nodewise_residual(beta, X, i);
        for (int slot = 0; slot < p - 1; ++slot)
            grad.coeffs(i, slot) = X.values.col(RegressionMatrix::slot_to_var(i, slot)).dot(r);
    }
    return grad;
}

inline Vector prox_l1(const Vector& v, double threshold) {
    if (threshold < 0) throw ConfigError("prox_l1: threshold must be nonnegative");
    Vector out(v.size());
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        const double shrunk = std::abs(v(k)) - threshold;
        out(k) = shrunk > 0 ? (v(k) > 0 ? shrunk : -shrunk) : 0.0;
    }
    return out;
}

// Nesterov-smoothed fused penalty s_mu(beta~) = sum over blocks of the Huber
// value of ||z_b||, z = D beta~.
inline double smoothed_fused_value(const Vector& beta_vec, const DifferenceOperator& D, double mu) {
    if (mu <= 0) throw ConfigError("smoothed_fused_value: mu must be positive");
    const Vector z = D.apply(beta_vec);
    const int block = D.block_size();
    double value = 0.0;
    for (int b = 0; b < D.num_blocks(); ++b)
        value += detail::huber_block(z.segment(static_cast<Eigen::Index>(b) * block, block).norm(), mu);
    return value;
}

// Exact (unsmoothed) fused penalty sum_b ||z_b||.
inline double fused_value(const Vector& beta_vec, const DifferenceOperator& D) {
    const Vector z = D.apply(beta_vec);
    const int block = D.block_size();
    double value = 0.0;
    for (int b = 0; b < D.num_blocks(); ++b)
        value += z.segment(static_cast<Eigen::Index>(b) * block, block).norm();
    return value;
}

// Blockwise maximizer alpha*_b = z_b / max(mu, ||z_b||); lies in the unit ball.
inline Vector smoothed_dual_point(const Vector& z, int num_blocks, int block, double mu) {
    Vector alpha(z.size());
    for (int b = 0; b < num_blocks; ++b) {
        const auto seg = z.segment(static_cast<Eigen::Index>(b) * block, block);
        alpha.segment(static_cast<Eigen::Index>(b) * block, block) = seg / std::max(mu, seg.norm());
    }
    return alpha;
}

// Gradient D^T alpha*(beta~); Lipschitz with constant ||D||_2^2 / mu.
inline Vector smoothed_fused_gradient(const Vector& beta_vec, const DifferenceOperator& D, double mu) {
    if (mu <= 0) throw ConfigError("smoothed_fused_gradient: mu must be positive");
    const Vector z = D.apply(beta_vec);
    return D.apply_transpose(smoothed_dual_point(z, D.num_blocks(), D.block_size(), mu));
}

namespace detail {

// Duality gap of the mu-smoothed problem from a residual-based dual candidate
// scaled into feasibility; the scale factor is optimized in closed form. Always
// a nonnegative upper bound on the smoothed problem's suboptimality. lambda2 is
// folded into the fusion operator before smoothing, so its smoothed part uses
// z = lambda2 * D beta~ with the same mu.
struct GapTerms {
    double primal = 0.0;       // f_mu(beta)
    double residual_sq = 0.0;  // ||r||^2 summed over regressions
    double residual_dot_y = 0.0;
    double alpha_sq = 0.0;     // ||alpha||^2 over all blocks
    double grad_inf = 0.0;     // ||X~^T r + lambda2 D^T alpha||_inf
};

inline double gap_from_terms(const GapTerms& t, double lambda1) {
    const double a = 0.5 * t.residual_sq + 0.5 * t.alpha_sq;  // alpha_sq already carries mu/2 scaling below
    const double b = t.residual_dot_y;
    double c_max;
    if (lambda1 > 0)
        c_max = t.grad_inf > lambda1 ? lambda1 / t.grad_inf : 1.0;
    else
        c_max = t.grad_inf == 0.0 ? 1.0 : 0.0;
    double c = c_max;
    if (a > 0) c = std::clamp(-b / (2.0 * a), 0.0, c_max);
    const double dual = -c * b - c * c * a;
    return std::max(0.0, t.primal - dual);
}

}  // namespace detail

// Public form: builds the operator from hp and evaluates directly from X.
// Fast Gram-based equivalents used inside the solver live in solver.hpp.
inline double duality_gap(const RegressionMatrix& beta, const DataMatrix& X, const Hyperparameters& hp, double mu) {
    if (mu <= 0) throw ConfigError("duality_gap: mu must be positive");
    detail::check_dims(beta, X);
    const int p = static_cast<int>(X.p());
    const DifferenceOperator D(p, hp.weights);
    const Vector beta_vec = vectorize(beta);
    const Vector z = hp.lambda2 * D.apply(beta_vec);
    const Vector alpha = smoothed_dual_point(z, D.num_blocks(), D.block_size(), mu);

    detail::GapTerms t;
    Vector grad = Vector::Zero(beta_vec.size());
    for (int i = 0; i < p; ++i) {
        const Vector r = detail::nodewise_residual(beta, X, i);
        t.residual_sq += r.squaredNorm();
        t.residual_dot_y += r.dot(X.values.col(i));
        for (int slot = 0; slot < p - 1; ++slot)
            grad(static_cast<Eigen::Index>(i) * (p - 1) + slot) = X.values.col(RegressionMatrix::slot_to_var(i, slot)).dot(r);
    }
    grad += hp.lambda2 * D.apply_transpose(alpha);
    t.grad_inf = grad.lpNorm<Eigen::Infinity>();
    t.alpha_sq = mu * alpha.squaredNorm();
    t.primal = 0.5 * t.residual_sq + hp.lambda1 * beta.coeffs.cwiseAbs().sum() + (alpha.dot(z) - 0.5 * mu * alpha.squaredNorm());
    return detail::gap_from_terms(t, hp.lambda1);
}

}  // namespace mglasso
