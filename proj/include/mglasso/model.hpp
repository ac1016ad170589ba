#pragma once

#include <cmath>
#include <stdexcept>

#include "mglasso/types.hpp"

namespace mglasso {

// beta~ = (beta^1; ...; beta^p), row-major. The fused-penalty operator indexing
// depends on this order; do not change it.
inline Vector vectorize(const RegressionMatrix& beta) {
    const int p = beta.p;
    Vector v(static_cast<Eigen::Index>(p) * (p - 1));
    for (int i = 0; i < p; ++i)
        v.segment(static_cast<Eigen::Index>(i) * (p - 1), p - 1) = beta.coeffs.row(i).transpose();
    return v;
}

inline RegressionMatrix devectorize(const Vector& v, int p) {
    if (v.size() != static_cast<Eigen::Index>(p) * (p - 1))
        throw DataError("devectorize: vector length must be p*(p-1)");
    RegressionMatrix beta = RegressionMatrix::zero(p);
    for (int i = 0; i < p; ++i)
        beta.coeffs.row(i) = v.segment(static_cast<Eigen::Index>(i) * (p - 1), p - 1).transpose();
    return beta;
}

// beta^i - tau_ij(beta^j) in row-i slot order. tau_ij matches coefficients on
// shared variables k not in {i, j} and pairs the cross terms beta^i_j <-> beta^j_i.
inline Vector aligned_difference(const RegressionMatrix& beta, int i, int j) {
    if (i == j) throw std::invalid_argument("aligned_difference: i and j must differ");
    const int p = beta.p;
    Vector diff(p - 1);
    for (int slot = 0; slot < p - 1; ++slot) {
        const int k = RegressionMatrix::slot_to_var(i, slot);
        const double other = (k == j) ? beta.coeff(j, i) : beta.coeff(j, k);
        diff(slot) = beta.coeffs(i, slot) - other;
    }
    return diff;
}

enum class EdgeRule { Or, And };

inline EdgeRule edge_rule_from_string(const std::string& s) {
    if (s == "or") return EdgeRule::Or;
    if (s == "and") return EdgeRule::And;
    throw ConfigError("unknown edge rule: " + s + " (expected 'or' or 'and')");
}

// Support extraction: edge (i,j) iff |beta^i_j| > tol and/or |beta^j_i| > tol.
// Edge weight = mean of the qualifying |beta| magnitudes.
inline Graph graph_from_beta(const RegressionMatrix& beta, EdgeRule rule = EdgeRule::Or, double tol = 1e-8) {
    if (tol < 0) throw ConfigError("graph_from_beta: tol must be nonnegative");
    const int p = beta.p;
    Graph g = Graph::empty(p);
    g.weights = Matrix::Zero(p, p);
    for (int i = 0; i < p; ++i) {
        for (int j = i + 1; j < p; ++j) {
            const double bij = std::abs(beta.coeff(i, j));
            const double bji = std::abs(beta.coeff(j, i));
            const bool hit_ij = bij > tol;
            const bool hit_ji = bji > tol;
            const bool edge = (rule == EdgeRule::Or) ? (hit_ij || hit_ji) : (hit_ij && hit_ji);
            if (!edge) continue;
            g.adjacency(i, j) = g.adjacency(j, i) = true;
            double sum = 0.0;
            int count = 0;
            if (hit_ij) { sum += bij; ++count; }
            if (hit_ji) { sum += bji; ++count; }
            (*g.weights)(i, j) = (*g.weights)(j, i) = sum / count;
        }
    }
    return g;
}

}  // namespace mglasso
