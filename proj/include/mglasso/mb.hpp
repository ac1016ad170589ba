#pragma once

#include <cmath>

#include "mglasso/types.hpp"

namespace mglasso {

// Neighborhood-selection baseline: each column regressed on the others with an
// l1 penalty, solved by cyclic coordinate descent on the Gram matrix. This is
// an independent route to the lambda2 = 0 solution and the comparator used in
// the support-recovery benchmarks.

// Smallest lambda1 for which all nodewise lasso solutions are zero:
// max_i ||(X^{\i})^T X^i||_inf under the 1/2 ||.||^2 scaling.
inline double lambda1_max(const DataMatrix& X) {
    const Matrix G = X.values.transpose() * X.values;
    double best = 0.0;
    for (Eigen::Index i = 0; i < X.p(); ++i)
        for (Eigen::Index j = 0; j < X.p(); ++j)
            if (i != j) best = std::max(best, std::abs(G(j, i)));
    return best;
}

// The classical estimator uses a 1/n quadratic term; with the 1/2 scaling used
// here the same solution is obtained at lambda1 = n * lambda / 2.
inline double mb_equivalent_lambda1(Eigen::Index n, double lambda) { return 0.5 * static_cast<double>(n) * lambda; }

inline RegressionMatrix neighborhood_selection(const DataMatrix& X, double lambda1, double tol = 1e-10,
                                               long max_sweeps = 100000) {
    X.validate();
    if (lambda1 < 0) throw ConfigError("neighborhood_selection: lambda1 must be nonnegative");
    const int p = static_cast<int>(X.p());
    const Matrix G = X.values.transpose() * X.values;
    RegressionMatrix beta = RegressionMatrix::zero(p);
    for (int i = 0; i < p; ++i) {
        // coordinate descent on 1/2 b' Gsub b - b' g + lambda |b|_1
        Vector b = Vector::Zero(p - 1);
        Vector grad(p - 1);  // Gsub * b - g, kept up to date coordinate-wise
        for (int slot = 0; slot < p - 1; ++slot) grad(slot) = -G(RegressionMatrix::slot_to_var(i, slot), i);
        for (long sweep = 0; sweep < max_sweeps; ++sweep) {
            double max_change = 0.0;
            for (int slot = 0; slot < p - 1; ++slot) {
                const int vj = RegressionMatrix::slot_to_var(i, slot);
                const double curvature = G(vj, vj);
                if (curvature <= 0) continue;  // constant column, leave at zero
                const double partial = grad(slot) - curvature * b(slot);
                const double raw = -partial;
                double updated = 0.0;
                if (raw > lambda1)
                    updated = (raw - lambda1) / curvature;
                else if (raw < -lambda1)
                    updated = (raw + lambda1) / curvature;
                const double delta = updated - b(slot);
                if (delta == 0.0) continue;
                for (int s2 = 0; s2 < p - 1; ++s2) grad(s2) += delta * G(RegressionMatrix::slot_to_var(i, s2), vj);
                b(slot) = updated;
                max_change = std::max(max_change, std::abs(delta));
            }
            if (max_change <= tol) break;
        }
        beta.coeffs.row(i) = b.transpose();
    }
    return beta;
}

}  // namespace mglasso
