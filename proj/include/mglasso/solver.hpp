#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "mglasso/objective.hpp"

namespace mglasso {

struct SolverConfig {
    double eps_target = 1e-6;          // final duality-gap tolerance
    bool relative_gap = true;          // interpret eps_target relative to max(1, J(beta0))
    int max_outer = 50;                // continuation steps
    long max_inner = 10000;            // FISTA iterations per continuation step
    double mu_floor = 1e-12;
    double continuation_factor = 0.5;  // epsilon_{k+1} = factor * gap_k
    double step_safety = 1.0;          // step = step_safety / L

    void validate() const {
        if (eps_target <= 0) throw ConfigError("eps_target must be positive");
        if (continuation_factor <= 0 || continuation_factor >= 1)
            throw ConfigError("continuation_factor must lie in (0,1)");
        if (step_safety <= 0 || step_safety > 1) throw ConfigError("step_safety must lie in (0,1]");
        if (max_outer < 1 || max_inner < 1) throw ConfigError("iteration limits must be >= 1");
        if (mu_floor <= 0) throw ConfigError("mu_floor must be positive");
    }
};

namespace detail {

// Largest eigenvalue of a symmetric PSD operator by power iteration with a
// deterministic start. Returns an upper bound: the Rayleigh estimate inflated
// by 2% on convergence, by a factor 2 otherwise.
inline double power_bound(Eigen::Index dim, const std::function<void(const Vector&, Vector&)>& apply,
                          double tol = 1e-6, int max_iter = 500) {
    Vector v(dim);
    for (Eigen::Index k = 0; k < dim; ++k) v(k) = 1.0 + 1e-3 * static_cast<double>(k % 17);
    v /= v.norm();
    Vector av(dim);
    double lambda = 0.0;
    bool converged = false;
    for (int it = 0; it < max_iter; ++it) {
        apply(v, av);
        const double norm = av.norm();
        if (norm == 0.0) return 0.0;
        const double lambda_new = v.dot(av);
        v = av / norm;
        if (it > 0 && std::abs(lambda_new - lambda) <= tol * std::max(1.0, std::abs(lambda_new))) {
            lambda = lambda_new;
            converged = true;
            break;
        }
        lambda = lambda_new;
    }
    return std::max(lambda, 0.0) * (converged ? 1.02 : 2.0);
}

// Gram-based problem state shared by FISTA / CONESTA / the path sweep. All
// per-iteration quantities are computed from G = X^T X, so iteration cost does
// not depend on n.
struct Workspace {
    int p = 0;
    Eigen::Index n = 0;
    std::vector<Matrix> gram_sub;  // (X^{\i})^T X^{\i}
    std::vector<Vector> gram_col;  // (X^{\i})^T X^i
    Vector gram_diag;              // ||X^i||^2
    std::optional<DifferenceOperator> D;
    double lip_quad = 0.0;
    double norm_d_sq = 0.0;

    Workspace(const DataMatrix& X, const std::optional<Matrix>& weights, bool need_fusion) {
        X.validate();
        p = static_cast<int>(X.p());
        n = X.n();
        const Matrix G = X.values.transpose() * X.values;
        gram_diag = G.diagonal();
        gram_sub.reserve(static_cast<std::size_t>(p));
        gram_col.reserve(static_cast<std::size_t>(p));
        for (int i = 0; i < p; ++i) {
            Matrix sub(p - 1, p - 1);
            Vector col(p - 1);
            for (int a = 0; a < p - 1; ++a) {
                const int va = RegressionMatrix::slot_to_var(i, a);
                col(a) = G(va, i);
                for (int b = 0; b < p - 1; ++b) sub(a, b) = G(va, RegressionMatrix::slot_to_var(i, b));
            }
            gram_sub.push_back(std::move(sub));
            gram_col.push_back(std::move(col));
        }
        lip_quad = power_bound(static_cast<Eigen::Index>(p) * (p - 1), [this](const Vector& v, Vector& out) {
            for (int i = 0; i < p; ++i)
                out.segment(static_cast<Eigen::Index>(i) * (p - 1), p - 1) =
                    gram_sub[static_cast<std::size_t>(i)] * v.segment(static_cast<Eigen::Index>(i) * (p - 1), p - 1);
        });
        if (need_fusion) build_fusion(weights);
    }

    void build_fusion(const std::optional<Matrix>& weights) {
        if (D) return;
        D.emplace(p, weights);
        norm_d_sq = power_bound(static_cast<Eigen::Index>(p) * (p - 1), [this](const Vector& v, Vector& out) {
            out = D->apply_transpose(D->apply(v));
        });
    }

    int num_blocks() const { return D ? D->num_blocks() : p * (p - 1) / 2; }

    // 1/2 sum_i ||X^i - X^{\i} beta^i||^2 via the Gram identity.
    double quad_value(const Vector& beta_vec) const { return 0.5 * residual_sq(beta_vec); }

    double residual_sq(const Vector& beta_vec) const {
        double total = 0.0;
        for (int i = 0; i < p; ++i) {
            const auto bi = beta_vec.segment(static_cast<Eigen::Index>(i) * (p - 1), p - 1);
            total += bi.dot(gram_sub[static_cast<std::size_t>(i)] * bi) -
                     2.0 * bi.dot(gram_col[static_cast<std::size_t>(i)]) + gram_diag(i);
        }
        return std::max(total, 0.0);
    }

    double residual_dot_y(const Vector& beta_vec) const {
        double total = 0.0;
        for (int i = 0; i < p; ++i) {
            const auto bi = beta_vec.segment(static_cast<Eigen::Index>(i) * (p - 1), p - 1);
            total += bi.dot(gram_col[static_cast<std::size_t>(i)]) - gram_diag(i);
        }
        return total;
    }

    void quad_gradient(const Vector& beta_vec, Vector& out) const {
        for (int i = 0; i < p; ++i)
            out.segment(static_cast<Eigen::Index>(i) * (p - 1), p - 1) =
                gram_sub[static_cast<std::size_t>(i)] * beta_vec.segment(static_cast<Eigen::Index>(i) * (p - 1), p - 1) -
                gram_col[static_cast<std::size_t>(i)];
    }

    // Original (unsmoothed) objective.
    double objective(const Vector& beta_vec, double lambda1, double lambda2) const {
        double value = quad_value(beta_vec) + lambda1 * beta_vec.lpNorm<1>();
        if (lambda2 > 0) value += lambda2 * fused_value(beta_vec, *D);
        return value;
    }

    // mu-smoothed objective: the fused term is smoothed with lambda2 folded
    // into the operator, so the smoothing error is bounded by mu * blocks / 2.
    double smoothed_objective(const Vector& beta_vec, double lambda1, double lambda2, double mu) const {
        double value = quad_value(beta_vec) + lambda1 * beta_vec.lpNorm<1>();
        if (lambda2 > 0) {
            const Vector z = lambda2 * D->apply(beta_vec);
            const int block = D->block_size();
            for (int b = 0; b < D->num_blocks(); ++b)
                value += huber_block(z.segment(static_cast<Eigen::Index>(b) * block, block).norm(), mu);
        }
        return value;
    }

    // Duality gap of the mu-smoothed problem (see objective.hpp for the
    // construction); Gram-based so it costs one gradient pass.
    double smoothed_gap(const Vector& beta_vec, double lambda1, double lambda2, double mu) const {
        GapTerms t;
        t.residual_sq = residual_sq(beta_vec);
        t.residual_dot_y = residual_dot_y(beta_vec);
        Vector grad(beta_vec.size());
        quad_gradient(beta_vec, grad);
        double smooth_pen = 0.0;
        double alpha_sq = 0.0;
        if (lambda2 > 0) {
            const Vector z = lambda2 * D->apply(beta_vec);
            const Vector alpha = smoothed_dual_point(z, D->num_blocks(), D->block_size(), mu);
            grad += lambda2 * D->apply_transpose(alpha);
            alpha_sq = alpha.squaredNorm();
            smooth_pen = alpha.dot(z) - 0.5 * mu * alpha_sq;
        }
        t.grad_inf = grad.lpNorm<Eigen::Infinity>();
        t.alpha_sq = mu * alpha_sq;
        t.primal = 0.5 * t.residual_sq + lambda1 * beta_vec.lpNorm<1>() + smooth_pen;
        return gap_from_terms(t, lambda1);
    }

    double lipschitz(double lambda2, double mu) const {
        double lip = lip_quad;
        if (lambda2 > 0) lip += lambda2 * lambda2 * norm_d_sq / mu;
        return std::max(lip, 1e-12);
    }
};

struct FistaResult {
    long iterations = 0;
    bool converged = false;
    double gap = std::numeric_limits<double>::infinity();
    std::vector<double> trace;  // smoothed objective per iteration
};

// FISTA with adaptive restart on objective increase; terminates on the
// smoothed-problem duality gap.
inline FistaResult fista(const Workspace& ws, Vector& x, double lambda1, double lambda2, double mu,
                         double inner_eps, long max_inner, double step_safety = 1.0, bool keep_trace = true) {
    const double lip = ws.lipschitz(lambda2, mu);
    const double step = step_safety / lip;
    const Eigen::Index dim = x.size();
    Vector y = x;
    Vector grad(dim);
    Vector x_new(dim);
    double t = 1.0;
    double fx = ws.smoothed_objective(x, lambda1, lambda2, mu);
    FistaResult res;
    if (keep_trace) res.trace.reserve(static_cast<std::size_t>(std::min<long>(max_inner, 4096)));

    auto smooth_grad_at = [&](const Vector& point, Vector& out) {
        ws.quad_gradient(point, out);
        if (lambda2 > 0) {
            const Vector z = lambda2 * ws.D->apply(point);
            out += lambda2 * ws.D->apply_transpose(smoothed_dual_point(z, ws.D->num_blocks(), ws.D->block_size(), mu));
        }
    };

    for (long it = 0; it < max_inner; ++it) {
        smooth_grad_at(y, grad);
        x_new = prox_l1(y - step * grad, lambda1 * step);
        double f_new = ws.smoothed_objective(x_new, lambda1, lambda2, mu);
        // slack keeps float-level jitter from resetting the momentum every step
        if (f_new > fx + 1e-12 * std::max(1.0, std::abs(fx))) {
            // restart: plain proximal step from x is guaranteed non-increasing
            smooth_grad_at(x, grad);
            x_new = prox_l1(x - step * grad, lambda1 * step);
            f_new = ws.smoothed_objective(x_new, lambda1, lambda2, mu);
            t = 1.0;
        }
        if (!std::isfinite(f_new))
            throw NumericalError("FISTA produced a non-finite objective (step size too large)");
        const double t_new = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        const double shift = (x_new - x).lpNorm<Eigen::Infinity>();
        y = x_new + ((t - 1.0) / t_new) * (x_new - x);
        x = x_new;
        t = t_new;
        fx = f_new;
        ++res.iterations;
        if (keep_trace) res.trace.push_back(fx);

        const bool stalled = shift <= 1e-15 * std::max(1.0, x.lpNorm<Eigen::Infinity>());
        if (it % 10 == 9 || it == max_inner - 1 || stalled) {
            res.gap = ws.smoothed_gap(x, lambda1, lambda2, mu);
            if (res.gap <= inner_eps) {
                res.converged = true;
                break;
            }
            if (stalled) break;
        }
    }
    if (res.gap == std::numeric_limits<double>::infinity())
        res.gap = ws.smoothed_gap(x, lambda1, lambda2, mu);
    return res;
}

// CONESTA continuation loop on the workspace; returns the best-objective
// iterate seen (never worse than the start) with a certified gap bound.
inline std::pair<Vector, SolveDiagnostics> conesta(const Workspace& ws, const Hyperparameters& hp,
                                                   const SolverConfig& cfg, const Vector& beta0) {
    cfg.validate();
    hp.validate(ws.p);
    const double lambda1 = hp.lambda1;
    const double lambda2 = hp.lambda2;
    const int blocks = ws.num_blocks();

    SolveDiagnostics diag;
    Vector beta = beta0;
    double objective_start = ws.objective(beta, lambda1, lambda2);
    diag.objective_trace.push_back(objective_start);

    Vector best_beta = beta;
    double best_obj = objective_start;
    // J(beta0) - J* <= J(beta0) because the objective is nonnegative.
    double best_gap = objective_start;

    const double target = cfg.relative_gap ? cfg.eps_target * std::max(1.0, objective_start) : cfg.eps_target;

    auto original_gap = [&](const Vector& b, double mu) {
        double gap = ws.smoothed_gap(b, lambda1, lambda2, mu);
        if (lambda2 > 0) gap += 0.5 * mu * static_cast<double>(blocks);
        return gap;
    };

    // Certificate transfer: any gap computed at an iterate no better than the
    // best one also bounds the best iterate's suboptimality.
    auto absorb = [&](double gap_here, double obj_here) {
        best_gap = std::min(best_gap, std::max(0.0, gap_here - (obj_here - best_obj)));
    };

    const double mu_probe = std::max(cfg.mu_floor, target / (2.0 * static_cast<double>(blocks)));
    double gap = original_gap(beta, mu_probe);
    absorb(gap, objective_start);

    if (best_gap > target) {
        for (int outer = 0; outer < cfg.max_outer; ++outer) {
            const double eps_k = cfg.continuation_factor * gap;
            const double mu_k = std::max(cfg.mu_floor, eps_k / (2.0 * static_cast<double>(blocks)));
            diag.mu_trace.push_back(mu_k);
            const FistaResult inner =
                fista(ws, beta, lambda1, lambda2, mu_k, 0.5 * eps_k, cfg.max_inner, cfg.step_safety, false);
            diag.iterations += inner.iterations;

            const double obj = ws.objective(beta, lambda1, lambda2);
            diag.objective_trace.push_back(obj);
            gap = original_gap(beta, mu_k);
            if (obj < best_obj) {
                // a smaller objective is also covered by the previous certificate
                best_gap = std::min(best_gap, gap);
                best_obj = obj;
                best_beta = beta;
            } else {
                absorb(gap, obj);
            }
            if (best_gap <= target) break;
        }
    }

    diag.final_duality_gap = best_gap;
    diag.converged = best_gap <= target;
    return {best_beta, diag};
}

}  // namespace detail

// L >= lambda_max(blockdiag((X^{\i})^T X^{\i})) + lambda2^2 ||D||_2^2 / mu.
inline double lipschitz_bound(const DataMatrix& X, const DifferenceOperator& D, double lambda2, double mu) {
    if (mu <= 0) throw ConfigError("lipschitz_bound: mu must be positive");
    detail::Workspace ws(X, std::nullopt, false);
    double norm_d_sq = detail::power_bound(D.matrix().cols(), [&D](const Vector& v, Vector& out) {
        out = D.apply_transpose(D.apply(v));
    });
    return ws.lip_quad + lambda2 * lambda2 * norm_d_sq / mu;
}

struct FistaDiagnostics {
    std::vector<double> objective_trace;  // smoothed objective per iteration
    long iterations = 0;
    double gap = 0.0;  // smoothed-problem duality gap at exit
    bool converged = false;
};

// Minimize the mu-smoothed objective at fixed (lambda1, lambda2, mu).
inline std::pair<RegressionMatrix, FistaDiagnostics> fista_solve(const RegressionMatrix& beta0, const DataMatrix& X,
                                                                 const Hyperparameters& hp, double mu,
                                                                 double inner_eps, long max_inner) {
    if (mu <= 0) throw ConfigError("fista_solve: mu must be positive");
    beta0.validate();
    hp.validate(beta0.p);
    detail::Workspace ws(X, hp.weights, hp.lambda2 > 0);
    Vector beta = vectorize(beta0);
    const detail::FistaResult res = detail::fista(ws, beta, hp.lambda1, hp.lambda2, mu, inner_eps, max_inner);
    FistaDiagnostics diag;
    diag.objective_trace = res.trace;
    diag.iterations = res.iterations;
    diag.gap = res.gap;
    diag.converged = res.converged;
    return {devectorize(beta, ws.p), diag};
}

// Solve min J for fixed (lambda1, lambda2) by continuation of Nesterov
// smoothing, stopping on a certified duality gap for the original problem.
inline std::pair<RegressionMatrix, SolveDiagnostics> conesta_solve(const DataMatrix& X, const Hyperparameters& hp,
                                                                   const SolverConfig& cfg = {},
                                                                   const std::optional<RegressionMatrix>& beta0 = std::nullopt) {
    detail::Workspace ws(X, hp.weights, hp.lambda2 > 0);
    Vector start;
    if (beta0) {
        beta0->validate();
        if (beta0->p != ws.p) throw DataError("beta0 dimension mismatch");
        start = vectorize(*beta0);
    } else {
        start = Vector::Zero(static_cast<Eigen::Index>(ws.p) * (ws.p - 1));
    }
    auto [beta_vec, diag] = detail::conesta(ws, hp, cfg, start);
    return {devectorize(beta_vec, ws.p), diag};
}

}  // namespace mglasso
