#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "mglasso/mglasso.hpp"
#include "oracles.hpp"

using namespace mglasso;

namespace {

DataMatrix orthonormal_data(rng::Engine& eng, int n, int p) {
    const Matrix raw = oracles::random_matrix(eng, n, p);
    Eigen::HouseholderQR<Matrix> qr(raw);
    DataMatrix X;
    X.values = Matrix(qr.householderQ()) .leftCols(p);
    return X;
}

// per-column ordinary least squares through the normal equations
RegressionMatrix ols_oracle(const DataMatrix& X) {
    const int p = static_cast<int>(X.p());
    RegressionMatrix beta = RegressionMatrix::zero(p);
    for (int i = 0; i < p; ++i) {
        Matrix design(X.n(), p - 1);
        for (int s = 0; s < p - 1; ++s) design.col(s) = X.values.col(RegressionMatrix::slot_to_var(i, s));
        beta.coeffs.row(i) =
            (design.transpose() * design).ldlt().solve(design.transpose() * X.values.col(i)).transpose();
    }
    return beta;
}

}  // namespace

TEST_CASE("lipschitz_bound: orthonormal columns, lambda2 = 0") {
    rng::Engine eng = rng::make_engine(30);
    const DataMatrix X = orthonormal_data(eng, 20, 6);
    const DifferenceOperator D(6);
    const double bound = lipschitz_bound(X, D, 0.0, 1.0);
    CHECK(bound >= 1.0 - 1e-9);
    CHECK(bound <= 1.05);
}

TEST_CASE("lipschitz_bound: smoothing term scales as lambda2^2 / mu") {
    rng::Engine eng = rng::make_engine(31);
    const DataMatrix X = oracles::random_data(eng, 12, 5);
    const DifferenceOperator D(5);
    const double base = lipschitz_bound(X, D, 0.0, 1.0);
    const double term1 = lipschitz_bound(X, D, 1.0, 1.0) - base;
    CHECK(lipschitz_bound(X, D, 2.0, 1.0) - base == Catch::Approx(4.0 * term1).epsilon(1e-9));
    CHECK(lipschitz_bound(X, D, 1.0, 0.5) - base == Catch::Approx(2.0 * term1).epsilon(1e-9));
}

TEST_CASE("lipschitz_bound: upper-bounds the exact block eigenvalues") {
    rng::Engine eng = rng::make_engine(32);
    for (int trial = 0; trial < 10; ++trial) {
        const int p = 3 + static_cast<int>(rng::uniform_below(eng, 4));
        const DataMatrix X = oracles::random_data(eng, p + 4, p);
        double exact = 0.0;
        for (int i = 0; i < p; ++i) {
            Matrix design(X.n(), p - 1);
            for (int s = 0; s < p - 1; ++s) design.col(s) = X.values.col(RegressionMatrix::slot_to_var(i, s));
            Eigen::SelfAdjointEigenSolver<Matrix> es(design.transpose() * design, Eigen::EigenvaluesOnly);
            exact = std::max(exact, es.eigenvalues().maxCoeff());
        }
        const DifferenceOperator D(p);
        const double bound = lipschitz_bound(X, D, 0.0, 1.0);
        CHECK(bound >= exact - 1e-9);
        CHECK(bound <= 1.05 * exact + 1e-9);
    }
}

TEST_CASE("fista_solve: lambda1 = lambda2 = 0 converges to per-column OLS") {
    rng::Engine eng = rng::make_engine(33);
    const DataMatrix X = oracles::random_data(eng, 14, 4);
    auto [beta, diag] = fista_solve(RegressionMatrix::zero(4), X, {}, 1.0, 1e-12, 50000);
    const RegressionMatrix ols = ols_oracle(X);
    CHECK((beta.coeffs - ols.coeffs).cwiseAbs().maxCoeff() <= 1e-4);
}

TEST_CASE("fista_solve: huge lambda1 yields the zero solution") {
    rng::Engine eng = rng::make_engine(34);
    const DataMatrix X = oracles::random_data(eng, 10, 5);
    Hyperparameters hp;
    hp.lambda1 = 10.0 * lambda1_max(X);
    auto [beta, diag] = fista_solve(RegressionMatrix::zero(5), X, hp, 1.0, 1e-10, 1000);
    CHECK(beta.coeffs.cwiseAbs().maxCoeff() == 0.0);
    CHECK(diag.converged);
}

TEST_CASE("fista_solve: smoothed objective trace is nonincreasing with restart") {
    rng::Engine eng = rng::make_engine(35);
    const DataMatrix X = oracles::random_data(eng, 12, 5);
    Hyperparameters hp;
    hp.lambda1 = 0.05;
    hp.lambda2 = 0.1;
    auto [beta, diag] = fista_solve(RegressionMatrix::zero(5), X, hp, 0.01, 1e-12, 3000);
    REQUIRE(diag.objective_trace.size() > 10);
    for (std::size_t k = 1; k < diag.objective_trace.size(); ++k)
        CHECK(diag.objective_trace[k] <=
              diag.objective_trace[k - 1] + 1e-10 * std::max(1.0, std::abs(diag.objective_trace[k - 1])));
}

TEST_CASE("neighborhood_selection: soft-threshold closed form on an orthonormal design") {
    rng::Engine eng = rng::make_engine(36);
    const int n = 30, p = 5;
    DataMatrix X = orthonormal_data(eng, n, p - 1);
    Vector w(p - 1);
    w << 0.8, -0.4, 0.05, 0.6;
    Vector extra = oracles::random_matrix(eng, n, 1);
    extra -= X.values * (X.values.transpose() * extra);  // orthogonal remainder
    DataMatrix full;
    full.values.resize(n, p);
    full.values.leftCols(p - 1) = X.values;
    full.values.col(p - 1) = X.values * w + 0.1 * extra;
    const double lambda = 0.3;
    const RegressionMatrix beta = neighborhood_selection(full, lambda);
    for (int s = 0; s < p - 1; ++s) {
        const double target = full.values.col(s).dot(full.values.col(p - 1));
        const double expected = std::abs(target) > lambda ? (target > 0 ? target - lambda : target + lambda) : 0.0;
        CHECK(beta.coeffs(p - 1, s) == Catch::Approx(expected).margin(1e-9));
    }
}

TEST_CASE("neighborhood_selection: zero above lambda1_max") {
    rng::Engine eng = rng::make_engine(37);
    const DataMatrix X = oracles::random_data(eng, 15, 6);
    const RegressionMatrix beta = neighborhood_selection(X, lambda1_max(X) * 1.0000001);
    CHECK(beta.coeffs.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("conesta_solve: lambda2 = 0 matches the coordinate-descent lasso") {
    rng::Engine eng = rng::make_engine(38);
    const DataMatrix X = oracles::random_data(eng, 10, 3);
    Hyperparameters hp;
    hp.lambda1 = 0.1;
    SolverConfig cfg;
    cfg.eps_target = 1e-9;
    cfg.relative_gap = false;
    auto [beta, diag] = conesta_solve(X, hp, cfg);
    const RegressionMatrix cd = neighborhood_selection(X, hp.lambda1);
    CHECK((beta.coeffs - cd.coeffs).cwiseAbs().maxCoeff() <= 1e-4);
    CHECK(diag.converged);
}

TEST_CASE("conesta_solve: very large lambda2 fuses all rows") {
    rng::Engine eng = rng::make_engine(39);
    const DataMatrix X = oracles::random_data(eng, 20, 6);
    Hyperparameters hp;
    hp.lambda1 = 0.01;
    hp.lambda2 = 1e4 * lambda2_start_heuristic(X);
    SolverConfig cfg;
    cfg.eps_target = 1e-8;
    auto [beta, diag] = conesta_solve(X, hp, cfg);
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) CHECK(aligned_difference(beta, i, j).norm() <= 1e-3);
}

TEST_CASE("conesta_solve: warm start from the solution converges in at most 2 outer steps") {
    rng::Engine eng = rng::make_engine(40);
    const DataMatrix X = oracles::random_data(eng, 12, 4);
    Hyperparameters hp;
    hp.lambda1 = 0.07;
    hp.lambda2 = 0.05;
    SolverConfig cfg;
    cfg.eps_target = 1e-7;
    cfg.relative_gap = false;
    auto [beta, diag] = conesta_solve(X, hp, cfg);
    REQUIRE(diag.converged);
    auto [beta2, diag2] = conesta_solve(X, hp, cfg, beta);
    CHECK(diag2.converged);
    CHECK(diag2.mu_trace.size() <= 2);
    CHECK((beta2.coeffs - beta.coeffs).cwiseAbs().maxCoeff() <= 1e-5);
}

TEST_CASE("conesta_solve: never worse than the start point") {
    rng::Engine eng = rng::make_engine(41);
    for (int trial = 0; trial < 10; ++trial) {
        const int p = 3 + static_cast<int>(rng::uniform_below(eng, 3));
        const DataMatrix X = oracles::random_data(eng, p + 5, p);
        Hyperparameters hp;
        hp.lambda1 = 0.3 * rng::uniform01(eng);
        hp.lambda2 = 0.2 * rng::uniform01(eng);
        const RegressionMatrix start = oracles::random_beta(eng, p, 0.5);
        SolverConfig cfg;
        cfg.max_outer = 4;  // even a truncated run must not regress
        auto [beta, diag] = conesta_solve(X, hp, cfg, start);
        CHECK(objective_value(beta, X, hp) <= objective_value(start, X, hp) + 1e-12);
    }
}

TEST_CASE("conesta_solve: the reported gap certifies suboptimality on small instances") {
    rng::Engine eng = rng::make_engine(42);
    for (int trial = 0; trial < 5; ++trial) {
        const int p = 3 + static_cast<int>(rng::uniform_below(eng, 2));
        const DataMatrix X = oracles::random_data(eng, 8, p);
        Hyperparameters hp;
        // lambda2 kept well below lambda1: the gap estimate has a double-precision
        // floor growing with lambda2^2 / lambda1 once iterates stop moving
        hp.lambda1 = 0.05 + 0.1 * rng::uniform01(eng);
        hp.lambda2 = 0.008 + 0.012 * rng::uniform01(eng);
        SolverConfig cfg;
        cfg.eps_target = 1e-8;
        cfg.relative_gap = false;
        cfg.max_outer = 80;
        cfg.max_inner = 200000;
        auto [beta, diag] = conesta_solve(X, hp, cfg);
        REQUIRE(diag.converged);

        SolverConfig longrun;
        longrun.eps_target = 1e-12;
        longrun.relative_gap = false;
        longrun.max_inner = 1000000;
        longrun.max_outer = 100;
        longrun.mu_floor = 1e-14;
        auto [reference, ref_diag] = conesta_solve(X, hp, longrun, beta);
        CHECK(objective_value(beta, X, hp) - objective_value(reference, X, hp) <=
              diag.final_duality_gap + 1e-10);
    }
}

TEST_CASE("conesta_solve: deterministic, bit-identical reruns") {
    rng::Engine eng = rng::make_engine(43);
    const DataMatrix X = oracles::random_data(eng, 12, 5);
    Hyperparameters hp;
    hp.lambda1 = 0.09;
    hp.lambda2 = 0.04;
    auto [beta1, diag1] = conesta_solve(X, hp);
    auto [beta2, diag2] = conesta_solve(X, hp);
    CHECK(beta1.coeffs == beta2.coeffs);
    CHECK(diag1.final_duality_gap == diag2.final_duality_gap);
    CHECK(diag1.objective_trace == diag2.objective_trace);
    CHECK(diag1.mu_trace == diag2.mu_trace);
}

TEST_CASE("SolverConfig validation") {
    SolverConfig cfg;
    cfg.eps_target = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = {};
    cfg.continuation_factor = 1.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = {};
    cfg.step_safety = 1.5;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}
