#include <catch2/catch_amalgamated.hpp>

#include "mglasso/mglasso.hpp"
#include "oracles.hpp"

using namespace mglasso;

TEST_CASE("DifferenceOperator: block count and pair list") {
    const DifferenceOperator D(5);
    CHECK(D.num_blocks() == 10);
    CHECK(D.block_size() == 4);
    CHECK(D.rows() == 40);
    CHECK(D.pair(0) == std::pair<int, int>{0, 1});
    CHECK(D.pair(9) == std::pair<int, int>{3, 4});
}

TEST_CASE("DifferenceOperator: apply matches aligned_difference blockwise") {
    rng::Engine eng = rng::make_engine(10);
    for (int trial = 0; trial < 20; ++trial) {
        const int p = 2 + static_cast<int>(rng::uniform_below(eng, 6));
        Matrix w = Matrix::Zero(p, p);
        for (int i = 0; i < p; ++i)
            for (int j = i + 1; j < p; ++j) w(i, j) = w(j, i) = rng::uniform01(eng) + 0.1;
        const DifferenceOperator D(p, w);
        const RegressionMatrix beta = oracles::random_beta(eng, p);
        const Vector z = D.apply(vectorize(beta));
        int b = 0;
        for (int i = 0; i < p; ++i) {
            for (int j = i + 1; j < p; ++j, ++b) {
                const Vector expected = w(i, j) * aligned_difference(beta, i, j);
                const Vector got = z.segment(static_cast<Eigen::Index>(b) * (p - 1), p - 1);
                CHECK((got - expected).lpNorm<Eigen::Infinity>() < 1e-14);
            }
        }
    }
}

TEST_CASE("DifferenceOperator: linearity") {
    rng::Engine eng = rng::make_engine(11);
    const int p = 5;
    const DifferenceOperator D(p);
    for (int trial = 0; trial < 20; ++trial) {
        const Vector x = oracles::random_matrix(eng, p * (p - 1), 1);
        const Vector y = oracles::random_matrix(eng, p * (p - 1), 1);
        const double a = rng::uniform01(eng) * 4 - 2;
        const double b = rng::uniform01(eng) * 4 - 2;
        const Vector lhs = D.apply(a * x + b * y);
        const Vector rhs = a * D.apply(x) + b * D.apply(y);
        CHECK((lhs - rhs).lpNorm<Eigen::Infinity>() < 1e-12);
    }
}

TEST_CASE("DifferenceOperator: each block row has exactly +w and -w") {
    const int p = 4;
    Matrix w = Matrix::Zero(p, p);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j)
            if (i != j) w(i, j) = 0.5 + 0.25 * std::min(i, j);
    const DifferenceOperator D(p, w);
    const Matrix dense = Matrix(D.matrix());
    for (int row = 0; row < dense.rows(); ++row) {
        const int b = row / (p - 1);
        const auto [i, j] = D.pair(b);
        int pos = 0, neg = 0, other = 0;
        for (int col = 0; col < dense.cols(); ++col) {
            if (dense(row, col) == w(i, j)) ++pos;
            else if (dense(row, col) == -w(i, j)) ++neg;
            else if (dense(row, col) != 0.0) ++other;
        }
        CHECK(pos == 1);
        CHECK(neg == 1);
        CHECK(other == 0);
    }
}

TEST_CASE("objective_value: penalties vanish at beta = 0") {
    rng::Engine eng = rng::make_engine(12);
    const DataMatrix X = oracles::random_data(eng, 10, 4);
    Hyperparameters hp;
    hp.lambda1 = 0.7;
    hp.lambda2 = 1.3;
    const double value = objective_value(RegressionMatrix::zero(4), X, hp);
    CHECK(value == Catch::Approx(0.5 * X.values.squaredNorm()).epsilon(1e-12));
}

TEST_CASE("objective_value: lambda2 = 0 equals the sum of per-column lasso objectives") {
    rng::Engine eng = rng::make_engine(13);
    const DataMatrix X = oracles::random_data(eng, 12, 5);
    const RegressionMatrix beta = oracles::random_beta(eng, 5, 0.3);
    Hyperparameters hp;
    hp.lambda1 = 0.21;
    double per_column = 0.0;
    for (int i = 0; i < 5; ++i) {
        Matrix design(12, 4);
        for (int s = 0; s < 4; ++s) design.col(s) = X.values.col(RegressionMatrix::slot_to_var(i, s));
        const Vector bi = beta.coeffs.row(i).transpose();
        per_column += 0.5 * (X.values.col(i) - design * bi).squaredNorm() + hp.lambda1 * bi.cwiseAbs().sum();
    }
    CHECK(objective_value(beta, X, hp) == Catch::Approx(per_column).epsilon(1e-12));
}

TEST_CASE("objective_value: 3x3 ones matrix, frozen value and independent evaluator") {
    DataMatrix X;
    X.values = Matrix::Ones(3, 3);
    RegressionMatrix beta = RegressionMatrix::zero(3);
    beta.coeffs.setConstant(0.1);
    Hyperparameters hp;
    hp.lambda1 = 0.5;
    hp.lambda2 = 7.0;  // all aligned differences are zero here
    // residual per column: 1 - 0.2 = 0.8, squared norm 3 * 0.64 = 1.92, summed over 3 columns
    const double frozen = 0.5 * 3 * 1.92 + 0.5 * (3 * 0.2);
    CHECK(objective_value(beta, X, hp) == Catch::Approx(frozen).epsilon(1e-13));
    CHECK(objective_value(beta, X, hp) ==
          Catch::Approx(oracles::objective_by_hand(beta.coeffs, X.values, hp.lambda1, hp.lambda2)).epsilon(1e-13));
}

TEST_CASE("objective_value: matches the straight-line evaluator on random instances") {
    rng::Engine eng = rng::make_engine(14);
    for (int trial = 0; trial < 20; ++trial) {
        const int p = 2 + static_cast<int>(rng::uniform_below(eng, 5));
        const int n = p + 1 + static_cast<int>(rng::uniform_below(eng, 8));
        const DataMatrix X = oracles::random_data(eng, n, p);
        const RegressionMatrix beta = oracles::random_beta(eng, p, 0.5);
        Hyperparameters hp;
        hp.lambda1 = rng::uniform01(eng);
        hp.lambda2 = rng::uniform01(eng);
        CHECK(objective_value(beta, X, hp) ==
              Catch::Approx(oracles::objective_by_hand(beta.coeffs, X.values, hp.lambda1, hp.lambda2)).epsilon(1e-11));
    }
}

TEST_CASE("objective_value: lambda1 = lambda2 = 0 is half the residual sum of squares") {
    rng::Engine eng = rng::make_engine(15);
    const DataMatrix X = oracles::random_data(eng, 9, 4);
    const RegressionMatrix beta = oracles::random_beta(eng, 4, 0.2);
    double rss = 0.0;
    for (int i = 0; i < 4; ++i) rss += detail::nodewise_residual(beta, X, i).squaredNorm();
    CHECK(objective_value(beta, X, {}) == Catch::Approx(0.5 * rss).epsilon(1e-12));
}

TEST_CASE("objective_value: dimension mismatch raises") {
    rng::Engine eng = rng::make_engine(16);
    const DataMatrix X = oracles::random_data(eng, 8, 4);
    CHECK_THROWS_AS(objective_value(RegressionMatrix::zero(5), X, {}), DataError);
}

TEST_CASE("smooth_gradient: explicit value at beta = 0") {
    rng::Engine eng = rng::make_engine(17);
    const DataMatrix X = oracles::random_data(eng, 10, 4);
    const RegressionMatrix grad = smooth_gradient(RegressionMatrix::zero(4), X);
    for (int i = 0; i < 4; ++i)
        for (int s = 0; s < 3; ++s) {
            const int j = RegressionMatrix::slot_to_var(i, s);
            CHECK(grad.coeffs(i, s) ==
                  Catch::Approx(-X.values.col(j).dot(X.values.col(i))).margin(1e-14));
        }
}

TEST_CASE("smooth_gradient: vanishes at the least-squares solution") {
    rng::Engine eng = rng::make_engine(18);
    const DataMatrix X = oracles::random_data(eng, 20, 5);
    const RegressionMatrix beta = init_beta(X);
    const RegressionMatrix grad = smooth_gradient(beta, X);
    CHECK(grad.coeffs.cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("smooth_gradient: matches central finite differences") {
    rng::Engine eng = rng::make_engine(19);
    const int p = 5, n = 8;
    const DataMatrix X = oracles::random_data(eng, n, p);
    const RegressionMatrix beta = oracles::random_beta(eng, p, 0.4);
    const Vector beta_vec = vectorize(beta);
    const auto quad = [&](const Vector& v) {
        double total = 0.0;
        const RegressionMatrix b = devectorize(v, p);
        for (int i = 0; i < p; ++i) total += detail::nodewise_residual(b, X, i).squaredNorm();
        return 0.5 * total;
    };
    const Vector fd = oracles::finite_difference_gradient(quad, beta_vec, 1e-5);
    const Vector grad = vectorize(smooth_gradient(beta, X));
    CHECK((grad - fd).norm() / std::max(1.0, fd.norm()) <= 1e-6);
}

TEST_CASE("prox_l1: closed-form cases") {
    Vector v(3);
    v << 3.0, -0.5, 0.0;
    const Vector out = prox_l1(v, 1.0);
    CHECK(out(0) == 2.0);
    CHECK(out(1) == 0.0);
    CHECK(out(2) == 0.0);
    CHECK((prox_l1(v, 0.0) - v).norm() == 0.0);
}

TEST_CASE("prox_l1: non-expansiveness") {
    rng::Engine eng = rng::make_engine(20);
    for (int trial = 0; trial < 50; ++trial) {
        const Vector u = oracles::random_matrix(eng, 12, 1);
        const Vector v = oracles::random_matrix(eng, 12, 1);
        const double t = rng::uniform01(eng);
        CHECK((prox_l1(u, t) - prox_l1(v, t)).norm() <= (u - v).norm() + 1e-14);
    }
}

TEST_CASE("smoothed_fused_value: zero at zero, analytic branches") {
    const DifferenceOperator D(2);  // single block of size 1
    RegressionMatrix beta = RegressionMatrix::zero(2);
    CHECK(smoothed_fused_value(vectorize(beta), D, 1.0) == 0.0);

    beta.coeffs(0, 0) = 3.0;  // z = beta^1_2 - beta^2_1 = 3
    CHECK(smoothed_fused_value(vectorize(beta), D, 1.0) == Catch::Approx(2.5));

    beta.coeffs(0, 0) = 0.5;
    CHECK(smoothed_fused_value(vectorize(beta), D, 1.0) == Catch::Approx(0.125));

    CHECK_THROWS_AS(smoothed_fused_value(vectorize(beta), D, 0.0), ConfigError);
}

TEST_CASE("smoothed_fused_value: monotone nonincreasing in mu, converges to the exact penalty") {
    rng::Engine eng = rng::make_engine(21);
    for (int trial = 0; trial < 20; ++trial) {
        const int p = 2 + static_cast<int>(rng::uniform_below(eng, 5));
        const DifferenceOperator D(p);
        const Vector beta_vec = vectorize(oracles::random_beta(eng, p));
        const double exact = fused_value(beta_vec, D);
        double previous = std::numeric_limits<double>::infinity();
        for (double mu : {0.001, 0.01, 0.1, 1.0}) {  // nonincreasing in mu
            const double smoothed = smoothed_fused_value(beta_vec, D, mu);
            CHECK(smoothed <= previous + 1e-12);
            CHECK(smoothed <= exact + 1e-12);
            CHECK(exact - smoothed <= 0.5 * mu * D.num_blocks() + 1e-12);
            previous = smoothed;
        }
        CHECK(exact - smoothed_fused_value(beta_vec, D, 1e-9) <= 1e-6);
    }
}

TEST_CASE("smoothed_fused_gradient: zero at zero, finite differences elsewhere") {
    const DifferenceOperator D4(4);
    CHECK(smoothed_fused_gradient(Vector::Zero(12), D4, 0.5).norm() == 0.0);

    rng::Engine eng = rng::make_engine(22);
    const int p = 4;
    const DifferenceOperator D(p);
    for (int trial = 0; trial < 20; ++trial) {
        const Vector beta_vec = vectorize(oracles::random_beta(eng, p));
        const double mu = 0.05 + rng::uniform01(eng);
        const auto f = [&](const Vector& v) { return smoothed_fused_value(v, D, mu); };
        const Vector fd = oracles::finite_difference_gradient(f, beta_vec, 1e-6);
        const Vector grad = smoothed_fused_gradient(beta_vec, D, mu);
        CHECK((grad - fd).norm() / std::max(1.0, fd.norm()) <= 1e-5);
    }
}

TEST_CASE("duality_gap: nonnegative everywhere, positive away from the optimum") {
    rng::Engine eng = rng::make_engine(23);
    const DataMatrix X = oracles::random_data(eng, 10, 4);
    Hyperparameters hp;
    hp.lambda1 = 0.05;
    hp.lambda2 = 0.02;
    for (int trial = 0; trial < 20; ++trial) {
        const RegressionMatrix beta = oracles::random_beta(eng, 4, 0.5);
        CHECK(duality_gap(beta, X, hp, 1e-3) >= 0.0);
    }
    CHECK(duality_gap(RegressionMatrix::zero(4), X, hp, 1e-3) > 0.0);
}

TEST_CASE("duality_gap: near zero at a machine-precision solve") {
    rng::Engine eng = rng::make_engine(24);
    const DataMatrix X = oracles::random_data(eng, 6, 3);
    Hyperparameters hp;
    hp.lambda1 = 0.08;
    hp.lambda2 = 0.03;
    SolverConfig cfg;
    cfg.eps_target = 1e-8;
    cfg.relative_gap = false;
    cfg.max_outer = 80;
    auto [beta, diag] = conesta_solve(X, hp, cfg);
    REQUIRE(diag.converged);
    const double mu = diag.mu_trace.empty() ? 1e-9 : diag.mu_trace.back();
    CHECK(duality_gap(beta, X, hp, mu) <= 1e-6);
}

TEST_CASE("gram-based smoothed objective and gap agree with the direct route") {
    rng::Engine eng = rng::make_engine(25);
    const DataMatrix X = oracles::random_data(eng, 9, 5);
    Hyperparameters hp;
    hp.lambda1 = 0.11;
    hp.lambda2 = 0.07;
    detail::Workspace ws(X, std::nullopt, true);
    for (int trial = 0; trial < 10; ++trial) {
        const RegressionMatrix beta = oracles::random_beta(eng, 5, 0.4);
        const Vector beta_vec = vectorize(beta);
        const double mu = 0.01 + rng::uniform01(eng);
        CHECK(ws.objective(beta_vec, hp.lambda1, hp.lambda2) ==
              Catch::Approx(objective_value(beta, X, hp)).epsilon(1e-9));
        CHECK(ws.smoothed_gap(beta_vec, hp.lambda1, hp.lambda2, mu) ==
              Catch::Approx(duality_gap(beta, X, hp, mu)).epsilon(1e-7).margin(1e-10));
    }
}
