#include <doctest.h>

#include <cmath>
#include <random>

#include <lore/metrics.hpp>
#include <lore/objective.hpp>
#include <lore/solver.hpp>

#include "test_utils.hpp"

using lore::Embedding;
using lore::Matrix;
using lore::SolverConfig;
using lore::TripletSet;
using lore::Vector;

TEST_SUITE_BEGIN("solver");

TEST_CASE("init is deterministic per seed") {
    SolverConfig cfg;
    cfg.seed = 42;
    const Embedding a = lore::init_embedding(20, 7, cfg);
    const Embedding b = lore::init_embedding(20, 7, cfg);
    CHECK(a.matrix == b.matrix);

    cfg.seed = 43;
    const Embedding c = lore::init_embedding(20, 7, cfg);
    CHECK((a.matrix - c.matrix).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("init matches the requested shape and variance") {
    SolverConfig cfg;
    const int n = 50, d = 15;
    double pooled_ss = 0.0;
    std::size_t count = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        cfg.seed = seed;
        const Embedding z = lore::init_embedding(n, d, cfg);
        REQUIRE(z.matrix.rows() == n);
        REQUIRE(z.matrix.cols() == d);
        const double mean = z.matrix.mean();
        pooled_ss += (z.matrix.array() - mean).square().sum();
        count += static_cast<std::size_t>(n) * d;
    }
    const double pooled_var = pooled_ss / static_cast<double>(count - 1);
    // Var(s^2) ~= 2 sigma^4 / (m - 1) for Gaussian samples
    const double se = std::sqrt(2.0 * 5.0 * 5.0 / static_cast<double>(count - 1));
    CHECK(std::abs(pooled_var - 5.0) <= 3.0 * se);
    CHECK(pooled_var > 3.5);
    CHECK(pooled_var < 6.5);
}

TEST_CASE("svt threshold follows the reweighting formula") {
    // one dominant direction: S = 6, previous sigma = 4
    // weight = (1 * 0.5 / 0.1) * 4^-0.5 = 2.5, kept value 3.5
    SolverConfig cfg;
    cfg.lambda = 1.0;
    cfg.p = 0.5;
    cfg.mu = 0.1;
    Matrix z = Matrix::Zero(4, 3);
    z(0, 0) = 6.0;
    const Matrix grad = Matrix::Zero(4, 3);
    Vector sigma_prev = Vector::Zero(3);
    sigma_prev[0] = 4.0;

    const auto [next, rec] = lore::svt_step(Embedding{z}, grad, sigma_prev, cfg);
    CHECK(rec.shifted_singulars[0] == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(rec.weights[0] == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(rec.kept_count == 1);
    Eigen::JacobiSVD<Matrix> svd(next.matrix);
    CHECK(svd.singularValues()[0] == doctest::Approx(3.5).epsilon(1e-10));
}

TEST_CASE("svt zeroes a direction whose threshold exceeds it") {
    // S = 1, previous sigma = 0.04: weight 5 * 5 = 25, value dies
    SolverConfig cfg;
    cfg.lambda = 1.0;
    cfg.p = 0.5;
    cfg.mu = 0.1;
    Matrix z = Matrix::Zero(4, 3);
    z(0, 0) = 1.0;
    Vector sigma_prev = Vector::Zero(3);
    sigma_prev[0] = 0.04;

    const auto [next, rec] =
        lore::svt_step(Embedding{z}, Matrix::Zero(4, 3), sigma_prev, cfg);
    CHECK(rec.weights[0] == doctest::Approx(25.0).epsilon(1e-12));
    CHECK(rec.kept_count == 0);
    CHECK(next.matrix.norm() == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("lambda zero reduces svt to the plain gradient step") {
    std::mt19937_64 rng(29);
    SolverConfig cfg;
    cfg.lambda = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix z = testutil::random_matrix(12, 5, rng);
        const Matrix grad = testutil::random_matrix(12, 5, rng);
        Eigen::JacobiSVD<Matrix> svd(z);
        const auto [next, rec] =
            lore::svt_step(Embedding{z}, grad, svd.singularValues(), cfg);
        const Matrix plain = z - (1.0 / cfg.mu) * grad;
        CHECK((next.matrix - plain).norm() / plain.norm() <= 1e-10);
    }
}

TEST_CASE("svt matches an independent eigen-route recomputation") {
    std::mt19937_64 rng(31);
    SolverConfig cfg;
    std::uniform_real_distribution<double> lambda_pick(0.0, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        cfg.lambda = trial % 7 == 0 ? 0.0 : lambda_pick(rng);
        cfg.p = trial % 2 == 0 ? 0.5 : 0.8;
        Matrix z = testutil::random_matrix(10, 6, rng);
        if (trial % 5 == 0) z.col(5).setZero();  // dead-direction edge case
        const Matrix grad = testutil::random_matrix(10, 6, rng, 0.1);
        Eigen::JacobiSVD<Matrix> svd(z);
        const Vector sigma_prev = svd.singularValues();

        const auto [next, rec] =
            lore::svt_step(Embedding{z}, grad, sigma_prev, cfg);
        const Matrix oracle = testutil::eig_route_svt(
            z - (1.0 / cfg.mu) * grad, sigma_prev, cfg.lambda, cfg.p, cfg.mu);
        const double denom = std::max(oracle.norm(), 1e-30);
        CHECK((next.matrix - oracle).norm() / denom <= 1e-10);
    }
}

TEST_CASE("empty triplet set shrinks the iterates toward zero") {
    SolverConfig cfg;
    cfg.lambda = 0.01;
    cfg.seed = 1;
    const auto fit = lore::fit_lore(TripletSet{{}, 12}, 12, 5, cfg);
    CHECK(lore::measured_rank(fit.embedding) == 0);
    // pure shrinkage: singular values only move down
    for (std::size_t k = 1; k + 1 < fit.objective_trace.size(); ++k) {
        CHECK(fit.objective_trace[k + 1] <= fit.objective_trace[k] + 1e-12);
    }
}

TEST_CASE("identical inputs give bit-identical fits") {
    std::mt19937_64 rng(37);
    const TripletSet ts = testutil::random_triplets(15, 120, rng);
    SolverConfig cfg;
    cfg.seed = 9;
    cfg.max_iters = 60;
    const auto a = lore::fit_lore(ts, 15, 6, cfg);
    const auto b = lore::fit_lore(ts, 15, 6, cfg);
    CHECK(a.embedding.matrix == b.embedding.matrix);
    CHECK(a.objective_trace == b.objective_trace);
    CHECK(a.iterate_delta_trace == b.iterate_delta_trace);
}

TEST_CASE("every iterate keeps the requested shape with finite entries") {
    std::mt19937_64 rng(41);
    const TripletSet ts = testutil::random_triplets(10, 60, rng);
    SolverConfig cfg;
    cfg.max_iters = 40;
    const auto fit = lore::fit_lore(ts, 10, 4, cfg);
    CHECK(fit.embedding.matrix.rows() == 10);
    CHECK(fit.embedding.matrix.cols() == 4);
    CHECK(fit.embedding.matrix.allFinite());
    CHECK(fit.iterations_run <= cfg.max_iters);
    if (fit.converged) {
        CHECK((std::abs(fit.objective_trace.back() -
                        fit.objective_trace[fit.objective_trace.size() - 2]) <
                   cfg.tol ||
               fit.iterate_delta_trace.back() < cfg.tol * std::sqrt(40.0)));
    }
}

TEST_CASE("a diverging configuration raises a finite-objective error") {
    // an extreme step size overflows the iterate scale within one update
    std::mt19937_64 rng(43);
    const TripletSet ts = testutil::random_triplets(12, 200, rng);
    SolverConfig cfg;
    cfg.mu = 1e-280;
    cfg.lambda = 0.0;
    cfg.max_iters = 10;
    CHECK_THROWS_AS(lore::fit_lore(ts, 12, 4, cfg), lore::NonFiniteObjective);
}

TEST_SUITE_END();
