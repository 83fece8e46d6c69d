#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "pathbudget/correlation.hpp"
#include "pathbudget/grid.hpp"
#include "pathbudget/paths.hpp"
#include "test_support.hpp"

using pathbudget::cholesky_factor;
using pathbudget::correlate;
using pathbudget::Correlation;
using pathbudget::Matrix2x2;
using pathbudget::PathMatrix;
using pathbudget::Seed;
using pathbudget::TimeGrid;
using pathbudget::truncate_budget;
using testsupport::increment_correlation;

TEST_CASE("correlation validates its range") {
    REQUIRE_NOTHROW(Correlation(1.0));
    REQUIRE_NOTHROW(Correlation(-1.0));
    REQUIRE_NOTHROW(Correlation(0.0));
    REQUIRE_THROWS_AS(Correlation(1.0000001), std::invalid_argument);
    REQUIRE_THROWS_AS(Correlation(-2.0), std::invalid_argument);
    REQUIRE_THROWS_AS(Correlation(std::numeric_limits<double>::quiet_NaN()),
                      std::invalid_argument);
}

TEST_CASE("rho_bar vanishes exactly at full correlation") {
    REQUIRE(Correlation(1.0).rho_bar() == 0.0);
    REQUIRE(Correlation(-1.0).rho_bar() == 0.0);
    REQUIRE(Correlation(1.0).one_minus_rho_sq() == 0.0);
    REQUIRE(Correlation(-1.0).one_minus_rho_sq() == 0.0);
    REQUIRE(Correlation(0.0).rho_bar() == 1.0);
}

TEST_CASE("cholesky factor on hand-checked correlations") {
    const Matrix2x2 identity = cholesky_factor(Correlation(0.0));
    REQUIRE(identity[0][0] == 1.0);
    REQUIRE(identity[0][1] == 0.0);
    REQUIRE(identity[1][0] == 0.0);
    REQUIRE(identity[1][1] == 1.0);

    const Matrix2x2 degenerate = cholesky_factor(Correlation(1.0));
    REQUIRE(degenerate[1][0] == 1.0);
    REQUIRE(degenerate[1][1] == 0.0);

    // sqrt((1-0.5)(1+0.5)) = sqrt(0.75)
    const Matrix2x2 half = cholesky_factor(Correlation(0.5));
    REQUIRE(half[1][0] == 0.5);
    REQUIRE(half[1][1] == 0.8660254037844386);
}

TEST_CASE("cholesky factor reassembles the correlation matrix") {
    const double eps = std::numeric_limits<double>::epsilon();
    for (const double rho : {-1.0, -0.99, -0.75, -0.3, 0.0, 0.1, 0.5, 0.9, 1.0}) {
        const Matrix2x2 lower = cholesky_factor(Correlation(rho));
        INFO("rho = " << rho);
        REQUIRE(lower[0][0] * lower[0][0] == 1.0);
        REQUIRE(lower[0][1] == 0.0);
        REQUIRE(lower[1][0] * lower[0][0] == rho);
        const double diag = lower[1][0] * lower[1][0] + lower[1][1] * lower[1][1];
        REQUIRE(std::fabs(diag - 1.0) <= 4.0 * eps);
    }
}

TEST_CASE("degenerate correlations reproduce one driver exactly") {
    const TimeGrid grid(6);
    const PathMatrix w = pathbudget::simulate_paths(5, grid, Seed{11, 0});
    const PathMatrix b = pathbudget::simulate_paths(5, grid, Seed{11, 1});

    const auto full = correlate(w, b, Correlation(1.0));
    const auto anti = correlate(w, b, Correlation(-1.0));
    const auto none = correlate(w, b, Correlation(0.0));
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = 0; j < grid.size(); ++j) {
            REQUIRE(full.z(i, j) == w(i, j));
            REQUIRE(anti.z(i, j) == -w(i, j));
            REQUIRE(none.z(i, j) == b(i, j));
        }
    }
    REQUIRE(full.w == w);
}

TEST_CASE("correlate applies the componentwise expression") {
    const TimeGrid grid(4);
    const PathMatrix w = pathbudget::simulate_paths(7, grid, Seed{21, 0});
    const PathMatrix b = pathbudget::simulate_paths(7, grid, Seed{21, 1});
    const Correlation corr(0.7);
    const auto pair = correlate(w, b, corr);
    for (std::size_t i = 0; i < 7; ++i)
        for (std::size_t j = 0; j < grid.size(); ++j)
            REQUIRE(pair.z(i, j) == 0.7 * w(i, j) + corr.rho_bar() * b(i, j));
}

TEST_CASE("correlate rejects mismatched drivers") {
    const PathMatrix w(3, TimeGrid(4));
    const PathMatrix wrong_grid(3, TimeGrid(5));
    const PathMatrix wrong_count(2, TimeGrid(4));
    REQUIRE_THROWS_AS(correlate(w, wrong_grid, Correlation(0.5)), std::invalid_argument);
    REQUIRE_THROWS_AS(correlate(w, wrong_count, Correlation(0.5)), std::invalid_argument);
}

TEST_CASE("correlate is linear in the generating driver") {
    const TimeGrid grid(5);
    const PathMatrix w = pathbudget::simulate_paths(6, grid, Seed{31, 0});
    const PathMatrix b = pathbudget::simulate_paths(6, grid, Seed{31, 1});
    PathMatrix doubled(6, grid);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < grid.size(); ++j) doubled(i, j) = 2.0 * b(i, j);

    const double rho = 0.6;
    const auto base = correlate(w, b, Correlation(rho));
    const auto scaled = correlate(w, doubled, Correlation(rho));
    for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const double residual = scaled.z(i, j) - rho * w(i, j);
            const double expected = 2.0 * (base.z(i, j) - rho * w(i, j));
            const double slack =
                1e-13 * (std::fabs(scaled.z(i, j)) + std::fabs(rho * w(i, j)) + 1.0);
            REQUIRE(std::fabs(residual - expected) <= slack);
        }
    }
}

TEST_CASE("truncation keeps a prefix and zeroes the tail") {
    const TimeGrid grid(3);
    PathMatrix b(2, grid);
    for (std::size_t j = 0; j <= 3; ++j) {
        b(0, j) = static_cast<double>(j) * 0.5;
        b(1, j) = -static_cast<double>(j);
    }

    const PathMatrix kept_one = truncate_budget(b, 1);
    for (std::size_t j = 0; j <= 3; ++j) {
        REQUIRE(kept_one(0, j) == b(0, j));
        REQUIRE(kept_one(1, j) == 0.0);
    }

    REQUIRE(truncate_budget(b, 2) == b);

    const PathMatrix none = truncate_budget(b, 0);
    for (std::size_t j = 0; j <= 3; ++j) {
        REQUIRE(none(0, j) == 0.0);
        REQUIRE(none(1, j) == 0.0);
    }

    REQUIRE_THROWS_AS(truncate_budget(b, 3), std::invalid_argument);
}

TEST_CASE("truncation is idempotent") {
    const PathMatrix b = pathbudget::simulate_paths(8, TimeGrid(4), Seed{41, 2});
    const PathMatrix once = truncate_budget(b, 3);
    REQUIRE(truncate_budget(once, 3) == once);
}

TEST_CASE("pooled increment correlation tracks the requested rho") {
    const std::size_t paths = 1000;
    const TimeGrid grid(100);
    const PathMatrix w = pathbudget::simulate_paths(paths, grid, Seed{2718, 0});
    const PathMatrix b = pathbudget::simulate_paths(paths, grid, Seed{2718, 1});
    const double pairs = static_cast<double>(paths * grid.steps());

    for (const double rho : {-0.9, -0.5, 0.0, 0.5, 0.9}) {
        const auto pair = correlate(w, b, Correlation(rho));
        const double estimate = increment_correlation(pair.w, pair.z);
        // asymptotic standard error of a correlation estimate: (1-rho^2)/sqrt(N)
        const double band = 3.0 * std::max((1.0 - rho * rho), 1e-3) / std::sqrt(pairs);
        INFO("rho = " << rho << ", estimate = " << estimate);
        REQUIRE(std::fabs(estimate - rho) < band);
    }
}

TEST_CASE("truncated pair differs from the full pair only past the budget") {
    const std::size_t paths = 10;
    const std::size_t budget = 6;
    const TimeGrid grid(8);
    const PathMatrix w = pathbudget::simulate_paths(paths, grid, Seed{53, 0});
    const PathMatrix b = pathbudget::simulate_paths(paths, grid, Seed{53, 1});
    const Correlation corr(0.8);

    const auto full = correlate(w, b, corr);
    const auto trunc = correlate(w, truncate_budget(b, budget), corr);

    for (std::size_t i = 0; i < paths; ++i) {
        for (std::size_t j = 0; j < grid.size(); ++j) {
            if (i < budget) {
                REQUIRE(trunc.z(i, j) == full.z(i, j));
            } else {
                // dropping path i removes its rho_bar * b contribution
                const double diff = trunc.z(i, j) - full.z(i, j);
                const double expected = -corr.rho_bar() * b(i, j);
                REQUIRE(std::fabs(diff - expected) <=
                        1e-13 * (std::fabs(full.z(i, j)) + std::fabs(expected) + 1.0));
            }
        }
    }
}
