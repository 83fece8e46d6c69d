#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>

#include "pathbudget/grid.hpp"
#include "pathbudget/paths.hpp"
#include "test_support.hpp"

using pathbudget::PathMatrix;
using pathbudget::Seed;
using pathbudget::TimeGrid;
using testsupport::column;
using testsupport::pearson;
using testsupport::sample_mean;
using testsupport::sample_variance;

TEST_CASE("grid points sit at j/m exactly") {
    const TimeGrid unit(1);
    REQUIRE(unit.steps() == 1);
    REQUIRE(unit.size() == 2);
    REQUIRE(unit[0] == 0.0);
    REQUIRE(unit[1] == 1.0);

    const TimeGrid quarters(4);
    const double expected[] = {0.0, 0.25, 0.5, 0.75, 1.0};
    REQUIRE(quarters.size() == 5);
    for (std::size_t j = 0; j < 5; ++j) REQUIRE(quarters[j] == expected[j]);

    const TimeGrid fine = pathbudget::make_grid(100);
    REQUIRE(fine.size() == 101);
    REQUIRE(fine.dt() == 0.01);
    for (std::size_t j = 0; j <= 100; ++j) {
        REQUIRE(fine[j] == static_cast<double>(j) / 100.0);
        if (j > 0) REQUIRE(fine[j] > fine[j - 1]);
    }
    REQUIRE(fine[100] == 1.0);
}

TEST_CASE("grid rejects a zero step count") {
    REQUIRE_THROWS_AS(TimeGrid(0), std::invalid_argument);
    REQUIRE_THROWS_AS(pathbudget::make_grid(0), std::invalid_argument);
}

TEST_CASE("simulated paths start at zero and match the requested shape") {
    const TimeGrid grid(8);
    const PathMatrix paths = pathbudget::simulate_paths(17, grid, Seed{123, 1});
    REQUIRE(paths.path_count() == 17);
    REQUIRE(paths.point_count() == 9);
    for (std::size_t i = 0; i < paths.path_count(); ++i) REQUIRE(paths(i, 0) == 0.0);
}

TEST_CASE("an empty ensemble is legal") {
    const PathMatrix none = pathbudget::simulate_paths(0, TimeGrid(3), Seed{5, 5});
    REQUIRE(none.path_count() == 0);
    REQUIRE(none.point_count() == 4);
}

TEST_CASE("equal seeds reproduce bit-identical ensembles") {
    const TimeGrid grid(12);
    const Seed seed{987654321, 7};
    const PathMatrix first = pathbudget::simulate_paths(9, grid, seed);
    const PathMatrix second = pathbudget::simulate_paths(9, grid, seed);
    REQUIRE(first == second);
}

TEST_CASE("changing either seed component changes the draw") {
    const TimeGrid grid(6);
    const PathMatrix base = pathbudget::simulate_paths(4, grid, Seed{7, 0});
    const PathMatrix other_stream = pathbudget::simulate_paths(4, grid, Seed{7, 1});
    const PathMatrix other_master = pathbudget::simulate_paths(4, grid, Seed{8, 0});
    REQUIRE_FALSE(base == other_stream);
    REQUIRE_FALSE(base == other_master);
}

TEST_CASE("terminal variance lands in the chi-square sampling band") {
    // for n iid N(0,1) draws the variance estimator has standard error ~ sqrt(2/n)
    const std::size_t n = 100000;
    const PathMatrix paths = pathbudget::simulate_paths(n, TimeGrid(1), Seed{2024, 0});
    const std::vector<double> terminal = column(paths, 1);
    const double variance = sample_variance(terminal);
    REQUIRE(std::fabs(variance - 1.0) < 3.0 * std::sqrt(2.0 / static_cast<double>(n)));
}

TEST_CASE("columnwise mean and variance follow the time scaling") {
    const std::size_t n = 100000;
    const TimeGrid grid(10);
    const PathMatrix paths = pathbudget::simulate_paths(n, grid, Seed{99, 3});
    for (std::size_t j = 1; j <= grid.steps(); ++j) {
        const double t = grid[j];
        const std::vector<double> values = column(paths, j);
        const double mean_band = 3.0 * std::sqrt(t / static_cast<double>(n));
        const double var_band = 3.0 * t * std::sqrt(2.0 / static_cast<double>(n));
        INFO("column " << j << " at t=" << t);
        REQUIRE(std::fabs(sample_mean(values)) < mean_band);
        REQUIRE(std::fabs(sample_variance(values) - t) < var_band);
    }
}

TEST_CASE("non-overlapping increments are uncorrelated") {
    const std::size_t n = 100000;
    const TimeGrid grid(10);
    const PathMatrix paths = pathbudget::simulate_paths(n, grid, Seed{314, 15});

    std::vector<double> early(n), late(n);
    for (std::size_t i = 0; i < n; ++i) {
        early[i] = paths(i, 2) - paths(i, 1);
        late[i] = paths(i, 7) - paths(i, 6);
    }
    const double corr = pearson(early, late);
    REQUIRE(std::fabs(corr) < 3.0 / std::sqrt(static_cast<double>(n)));
}
