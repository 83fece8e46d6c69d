#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "pathbudget/grid.hpp"
#include "pathbudget/rng.hpp"

namespace pathbudget {

// n discrete sample paths on a shared grid. Row-major so each path is
// contiguous; every error sum walks along a single path. Column 0 holds the
// start value and stays zero for Brownian paths. Immutable use after
// construction is safe to share across threads.
class PathMatrix {
public:
    PathMatrix(std::size_t path_count, TimeGrid grid)
        : grid_(std::move(grid)),
          paths_(path_count),
          values_(path_count * grid_.size(), 0.0) {}

    [[nodiscard]] std::size_t path_count() const noexcept { return paths_; }       // n
    [[nodiscard]] std::size_t point_count() const noexcept { return grid_.size(); }  // m + 1
    [[nodiscard]] const TimeGrid& grid() const noexcept { return grid_; }

    [[nodiscard]] double operator()(std::size_t path, std::size_t point) const noexcept {
        return values_[path * grid_.size() + point];
    }
    [[nodiscard]] double& operator()(std::size_t path, std::size_t point) noexcept {
        return values_[path * grid_.size() + point];
    }

    [[nodiscard]] std::span<const double> path(std::size_t index) const noexcept {
        return {values_.data() + index * grid_.size(), grid_.size()};
    }
    [[nodiscard]] std::span<double> path(std::size_t index) noexcept {
        return {values_.data() + index * grid_.size(), grid_.size()};
    }

    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

    friend bool operator==(const PathMatrix&, const PathMatrix&) = default;

private:
    TimeGrid grid_;
    std::size_t paths_;
    std::vector<double> values_;
};

// Simulates independent standard Brownian paths on the grid: each row is a
// cumulative sum of i.i.d. N(0, 1/m) increments. Path i draws only from
// substream i of the seed, so rows may be generated in any order (or in
// parallel) with a result bit-identical to this sequential loop. path_count
// of zero yields an empty matrix.
[[nodiscard]] inline PathMatrix simulate_paths(std::size_t path_count,
                                               const TimeGrid& grid,
                                               Seed seed) {
    PathMatrix matrix(path_count, grid);
    const double step_sd = std::sqrt(grid.dt());
    for (std::size_t i = 0; i < path_count; ++i) {
        GaussianStream gauss(seed.substream(i));
        const auto row = matrix.path(i);
        double level = 0.0;
        for (std::size_t j = 1; j < row.size(); ++j) {
            level += step_sd * gauss();
            row[j] = level;
        }
    }
    return matrix;
}

}  // namespace pathbudget
