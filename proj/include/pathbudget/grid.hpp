#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace pathbudget {

// Uniform partition {j/m : j = 0..m} of the unit interval.
class TimeGrid {
public:
    explicit TimeGrid(std::size_t step_count) {
        if (step_count == 0)
            throw std::invalid_argument("TimeGrid: step count must be at least 1");
        times_.resize(step_count + 1);
        for (std::size_t j = 0; j <= step_count; ++j)
            times_[j] = static_cast<double>(j) / static_cast<double>(step_count);
    }

    [[nodiscard]] std::size_t steps() const noexcept { return times_.size() - 1; }  // m
    [[nodiscard]] std::size_t size() const noexcept { return times_.size(); }       // m + 1
    [[nodiscard]] double dt() const noexcept { return 1.0 / static_cast<double>(steps()); }

    [[nodiscard]] double operator[](std::size_t j) const noexcept { return times_[j]; }
    [[nodiscard]] std::span<const double> times() const noexcept { return times_; }

    friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

private:
    std::vector<double> times_;
};

[[nodiscard]] inline TimeGrid make_grid(std::size_t step_count) { return TimeGrid(step_count); }

}  // namespace pathbudget
