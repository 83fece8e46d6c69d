#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>

#include "pathbudget/paths.hpp"

namespace pathbudget {

// Correlation level in [-1, 1]. rho_bar is sqrt((1-rho)(1+rho)) rather than
// sqrt(1-rho^2): no cancellation near |rho| = 1, and |rho| = 1 gives exactly 0.
class Correlation {
public:
    explicit Correlation(double rho) : rho_(rho) {
        if (!(std::fabs(rho) <= 1.0))  // also rejects NaN
            throw std::invalid_argument("Correlation: rho must lie in [-1, 1]");
    }

    [[nodiscard]] double rho() const noexcept { return rho_; }
    [[nodiscard]] double one_minus_rho_sq() const noexcept { return (1.0 - rho_) * (1.0 + rho_); }
    [[nodiscard]] double rho_bar() const noexcept { return std::sqrt(one_minus_rho_sq()); }

    friend bool operator==(const Correlation&, const Correlation&) = default;

private:
    double rho_;
};

using Matrix2x2 = std::array<std::array<double, 2>, 2>;

// Lower-triangular factor of the 2x2 correlation matrix: L = [[1, 0],
// [rho, rho_bar]], with L L' = [[1, rho], [rho, 1]].
[[nodiscard]] inline Matrix2x2 cholesky_factor(Correlation corr) {
    return {{{1.0, 0.0}, {corr.rho(), corr.rho_bar()}}};
}

// The pair (w, z) with z = rho w + rho_bar b for the generating driver b,
// built on one shared grid.
struct CorrelatedPair {
    PathMatrix w;
    PathMatrix z;
    Correlation rho;
};

// Applies the Cholesky factor componentwise: z[i][j] = rho*w[i][j] +
// rho_bar*b[i][j], exactly that floating-point expression. w passes through
// unchanged.
[[nodiscard]] inline CorrelatedPair correlate(const PathMatrix& w,
                                              const PathMatrix& b,
                                              Correlation corr) {
    if (w.path_count() != b.path_count() || w.grid() != b.grid())
        throw std::invalid_argument("correlate: drivers must share path count and grid");
    PathMatrix z(w.path_count(), w.grid());
    const double rho = corr.rho();
    const double rho_bar = corr.rho_bar();
    for (std::size_t i = 0; i < w.path_count(); ++i) {
        const auto w_row = w.path(i);
        const auto b_row = b.path(i);
        const auto z_row = z.path(i);
        for (std::size_t j = 0; j < w_row.size(); ++j)
            z_row[j] = rho * w_row[j] + rho_bar * b_row[j];
    }
    return {w, std::move(z), corr};
}

// Keeps the first `budget` rows and replaces the rest with zero paths. In the
// 1-indexed counting of path sums this zeroes paths budget+1..n. Returns a
// new matrix so the full and truncated drivers coexist.
[[nodiscard]] inline PathMatrix truncate_budget(const PathMatrix& b, std::size_t budget) {
    if (budget > b.path_count())
        throw std::invalid_argument("truncate_budget: budget exceeds path count");
    PathMatrix out(b.path_count(), b.grid());
    for (std::size_t i = 0; i < budget; ++i) {
        const auto src = b.path(i);
        const auto dst = out.path(i);
        std::copy(src.begin(), src.end(), dst.begin());
    }
    return out;
}

}  // namespace pathbudget
