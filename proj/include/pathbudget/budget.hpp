#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "pathbudget/correlation.hpp"

namespace pathbudget {

// Inputs of the budget rule: n driver-path pairs on an m-step grid at
// correlation rho, with strict error target eps.
struct BudgetParams {
    std::size_t paths;  // n
    std::size_t steps;  // m
    Correlation rho;
    double tolerance;   // eps

    BudgetParams(std::size_t path_count, std::size_t step_count, Correlation correlation,
                 double eps)
        : paths(path_count), steps(step_count), rho(correlation), tolerance(eps) {
        if (paths == 0) throw std::invalid_argument("BudgetParams: path count must be at least 1");
        if (steps == 0) throw std::invalid_argument("BudgetParams: step count must be at least 1");
        if (!(eps > 0.0)) throw std::invalid_argument("BudgetParams: tolerance must be positive");
    }
};

struct BudgetResult {
    std::size_t n_tilde;    // reduced driver-path count, in [0, n]
    double threshold;       // feasibility cutoff n(m+1)(1-rho^2)/(2m)
    double expected_error;  // E[eps_hat] at n_tilde
};

// Expected truncation error in closed form:
//
//   E[eps_hat] = (1-rho^2)(n - n_tilde)(m+1)/(2m),
//
// zero when n_tilde = n or |rho| = 1.
[[nodiscard]] inline double expected_error(std::size_t paths, std::size_t steps,
                                           Correlation rho, std::size_t n_tilde) {
    if (steps == 0) throw std::invalid_argument("expected_error: step count must be at least 1");
    if (n_tilde > paths) throw std::invalid_argument("expected_error: n_tilde exceeds path count");
    const double m = static_cast<double>(steps);
    const double excess = static_cast<double>(paths - n_tilde);
    return rho.one_minus_rho_sq() * excess * (m + 1.0) / (2.0 * m);
}

// Closed-form driver-path budget:
//
//   n_tilde = 1{eps < n(m+1)(1-rho^2)/(2m)} * ceil(n - 2m eps / ((m+1)(1-rho^2)))
//
// The indicator is evaluated first, so |rho| = 1 returns 0 without ever
// reaching the division. The ceiling result is clamped into [0, n]; rounding
// at the feasibility edge or a denormally small eps could otherwise step one
// outside. The result is minimal whenever 2m eps/((m+1)(1-rho^2)) is not an
// exact integer; at such boundary points the stated formula lands one below
// the strict-inequality scan (see n_tilde_oracle).
[[nodiscard]] inline BudgetResult n_tilde_formula(const BudgetParams& params) {
    const double n = static_cast<double>(params.paths);
    const double m = static_cast<double>(params.steps);
    const double gap = params.rho.one_minus_rho_sq();
    const double threshold = n * (m + 1.0) * gap / (2.0 * m);
    std::size_t n_tilde = 0;
    if (params.tolerance < threshold) {
        const double raw = std::ceil(n - 2.0 * m * params.tolerance / ((m + 1.0) * gap));
        if (raw >= n)
            n_tilde = params.paths;
        else if (raw > 0.0)
            n_tilde = static_cast<std::size_t>(raw);
    }
    return {n_tilde, threshold, expected_error(params.paths, params.steps, params.rho, n_tilde)};
}

// Reference scan: the smallest n_tilde in {0..n} with expected_error
// strictly below the tolerance. Always terminates because the expected error
// at n_tilde = n is zero. Exists to cross-check n_tilde_formula, which stays
// the authoritative API; the two agree except at exact-integer boundary
// points, where the scan is larger by exactly 1.
[[nodiscard]] inline std::size_t n_tilde_oracle(const BudgetParams& params) {
    for (std::size_t candidate = 0; candidate < params.paths; ++candidate)
        if (expected_error(params.paths, params.steps, params.rho, candidate) < params.tolerance)
            return candidate;
    return params.paths;
}

}  // namespace pathbudget
