#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pathbudget/budget.hpp"
#include "pathbudget/detail/file.hpp"
#include "pathbudget/detail/format.hpp"
#include "pathbudget/detail/parallel.hpp"

namespace pathbudget {

// Uniform rho grid over [-1, 1]. With an odd point count both endpoints and 0
// land on the grid exactly, and the grid is exactly symmetric about 0.
[[nodiscard]] inline std::vector<double> uniform_rho_grid(std::size_t points = 401) {
    if (points < 2) throw std::invalid_argument("uniform_rho_grid: need at least 2 points");
    std::vector<double> grid(points);
    const double span = static_cast<double>(points - 1);
    for (std::size_t k = 0; k < points; ++k)
        grid[k] = (2.0 * static_cast<double>(k) - span) / span;
    return grid;
}

struct SweepConfig {
    std::size_t paths = 100;  // n
    std::size_t steps = 100;  // m
    std::vector<double> tolerances = {1.0, 5.0, 10.0, 25.0};
    std::vector<double> rho_grid = uniform_rho_grid();
    std::filesystem::path output;
};

inline void validate(const SweepConfig& config) {
    if (config.paths == 0) throw std::invalid_argument("sweep: path count must be at least 1");
    if (config.steps == 0) throw std::invalid_argument("sweep: step count must be at least 1");
    if (config.tolerances.empty()) throw std::invalid_argument("sweep: need at least one eps");
    for (const double eps : config.tolerances)
        if (!(eps > 0.0)) throw std::invalid_argument("sweep: eps values must be positive");
    if (config.rho_grid.empty()) throw std::invalid_argument("sweep: rho grid is empty");
    for (const double rho : config.rho_grid)
        if (!(std::fabs(rho) <= 1.0))
            throw std::invalid_argument("sweep: rho grid values must lie in [-1, 1]");
    if (!std::is_sorted(config.rho_grid.begin(), config.rho_grid.end()))
        throw std::invalid_argument("sweep: rho grid must be sorted ascending");
}

struct SweepRow {
    double rho = 0.0;
    double eps = 0.0;
    std::size_t n_tilde = 0;
    double expected_error = 0.0;
    double threshold = 0.0;

    friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

// One row per (eps, rho) cell, ordered by ascending eps then rho. Cells are
// pure arithmetic and evaluate in parallel into their own slots.
[[nodiscard]] inline std::vector<SweepRow> run_sweep(const SweepConfig& config,
                                                     unsigned threads = 0) {
    validate(config);
    std::vector<double> tolerances = config.tolerances;
    std::sort(tolerances.begin(), tolerances.end());
    const std::size_t cells = tolerances.size() * config.rho_grid.size();
    std::vector<SweepRow> rows(cells);
    detail::parallel_for(
        cells,
        [&](std::size_t cell) {
            const double eps = tolerances[cell / config.rho_grid.size()];
            const double rho = config.rho_grid[cell % config.rho_grid.size()];
            const BudgetResult result =
                n_tilde_formula(BudgetParams(config.paths, config.steps, Correlation(rho), eps));
            rows[cell] = {rho, eps, result.n_tilde, result.expected_error, result.threshold};
        },
        threads);
    return rows;
}

inline constexpr std::string_view sweep_csv_header = "rho,eps,n_tilde,expected_error,threshold";

// Comma-separated, decimal point, newline-terminated rows; doubles carry 17
// significant digits so parsing the file reproduces them exactly.
[[nodiscard]] inline std::string to_csv(const std::vector<SweepRow>& rows) {
    std::string text{sweep_csv_header};
    text += '\n';
    for (const SweepRow& row : rows) {
        text += detail::format_double(row.rho);
        text += ',';
        text += detail::format_double(row.eps);
        text += ',';
        text += std::to_string(row.n_tilde);
        text += ',';
        text += detail::format_double(row.expected_error);
        text += ',';
        text += detail::format_double(row.threshold);
        text += '\n';
    }
    return text;
}

inline void write_sweep_csv(const std::vector<SweepRow>& rows,
                            const std::filesystem::path& target) {
    detail::write_file_atomic(target, to_csv(rows));
}

namespace detail {

inline double parse_csv_double(const std::string& field, const std::string& where) {
    char* end = nullptr;
    const double value = std::strtod(field.c_str(), &end);
    if (end != field.c_str() + field.size() || field.empty())
        throw std::runtime_error(where + ": bad numeric field '" + field + "'");
    return value;
}

}  // namespace detail

[[nodiscard]] inline std::vector<SweepRow> read_sweep_csv(const std::filesystem::path& source) {
    std::ifstream in(source);
    if (!in) throw std::runtime_error("cannot open " + source.string());
    std::string line;
    if (!std::getline(in, line) || line != sweep_csv_header)
        throw std::runtime_error(source.string() + ": missing sweep header row");
    std::vector<SweepRow> rows;
    std::size_t line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) continue;
        const std::string where = source.string() + ":" + std::to_string(line_number);
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            fields.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (fields.size() != 5) throw std::runtime_error(where + ": expected 5 fields");
        SweepRow row;
        row.rho = detail::parse_csv_double(fields[0], where);
        row.eps = detail::parse_csv_double(fields[1], where);
        char* end = nullptr;
        row.n_tilde = std::strtoull(fields[2].c_str(), &end, 10);
        if (end != fields[2].c_str() + fields[2].size() || fields[2].empty())
            throw std::runtime_error(where + ": bad n_tilde field '" + fields[2] + "'");
        row.expected_error = detail::parse_csv_double(fields[3], where);
        row.threshold = detail::parse_csv_double(fields[4], where);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace pathbudget
