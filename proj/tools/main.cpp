// Command-line front end: budget (closed-form n_tilde), verify (Monte Carlo
// check of the expected error), sweep (rho sweep to CSV), plotdata (SVG step
// plot). Exit codes: 0 success/pass, 1 statistical failure, 2 usage or
// parameter error.

#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pathbudget/pathbudget.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_statistical_failure = 1;
constexpr int exit_usage = 2;

int run_budget(std::size_t n, std::size_t m, double rho, double eps) {
    const pathbudget::BudgetParams params(n, m, pathbudget::Correlation(rho), eps);
    const pathbudget::BudgetResult result = pathbudget::n_tilde_formula(params);
    std::printf("driver-path budget\n");
    std::printf("  n=%zu m=%zu rho=%g eps=%g\n", n, m, rho, eps);
    std::printf("  n_tilde:        %zu\n", result.n_tilde);
    std::printf("  threshold:      %g\n", result.threshold);
    std::printf("  expected_error: %g\n", result.expected_error);
    std::printf("n=%zu m=%zu rho=%s eps=%s n_tilde=%zu threshold=%s expected_error=%s\n", n, m,
                pathbudget::detail::format_double(rho).c_str(),
                pathbudget::detail::format_double(eps).c_str(), result.n_tilde,
                pathbudget::detail::format_double(result.threshold).c_str(),
                pathbudget::detail::format_double(result.expected_error).c_str());
    return exit_ok;
}

int run_verify(std::size_t n, std::size_t m, double rho, double eps, std::size_t replications,
               std::uint64_t master, std::uint64_t stream) {
    const pathbudget::BudgetParams params(n, m, pathbudget::Correlation(rho), eps);
    const pathbudget::BudgetResult budget = pathbudget::n_tilde_formula(params);
    const pathbudget::VerificationOutcome outcome = pathbudget::verify_expected_error(
        params, budget.n_tilde, replications, pathbudget::Seed{master, stream});
    std::cout << pathbudget::format_report(outcome.first);
    if (outcome.retry) {
        std::cout << "retry=1 reason=statistical-failure\n";
        std::cout << pathbudget::format_report(*outcome.retry);
    }
    std::cout.flush();
    return outcome.pass() ? exit_ok : exit_statistical_failure;
}

pathbudget::SweepConfig make_config(std::size_t n, std::size_t m,
                                    const std::vector<double>& eps_list,
                                    std::size_t rho_points) {
    pathbudget::SweepConfig config;
    config.paths = n;
    config.steps = m;
    if (!eps_list.empty()) config.tolerances = eps_list;
    config.rho_grid = pathbudget::uniform_rho_grid(rho_points);
    return config;
}

int run_sweep(const pathbudget::SweepConfig& config, const std::string& output) {
    const std::vector<pathbudget::SweepRow> rows = pathbudget::run_sweep(config);
    pathbudget::write_sweep_csv(rows, output);
    std::cout << "wrote " << rows.size() << " rows to " << output << "\n";
    return exit_ok;
}

int run_plotdata(const std::string& input, const pathbudget::SweepConfig& config,
                 const std::string& output) {
    std::vector<pathbudget::SweepRow> rows;
    std::string title;
    if (!input.empty()) {
        rows = pathbudget::read_sweep_csv(input);
        title = "n_tilde(rho)";
    } else {
        rows = pathbudget::run_sweep(config);
        title = "n_tilde(rho), n=" + std::to_string(config.paths) +
                " m=" + std::to_string(config.steps);
    }
    pathbudget::write_sweep_svg(rows, output, title);
    std::cout << "wrote " << output << "\n";
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Driver-path budgeting for simulating two correlated Brownian motions.\n"
                 "Set PATHBUDGET_THREADS to cap the worker count (default: all cores)."};
    app.require_subcommand(1);

    std::size_t n = 100, m = 100;
    double rho = 0.0, eps = 10.0;
    std::size_t replications = 1000;
    std::uint64_t master = 0, stream = 0;
    std::vector<double> eps_list;
    std::size_t rho_points = 401;
    std::string output, input;

    const auto add_n = [&](CLI::App* cmd) {
        cmd->add_option("--n", n, "full driver-path count")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
    };
    const auto add_m = [&](CLI::App* cmd) {
        cmd->add_option("--m", m, "time-grid steps on [0,1]")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
    };
    const auto add_eps_list = [&](CLI::App* cmd) {
        cmd->add_option("--eps", eps_list, "error tolerances, one series each (default: 1 5 10 25)")
            ->check(CLI::PositiveNumber);
    };
    const auto add_rho_points = [&](CLI::App* cmd) {
        cmd->add_option("--rho-points", rho_points,
                        "uniform rho grid size over [-1,1]; odd counts include 0 exactly")
            ->check(CLI::Range(std::size_t{2}, std::size_t{1000001}))
            ->capture_default_str();
    };

    CLI::App* budget_cmd = app.add_subcommand("budget", "compute the driver-path budget n_tilde");
    add_n(budget_cmd);
    add_m(budget_cmd);
    budget_cmd->add_option("--rho", rho, "correlation in [-1,1]")
        ->check(CLI::Range(-1.0, 1.0))
        ->capture_default_str();
    budget_cmd->add_option("--eps", eps, "error tolerance (> 0)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    CLI::App* verify_cmd =
        app.add_subcommand("verify", "Monte Carlo check of the expected truncation error");
    add_n(verify_cmd);
    add_m(verify_cmd);
    verify_cmd->add_option("--rho", rho, "correlation in [-1,1]")
        ->check(CLI::Range(-1.0, 1.0))
        ->capture_default_str();
    verify_cmd->add_option("--eps", eps, "error tolerance (> 0)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    verify_cmd->add_option("--replications", replications, "Monte Carlo replications (>= 2)")
        ->check(CLI::Range(std::size_t{2}, std::size_t{100000000}))
        ->capture_default_str();
    verify_cmd->add_option("--seed", master, "master seed")->capture_default_str();
    verify_cmd->add_option("--stream", stream, "seed substream index")->capture_default_str();

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "sweep rho and write one CSV row per cell");
    add_n(sweep_cmd);
    add_m(sweep_cmd);
    add_eps_list(sweep_cmd);
    add_rho_points(sweep_cmd);
    sweep_cmd->add_option("--output", output, "CSV output path")->required();

    CLI::App* plot_cmd =
        app.add_subcommand("plotdata", "render the sweep as an SVG step plot");
    add_n(plot_cmd);
    add_m(plot_cmd);
    add_eps_list(plot_cmd);
    add_rho_points(plot_cmd);
    plot_cmd->add_option("--input", input, "existing sweep CSV (skips recomputation)")
        ->check(CLI::ExistingFile);
    plot_cmd->add_option("--output", output, "SVG output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& help) {
        return app.exit(help);
    } catch (const CLI::CallForVersion& version) {
        return app.exit(version);
    } catch (const CLI::ParseError& parse_error) {
        app.exit(parse_error);
        return exit_usage;
    }

    try {
        if (budget_cmd->parsed()) return run_budget(n, m, rho, eps);
        if (verify_cmd->parsed()) return run_verify(n, m, rho, eps, replications, master, stream);
        if (sweep_cmd->parsed()) return run_sweep(make_config(n, m, eps_list, rho_points), output);
        if (plot_cmd->parsed())
            return run_plotdata(input, make_config(n, m, eps_list, rho_points), output);
    } catch (const std::exception& failure) {
        std::cerr << "error: " << failure.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
