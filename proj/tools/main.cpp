#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "bosejump/errors.hpp"
#include "bosejump/parallel.hpp"
#include "commands.hpp"

using namespace bosejump;
using namespace bosejump::cli;

int main(int argc, char** argv) {
    CLI::App app{"Temperature jump of a massless Bose gas: exact coefficient, profiles and a transport oracle"};
    app.set_config("--config", "", "key=value file; command-line flags take precedence");
    app.require_subcommand(1);

    RunConfig cfg;
    std::string format = "json";
    app.add_option("--alpha", cfg.alpha, "exponent of the collision frequency nu ~ omega^alpha")
        ->check(CLI::Range(0.0, 3.0));
    app.add_option("--k", cfg.k, "imposed dimensionless temperature gradient K");
    app.add_option("--grid-mu", cfg.grid_mu, "mu grid: comma list, lin:a:b:n or log:a:b:n");
    app.add_option("--grid-x", cfg.grid_x, "x grid, same syntax as --grid-mu");
    app.add_option("--tol", cfg.tol, "fixed-point tolerance for the transport oracle")->check(CLI::PositiveNumber);
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", cfg.out, "output file, '-' for stdout");
    app.add_option("--threads", cfg.threads, "worker threads (0: OpenMP default)")->check(CLI::NonNegativeNumber);
    auto* dom = "Discrete ordinates";
    app.add_option("--length", cfg.length, "slab length")->group(dom)->check(CLI::PositiveNumber);
    app.add_option("--cells", cfg.cells, "spatial cells")->group(dom)->check(CLI::PositiveNumber);
    app.add_option("--angular", cfg.angular, "direction nodes (even)")->group(dom)->check(CLI::PositiveNumber);
    app.add_option("--frequency", cfg.frequency, "frequency nodes")->group(dom)->check(CLI::PositiveNumber);
    app.add_option("--max-iter", cfg.max_iter, "transport sweep budget")->group(dom)->check(CLI::PositiveNumber);

    auto* v1 = app.add_subcommand("v1", "exact and saddle-point jump coefficients");
    auto* disp = app.add_subcommand("dispersion", "boundary values of the dispersion function and theta");
    auto* prof = app.add_subcommand("profile", "phi(x, mu) over a grid plus the wall residual");
    auto* orc = app.add_subcommand("oracle", "discrete-ordinates estimate of the intercept K0");
    auto* val = app.add_subcommand("validate", "run the acceptance suite");
    double fixture = 0.0;
    auto* fixture_opt = val->add_option("--fixture-v1", fixture, "override the published V1(0)")->group("");
    for (auto* sub : {v1, disp, prof, orc, val}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    cfg.format = format == "csv" ? Format::csv : Format::json;
    if (*fixture_opt) cfg.fixture_v1 = fixture;
    if (cfg.threads > 0) set_threads(cfg.threads);

    CommandOutput result;
    try {
        if (*v1) result = cmd_v1(cfg);
        else if (*disp) result = cmd_dispersion(cfg);
        else if (*prof) result = cmd_profile(cfg);
        else if (*orc) result = cmd_oracle(cfg);
        else result = cmd_validate(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "computation failed: " << e.what() << "\n";
        return 1;
    }

    const std::string text = render(result, cfg.format);
    // CSV has no place for diagnostics; keep them visible.
    if (cfg.format == Format::csv)
        for (const auto& d : result.envelope["diagnostics"]) std::cerr << "note: " << d.get<std::string>() << "\n";
    if (cfg.out == "-") {
        std::cout << text;
        if (*val && cfg.format == Format::json) std::cerr << result.text;
    } else {
        std::ofstream f(cfg.out, std::ios::binary);
        if (!f || !(f << text) || !f.flush()) {
            std::cerr << "cannot write " << cfg.out << "\n";
            return 1;
        }
        if (*val) std::cout << result.text;
    }
    return result.exit_code;
}
