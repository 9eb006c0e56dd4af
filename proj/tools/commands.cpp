#include "commands.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "bosejump/acceptance.hpp"
#include "bosejump/dom.hpp"
#include "bosejump/field.hpp"
#include "bosejump/saddle.hpp"

namespace bosejump::cli {

using nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "1.0.0";

double parse_number(const std::string& s) {
    double v = 0.0;
    const char* end = s.data() + s.size();
    auto [p, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || p != end) throw ConfigError("grid: cannot parse number '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) out.push_back(item);
    return out;
}

ordered_json measured(double value, double error) { return {{"value", value}, {"error", error}}; }
ordered_json exact(double value) { return {{"value", value}, {"error", "exact-by-construction"}}; }

ordered_json envelope(const std::string& command, const RunConfig& cfg, ordered_json inputs) {
    ordered_json e;
    e["command"] = command;
    inputs["alpha"] = cfg.alpha;
    e["inputs"] = std::move(inputs);
    e["values"] = ordered_json::object();
    const ModelConfig mc;
    const GridSpec gs;
    e["provenance"] = {{"version", kVersion},
                       {"omega_cut", mc.omega_cut},
                       {"quad_base_order", mc.quad.base_order},
                       {"quad_max_depth", mc.quad.max_depth},
                       {"table_order", gs.order},
                       {"table_panels_per_decade", gs.panels_per_decade}};
    e["diagnostics"] = ordered_json::array();
    return e;
}

std::string num17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
    if (spec.empty()) throw ConfigError("grid: empty specification");
    std::vector<double> out;
    const auto parts = split(spec, ':');
    if (parts.size() == 4 && (parts[0] == "lin" || parts[0] == "log")) {
        const double a = parse_number(parts[1]), b = parse_number(parts[2]);
        const double n = parse_number(parts[3]);
        if (!(n >= 1.0) || n != std::floor(n)) throw ConfigError("grid: point count must be a positive integer");
        const int count = static_cast<int>(n);
        if (parts[0] == "log" && !(a > 0.0 && b > 0.0)) throw ConfigError("grid: log spacing needs positive ends");
        for (int i = 0; i < count; ++i) {
            const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
            out.push_back(parts[0] == "lin" ? a + (b - a) * t : a * std::pow(b / a, t));
        }
    } else if (parts.size() == 1) {
        for (const auto& item : split(spec, ',')) out.push_back(parse_number(item));
    } else {
        throw ConfigError("grid: expected a comma list or lin:a:b:n / log:a:b:n");
    }
    if (out.empty()) throw ConfigError("grid: no points");
    for (double v : out)
        if (!std::isfinite(v)) throw ConfigError("grid: non-finite point");
    return out;
}

CommandOutput cmd_v1(const RunConfig& cfg) {
    const AlphaModel model(cfg.alpha);
    CommandOutput out;
    out.envelope = envelope("v1", cfg, ordered_json::object());
    auto& values = out.envelope["values"];
    auto& diag = out.envelope["diagnostics"];

    const V1Result zero = v1_coefficient(build_theta_table(exact_source(AlphaModel(0.0))));
    const auto table = build_theta_table(exact_source(model));
    std::optional<double> exact_value;
    try {
        const V1Result r = v1_coefficient(table);
        exact_value = r.value;
        values["v1_exact"] = measured(r.value, r.error);
    } catch (const DivergenceError& e) {
        diag.push_back(std::string("v1_exact divergent: ") + e.what());
    }
    if (table.bounded()) {
        diag.push_back("support is bounded; no tail exponent");
    } else {
        const double m = table.upper();
        const double p_alt = fit_tail_exponent(table, m / 100.0, m / 10.0);
        values["tail_exponent"] = measured(table.tail_exponent, std::abs(table.tail_exponent - p_alt));
    }
    const SaddleSummary s = summarize_saddle(cfg.alpha, zero.value, exact_value);
    values["omega0"] = measured(s.omega0, 1e-12);
    values["omega0_approx"] = exact(s.omega0_approx);
    values["omega0_gap"] = measured(std::abs(s.omega0_approx - s.omega0) / s.omega0, 1e-12);
    values["v1_saddle"] = measured(s.v1_tilde, std::pow(s.omega0, -cfg.alpha) * zero.error);
    if (exact_value) values["saddle_gap"] = measured(std::abs(s.v1_tilde - *exact_value) / *exact_value, 1e-9);
    values["kappa"] = exact(index_kappa(table));
    return out;
}

CommandOutput cmd_dispersion(const RunConfig& cfg) {
    const AlphaModel model(cfg.alpha);
    const auto table = build_theta_table(exact_source(model));
    CommandOutput out;
    ordered_json inputs;
    inputs["grid_mu"] = cfg.grid_mu.value_or("table");
    out.envelope = envelope("dispersion", cfg, inputs);
    out.envelope["values"]["kappa"] = exact(index_kappa(table));
    if (!table.bounded()) out.envelope["values"]["tail_exponent"] = measured(table.tail_exponent, 0.0);

    Table t{{"mu", "lambda_real", "im_plus", "theta"}, {}};
    if (!cfg.grid_mu) {
        for (const auto& s : table.samples) t.rows.push_back({s.mu, s.lambda_real, s.im_plus, s.theta});
    } else {
        for (double mu : parse_grid(*cfg.grid_mu)) {
            if (!(mu > 0.0)) throw ConfigError("dispersion: mu grid must be positive");
            const auto s = lambda_boundary(model, mu);
            t.rows.push_back({s.mu, s.lambda_real, s.im_plus, s.theta});
        }
    }
    out.table = std::move(t);
    return out;
}

CommandOutput cmd_profile(const RunConfig& cfg) {
    const AlphaModel model(cfg.alpha);
    const std::string grid_x = cfg.grid_x.value_or("0,0.5,1,2,5,10");
    const std::string grid_mu = cfg.grid_mu.value_or("lin:-0.975:0.975:40");
    const std::vector<double> xs = parse_grid(grid_x);
    const std::vector<double> mus = parse_grid(grid_mu);
    for (double x : xs)
        if (x < 0.0) throw ConfigError("profile: x grid must be nonnegative");

    const MilneSolution sol(model, cfg.k);
    const std::vector<double> phi = sol.evaluate_grid(xs, mus);

    CommandOutput out;
    ordered_json inputs;
    inputs["k"] = cfg.k;
    inputs["grid_x"] = grid_x;
    inputs["grid_mu"] = grid_mu;
    out.envelope = envelope("profile", cfg, inputs);
    auto& values = out.envelope["values"];
    const auto& v1 = sol.factorization().v1_result();
    values["v1"] = measured(v1.value, v1.error);
    values["k0"] = measured(sol.k0(), std::abs(cfg.k) * v1.error);

    std::vector<double> positive;
    for (double mu : mus)
        if (mu > 0.0) positive.push_back(mu);
    if (positive.empty()) {
        out.envelope["diagnostics"].push_back("no mu > 0 in the grid; boundary residual not evaluated");
    } else {
        values["boundary_residual"] = measured(boundary_residual(sol, positive), 1e-15);
    }

    Table t{{"x", "mu", "phi", "asymptote"}, {}};
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < mus.size(); ++j)
            t.rows.push_back({xs[i], mus[j], phi[i * mus.size() + j], sol.k0() + cfg.k * (xs[i] - mus[j])});
    out.table = std::move(t);
    return out;
}

CommandOutput cmd_oracle(const RunConfig& cfg) {
    const AlphaModel model(cfg.alpha);
    DomGridSpec spec;
    spec.length = cfg.length;
    spec.cells = cfg.cells;
    spec.angular = cfg.angular;
    spec.frequency = cfg.frequency;
    const DomGrid grid = DomGrid::make(model, spec);
    DomOptions opts;
    opts.k = cfg.k;
    opts.tol = cfg.tol;
    opts.max_iter = cfg.max_iter;

    CommandOutput out;
    ordered_json inputs;
    inputs["k"] = cfg.k;
    inputs["tol"] = cfg.tol;
    inputs["length"] = cfg.length;
    inputs["cells"] = cfg.cells;
    inputs["angular"] = cfg.angular;
    inputs["frequency"] = cfg.frequency;
    inputs["max_iter"] = cfg.max_iter;
    out.envelope = envelope("oracle", cfg, inputs);
    auto& values = out.envelope["values"];
    auto& diag = out.envelope["diagnostics"];

    DomResult r;
    try {
        r = solve_dom(model, grid, opts);
    } catch (const ConvergenceError& e) {
        std::ostringstream os;
        os << e.what() << " (after " << e.iterations() << " sweeps, residual " << e.residual()
           << "); raise --max-iter or shorten --length";
        throw ConvergenceError(os.str(), e.iterations(), e.residual());
    } catch (const ExtractionError& e) {
        throw ExtractionError(std::string(e.what()) + "; try a longer --length or more --cells");
    }
    for (const auto& w : r.warnings) diag.push_back(w);
    values["k0_extracted"] = measured(r.k0_extracted, r.residual * 10.0);
    values["slope"] = measured(r.slope, r.residual * 10.0);
    values["r_squared"] = exact(r.r_squared);
    values["iterations"] = exact(r.iterations);
    values["residual"] = exact(r.residual);
    try {
        const V1Result v1 = v1_coefficient(build_theta_table(exact_source(model)));
        values["v1_k"] = measured(v1.value * cfg.k, v1.error * std::abs(cfg.k));
        if (cfg.k != 0.0)
            values["relative_gap"] = measured(std::abs(r.k0_extracted - v1.value * cfg.k) / std::abs(v1.value * cfg.k),
                                              v1.error / v1.value + r.residual);
    } catch (const DivergenceError& e) {
        diag.push_back(std::string("no analytic reference: ") + e.what());
    }
    return out;
}

CommandOutput cmd_validate(const RunConfig& cfg) {
    AcceptanceOptions opts;
    if (cfg.fixture_v1) opts.v1_reference = *cfg.fixture_v1;
    const auto results = run_acceptance(opts);
    CommandOutput out;
    out.envelope = envelope("validate", cfg, ordered_json::object());
    out.envelope["inputs"].erase("alpha");
    auto& values = out.envelope["values"];
    for (const auto& r : results) {
        values["criterion_" + std::to_string(r.id)] = exact(r.pass ? 1.0 : 0.0);
        if (!r.pass) out.envelope["diagnostics"].push_back("criterion " + std::to_string(r.id) + ": " + r.summary);
    }
    out.text = format_report(results);
    out.exit_code = all_passed(results) ? 0 : 1;
    return out;
}

std::string to_csv(const Table& t) {
    std::string s;
    for (std::size_t i = 0; i < t.columns.size(); ++i) s += (i ? "," : "") + t.columns[i];
    s += "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + num17(row[i]);
        s += "\n";
    }
    return s;
}

std::string render(const CommandOutput& out, Format format) {
    if (format == Format::json) {
        ordered_json e = out.envelope;
        if (out.table) {
            e["table"]["columns"] = out.table->columns;
            e["table"]["rows"] = out.table->rows;
        }
        return e.dump(2) + "\n";
    }
    if (out.table) return to_csv(*out.table);
    if (!out.text.empty()) return out.text;
    // Scalar results as name,value,error rows.
    std::string s = "name,value,error\n";
    for (const auto& [name, v] : out.envelope["values"].items()) {
        s += name + "," + num17(v["value"].get<double>()) + ",";
        s += v["error"].is_string() ? v["error"].get<std::string>() : num17(v["error"].get<double>());
        s += "\n";
    }
    return s;
}

}  // namespace bosejump::cli
