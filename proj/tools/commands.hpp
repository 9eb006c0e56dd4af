#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace bosejump::cli {

enum class Format { csv, json };

// Everything a subcommand needs. Thread count is deliberately not part of the
// echoed inputs: results must not depend on it.
struct RunConfig {
    double alpha = 0.0;
    double k = 1.0;
    std::optional<std::string> grid_mu;  // unset: command default
    std::optional<std::string> grid_x;
    double tol = 1e-10;
    Format format = Format::json;
    std::string out = "-";
    int threads = 0;

    // discrete ordinates
    double length = 30.0;
    int cells = 600;
    int angular = 32;
    int frequency = 48;
    int max_iter = 400;

    std::optional<double> fixture_v1;  // validate only
};

/// "0.1,0.5,2" | "lin:a:b:n" | "log:a:b:n" (n points, both ends included).
std::vector<double> parse_grid(const std::string& spec);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct CommandOutput {
    nlohmann::ordered_json envelope;
    std::optional<Table> table;
    std::string text;  // validate's pass/fail report
    int exit_code = 0;
};

CommandOutput cmd_v1(const RunConfig& cfg);
CommandOutput cmd_dispersion(const RunConfig& cfg);
CommandOutput cmd_profile(const RunConfig& cfg);
CommandOutput cmd_oracle(const RunConfig& cfg);
CommandOutput cmd_validate(const RunConfig& cfg);

/// CSV with a header row, 17 significant digits, LF line endings.
std::string to_csv(const Table& t);

/// Serialised form of a command result in the requested format.
std::string render(const CommandOutput& out, Format format);

}  // namespace bosejump::cli
