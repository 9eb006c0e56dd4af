#pragma once

#include <optional>
#include <string>
#include <vector>

namespace bosejump {

struct CriterionResult {
    int id = 0;
    bool pass = false;
    std::string summary;  // one line, no timings (the report must be reproducible)
};

struct AcceptanceOptions {
    double v1_reference = 0.71045;  // published α = 0 value; tests perturb it
    bool check_determinism = true;  // criterion 12 reruns 1–11 at 1 and 8 threads
};

/// Criteria 1–12 in order.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {});

/// "PASS  3  ..." lines, newline-terminated.
std::string format_report(const std::vector<CriterionResult>& results);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace bosejump
