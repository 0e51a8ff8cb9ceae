#pragma once

#include "boundaries/io.hpp"

#include <optional>

namespace boundaries {

// scenario.v1 with defaults N = 5, scalar Q, filtration II, r_max = N.
struct ScenarioSpec {
    std::string kind;  // extension | product | identity | custom
    json data;         // the scenario object itself
    std::filesystem::path dir;
    int N = 5;
    std::string scalar = "Q";  // Q | R | F2 | F3 | F5 | F7
    bool filtration_II = true;
    int r_max = -1;
    double tol = 1e-9;
    std::vector<std::string> checks;  // extra: e2, compare, l1, oracle
    std::size_t dense_cap = 4000;    // largest dense presentation attempted
};

ScenarioSpec parse_scenario(const json& j, const std::filesystem::path& dir = {});

struct CheckResult {
    std::string name;
    std::string status;  // pass | fail | uncertified
    std::string detail;
    std::vector<std::string> witness;
};

struct PageRow {
    int r = 0;  // 0 is E_infinity
    int p = 0, q = 0;
    std::optional<std::size_t> rank;
    bool certified = false;
    std::optional<std::vector<std::string>> seminorm_basis;
};

struct RunReport {
    std::string kind, scalar, filtration;
    int N = 0, r_max = 0;
    std::vector<CheckResult> checks;
    std::vector<PageRow> pages;
    std::vector<std::size_t> total_ranks;  // n <= N-1
    std::vector<std::pair<std::string, double>> timing;
    bool emitted_pages = false;

    bool passed() const;
    int exit_code() const { return passed() ? 0 : 1; }
};

RunReport run_scenario(const ScenarioSpec& spec);

enum class ReportFormat { Text, Csv, Json };
ReportFormat parse_format(const std::string& s);
// Deterministic; timings only when asked.
std::string emit_report(const RunReport& r, ReportFormat f, bool timing = false);

}  // namespace boundaries
