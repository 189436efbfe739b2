#pragma once

#include <string>
#include <vector>

#include "splitk/hilb.hpp"
#include "splitk/repmod.hpp"

namespace splitk {

struct RunConfig {
    std::vector<long> ells = {5, 7, 11, 13, 17, 19, 23, 29, 31};
    std::vector<long> oracle_ells = {5, 7};       // oracle-equivalence characteristics
    std::vector<long> certificate_ells = {5, 7, 11};
    std::vector<std::pair<long, uint32_t>> hilb_cases = {{1, 2}, {2, 2}, {2, 3},
                                                         {3, 2}, {3, 3}, {4, 2}};
    uint64_t seed = 0;
    long dim_budget = 512;
    HilbConfig hilb;
    bool skip_over_budget = false;
};

// Throws std::invalid_argument on bad values (non-prime ell, bad budgets).
void validate_config(const RunConfig& cfg);

struct CheckResult {
    std::string id;
    std::string name;
    std::string status;  // "pass", "fail" or "skip"
    std::string details;
    double seconds = 0;

    bool passed() const { return status == "pass"; }
};

// Runs check suites 1..9; each result's details string is deterministic.
std::vector<CheckResult> run_acceptance_checks(const RunConfig& cfg);

// Check 10: reruns the suite and byte-compares the rendered reports.
CheckResult run_determinism_check(const RunConfig& cfg,
                                  const std::vector<CheckResult>& first_pass);

// Canonical machine-readable report: pass/fail and deterministic details
// only. Timings are intentionally excluded so reports with equal results
// compare byte-identical; callers log timings separately.
std::string render_report(const RunConfig& cfg, const std::vector<CheckResult>& results);

}  // namespace splitk
