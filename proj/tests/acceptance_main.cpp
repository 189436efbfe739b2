// Integration gate: runs every verification criterion at its pinned
// parameters and prints one pass/fail line per criterion. Exit status is
// the number of failed criteria.

#include <cstdio>

#include "splitk/acceptance.hpp"

int main() {
    splitk::RunConfig cfg;
    auto results = splitk::run_acceptance_checks(cfg);
    results.push_back(splitk::run_determinism_check(cfg, results));

    int failures = 0;
    for (const auto& r : results) {
        const char* tag = r.passed() ? "PASS" : (r.status == "skip" ? "SKIP" : "FAIL");
        std::printf("[%s] %2s %s (%.2fs)\n", tag, r.id.c_str(), r.name.c_str(), r.seconds);
        if (!r.passed() && r.status != "skip") {
            std::printf("       %s\n", r.details.c_str());
            ++failures;
        }
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failures,
                results.size());
    return failures;
}
