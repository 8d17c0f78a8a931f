// Acceptance gate: runs the full randomized suite once per criterion group
// and prints one pass/fail line per numbered criterion. Exit status is
// nonzero when any criterion fails.

#include <cstdio>
#include <string>

#include "ks/suite.hpp"

int main() {
    ks::suite::SuiteConfig cfg;
    cfg.seed = 42;

    ks::suite::Report report = ks::suite::run_suite(cfg);
    auto criteria = ks::suite::summarize_criteria(report);

    int failed = 0;
    for (const auto& c : criteria) {
        bool ok = c.failures == 0;
        if (!ok) ++failed;
        std::printf("criterion %2d [%s] %s (%d/%d trials passed)\n", c.number,
                    ok ? "PASS" : "FAIL", c.label.c_str(), c.trials - c.failures, c.trials);
    }

    // criterion 14: byte-identical reports under a fixed seed
    ks::suite::Report second = ks::suite::run_suite(cfg);
    bool deterministic = report.to_json(cfg).dump() == second.to_json(cfg).dump() &&
                         report.to_csv() == second.to_csv();
    if (!deterministic) ++failed;
    std::printf("criterion 14 [%s] byte-identical JSON and CSV reports for a fixed seed\n",
                deterministic ? "PASS" : "FAIL");

    for (const auto& r : report.records)
        if (!r.passed) std::printf("  failed record: %s\n", r.id().c_str());

    std::printf("%s: %d criteria failed\n", failed == 0 ? "ACCEPTED" : "REJECTED", failed);
    return failed == 0 ? 0 : 1;
}
