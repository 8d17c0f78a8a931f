#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace ks::suite {

// Named tolerances, fixed once for the whole harness.
struct Tolerances {
    double exact = 0.0;           // set comparisons
    double arithmetic = 1e-12;    // algebraic identities
    double norm_rel = 1e-10;      // norm inequalities, relative
    double solver_abs = 1e-4;     // solver-dependent checks
    double solver_rel = 1e-3;
};

struct SuiteConfig {
    std::uint64_t seed = 42;
    int trials_override = -1;     // -1 keeps the per-check defaults; 0 runs nothing
    bool probability_mode = true;
    bool timings = false;         // off by default so reports are byte-reproducible
    Tolerances tol;
};

struct CheckRecord {
    std::string check;
    int trial = 0;
    bool passed = true;
    nlohmann::json values;
    nlohmann::json asserted;      // flag name -> bool, all must hold
    nlohmann::json report_only;   // measured, never asserted
    nlohmann::json repro;         // inlined inputs, present iff !passed
    double elapsed_ms = 0.0;

    std::string id() const { return check + "#" + std::to_string(trial); }
};

struct Report {
    std::vector<CheckRecord> records;

    int pass_count() const;
    int fail_count() const;
    nlohmann::json to_json(const SuiteConfig& config) const;
    std::string to_csv() const;
    std::string to_svg() const;
};

struct EvalResult {
    bool passed = true;
    nlohmann::json values;
    nlohmann::json asserted;
    nlohmann::json report_only;
};

/// Re-evaluates one check from its inlined inputs; shared by the suite runner
/// and `replay`.
EvalResult evaluate_check(const std::string& check, const nlohmann::json& inputs);

Report run_suite(const SuiteConfig& config);

void emit_report(const Report& report, const SuiteConfig& config, const std::string& dir,
                 bool json_out = true, bool csv_out = true, bool svg_out = true);

struct CriterionSummary {
    int number = 0;
    std::string label;
    int trials = 0;
    int failures = 0;
};

/// Aggregates records into the numbered acceptance criteria (1..13; 14 is the
/// determinism check done by the caller).
std::vector<CriterionSummary> summarize_criteria(const Report& report);

}  // namespace ks::suite
