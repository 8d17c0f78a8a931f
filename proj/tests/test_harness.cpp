#include <doctest.h>

#include "ks/suite.hpp"

using namespace ks::suite;
using nlohmann::json;

TEST_CASE("empty run produces a valid skeleton") {
    SuiteConfig cfg;
    cfg.trials_override = 0;
    Report rep = run_suite(cfg);
    CHECK(rep.records.empty());
    CHECK(rep.fail_count() == 0);
    json j = rep.to_json(cfg);
    CHECK(j.at("records").empty());
    CHECK(j.at("summary").at("total").get<int>() == 0);
    std::string csv = rep.to_csv();
    CHECK(csv == "check,trial,passed,failed_flags,values\n");
    CHECK(rep.to_svg().find("<svg") != std::string::npos);
}

TEST_CASE("a one-trial run passes every check and is deterministic") {
    SuiteConfig cfg;
    cfg.trials_override = 1;
    Report a = run_suite(cfg);
    CHECK(a.records.size() == 15);
    for (const auto& r : a.records) {
        INFO(r.id());
        CHECK(r.passed);
    }
    Report b = run_suite(cfg);
    CHECK(a.to_json(cfg).dump() == b.to_json(cfg).dump());
    CHECK(a.to_csv() == b.to_csv());
    // CSV rows match the record count
    int rows = 0;
    for (char c : a.to_csv()) rows += c == '\n' ? 1 : 0;
    CHECK(rows == int(a.records.size()) + 1);
}

TEST_CASE("evaluate_check replays a record verbatim") {
    json inputs = {{"space",
                    {{"format_version", 1},
                     {"points", json::array({json{{"id", "a"}, {"coords", {0.0}}},
                                             json{{"id", "b"}, {"coords", {1.0}}}})},
                     {"metric", {{"type", "euclidean"}}},
                     {"measure", {0.5, 0.5}}}},
                   {"f", {0.0, 1.0}},
                   {"psi", {1.0}}};
    EvalResult er = evaluate_check("layer_cake", inputs);
    CHECK(er.passed);
    CHECK(er.values.at("lhs").get<double>() == doctest::Approx(0.5));
    CHECK_THROWS(evaluate_check("no_such_check", inputs));
}

TEST_CASE("criterion summary covers 1 through 13") {
    SuiteConfig cfg;
    cfg.trials_override = 1;
    Report rep = run_suite(cfg);
    auto crits = summarize_criteria(rep);
    CHECK(crits.size() == 13);
    for (std::size_t i = 0; i < crits.size(); ++i) {
        CHECK(crits[i].number == int(i) + 1);
        CHECK(crits[i].trials >= 1);
        CHECK(crits[i].failures == 0);
    }
}
