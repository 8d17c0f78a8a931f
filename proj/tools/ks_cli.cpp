// Command-line surface for the library: file validation, synthetic
// generators, norm and seminorm evaluation, maximal-operator utilities, and
// the randomized verification suite.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ks/generate.hpp"
#include "ks/io.hpp"
#include "ks/maximal.hpp"
#include "ks/sobolev.hpp"
#include "ks/suite.hpp"

using nlohmann::json;

namespace {

double parse_exponent(const std::string& text) {
    if (text == "inf" || text == "infinity") return ks::kInf;
    return std::stod(text);
}

json exponent_json(double p) { return std::isinf(p) ? json("inf") : json(p); }

void emit(const json& j, const std::string& out) {
    if (out.empty())
        std::cout << j.dump(2) << "\n";
    else
        ks::io::save_file(out, j);
}

ks::BallFamily build_family(const ks::MetricMeasureSpace& space, const std::string& weight_rule) {
    ks::RadiusScheme scheme = ks::default_scheme(space);
    if (weight_rule == "uniform") scheme.weight_rule = ks::WeightRule::Uniform;
    return ks::enumerate_balls(space, scheme);
}

std::vector<double> parse_coeffs(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

ks::suite::Report report_from_json(const json& j) {
    ks::suite::Report rep;
    for (const auto& jr : j.at("records")) {
        ks::suite::CheckRecord rec;
        rec.check = jr.at("check").get<std::string>();
        rec.trial = jr.at("trial").get<int>();
        rec.passed = jr.at("passed").get<bool>();
        rec.values = jr.value("values", json::object());
        rec.asserted = jr.value("asserted", json::object());
        rec.report_only = jr.value("report_only", json::object());
        if (jr.contains("repro")) rec.repro = jr.at("repro");
        rep.records.push_back(std::move(rec));
    }
    return rep;
}

struct SolverFlags {
    double tol = 1e-7;
    int max_iters = 50000;
    int restarts = 3;
    std::uint64_t seed = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--tol", tol, "solver tolerance");
        cmd->add_option("--max-iters", max_iters, "solver iteration cap");
        cmd->add_option("--restarts", restarts, "solver restart count");
        cmd->add_option("--solver-seed", seed, "solver random stream seed");
    }
    ks::SolverOptions options() const { return {tol, max_iters, restarts, seed}; }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kuelbs-Steadman norm toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    std::uint64_t seed = 42;
    std::string out;
    std::string format = "json";
    bool probability_mode = true;
    app.add_option("--seed", seed, "root seed for anything randomized")->capture_default_str();
    app.add_option("--out", out, "output path (stdout when omitted)");
    app.add_option("--format", format, "output formats, comma separated")->capture_default_str();
    auto* prob = app.add_flag("--probability-mode", "normalize the total measure to 1 (default)");
    auto* raw = app.add_flag("--raw-measure", "keep raw masses");
    prob->excludes(raw);

    // validate
    std::string space_path, fn_path, balls_path;
    auto* validate = app.add_subcommand("validate", "check space/function/ball files");
    validate->add_option("--space", space_path, "space file")->required();
    validate->add_option("--fn", fn_path, "function file");
    validate->add_option("--balls", balls_path, "ball list file");

    // grid
    int grid_dim = 1, grid_n = 2;
    std::string grid_domain = "unit-cube", grid_mode = "probability";
    auto* grid = app.add_subcommand("grid", "emit a Euclidean grid space with a sidecar descriptor");
    grid->add_option("--dim", grid_dim, "dimension (1 or 2)")->required();
    grid->add_option("--n", grid_n, "nodes per axis")->required();
    grid->add_option("--domain", grid_domain, "only unit-cube is supported");
    grid->add_option("--mode", grid_mode, "probability or raw");

    // gen space / gen fn
    auto* gen = app.add_subcommand("gen", "synthetic spaces and functions");
    gen->require_subcommand(1);
    std::string gen_kind = "random-cloud";
    int gen_size = 8;
    auto* gen_sp = gen->add_subcommand("space", "generate a space");
    gen_sp->add_option("--kind", gen_kind, "grid-1d, grid-2d, random-cloud, line-points");
    gen_sp->add_option("--size", gen_size, "point count (per axis for grid-2d)");
    std::string fn_kind = "random-uniform", fn_expr, fn_ids;
    double fn_lip = 1.0;
    std::string gen_fn_space;
    auto* gen_fn = gen->add_subcommand("fn", "sample a function on a space");
    gen_fn->add_option("--space", gen_fn_space, "space file")->required();
    gen_fn->add_option("--kind", fn_kind,
                       "random-uniform, random-lipschitz, polynomial, indicator");
    gen_fn->add_option("--lip", fn_lip, "bound for random-lipschitz");
    gen_fn->add_option("--expr", fn_expr, "expression for polynomial (x1..xD, + - * / ^ sin cos exp)");
    gen_fn->add_option("--ids", fn_ids, "comma-separated point ids for indicator");

    // norm
    std::string p_text = "2", q_text = "2", weight_rule = "geometric";
    auto* norm = app.add_subcommand("norm", "KS and Lebesgue norms with the embedding constant");
    norm->add_option("--space", space_path, "space file")->required();
    norm->add_option("--fn", fn_path, "function file")->required();
    norm->add_option("--p", p_text, "KS exponent, number or inf");
    norm->add_option("--q", q_text, "Lebesgue exponent, number or inf");
    norm->add_option("--weight-rule", weight_rule, "geometric or uniform");

    // seminorm
    SolverFlags seminorm_solver;
    std::string witness_out;
    auto* seminorm = app.add_subcommand("seminorm", "gradient-witness seminorm");
    seminorm->add_option("--space", space_path, "space file")->required();
    seminorm->add_option("--fn", fn_path, "function file")->required();
    seminorm->add_option("--p", p_text, "exponent, number or inf");
    seminorm->add_option("--weight-rule", weight_rule, "geometric or uniform");
    seminorm->add_option("--witness-out", witness_out, "write the witness as a function file");
    seminorm_solver.attach(seminorm);

    // wsnorm
    SolverFlags wsnorm_solver;
    auto* wsnorm = app.add_subcommand("wsnorm", "Sobolev-type norm on a metric space");
    wsnorm->add_option("--space", space_path, "space file")->required();
    wsnorm->add_option("--fn", fn_path, "function file")->required();
    wsnorm->add_option("--p", p_text, "exponent, number or inf");
    wsnorm->add_option("--weight-rule", weight_rule, "geometric or uniform");
    wsnorm_solver.attach(wsnorm);

    // poincare
    SolverFlags poincare_solver;
    auto* poincare = app.add_subcommand("poincare", "mean-oscillation bound report");
    poincare->add_option("--space", space_path, "space file")->required();
    poincare->add_option("--fn", fn_path, "function file")->required();
    poincare->add_option("--p", p_text, "exponent, number or inf");
    poincare->add_option("--weight-rule", weight_rule, "geometric or uniform");
    poincare_solver.attach(poincare);

    // maximal
    double restrict_r = -1.0;
    auto* maximal = app.add_subcommand("maximal", "Hardy-Littlewood maximal function");
    maximal->add_option("--space", space_path, "space file")->required();
    maximal->add_option("--fn", fn_path, "function file")->required();
    maximal->add_option("--restrict", restrict_r, "restrict candidate radii to < R");

    // cover
    auto* cover = app.add_subcommand("cover", "greedy disjoint subfamily with 5x expansion");
    cover->add_option("--space", space_path, "space file")->required();
    cover->add_option("--balls", balls_path, "ball list file")->required();

    // layercake
    std::string psi_text = "1";
    auto* layercake = app.add_subcommand("layercake", "layer cake identity report");
    layercake->add_option("--space", space_path, "space file")->required();
    layercake->add_option("--fn", fn_path, "function file")->required();
    layercake->add_option("--psi", psi_text, "polynomial coefficients c0,c1,...");

    // verify
    int trials_override = -1;
    bool timings = false;
    auto* verify = app.add_subcommand("verify", "run the randomized verification suite");
    verify->add_option("--trials", trials_override, "cap trials per check (0 runs nothing)");
    verify->add_flag("--timings", timings, "include per-record timings (breaks byte determinism)");

    // replay
    std::string report_path, record_id;
    auto* replay = app.add_subcommand("replay", "re-run one failed record from a report");
    replay->add_option("--report", report_path, "report JSON")->required();
    replay->add_option("--record", record_id, "record id, e.g. poincare#17")->required();

    // report
    auto* report_cmd = app.add_subcommand("report", "re-emit CSV/SVG from a report JSON");
    report_cmd->add_option("--in", report_path, "report JSON")->required();

    CLI11_PARSE(app, argc, argv);
    if (*raw) probability_mode = false;

    try {
        auto load_space = [&]() {
            ks::MetricMeasureSpace sp = ks::io::space_from_json(ks::io::load_file(space_path));
            return probability_mode ? sp.normalized() : sp;
        };
        auto load_fn = [&](const ks::MetricMeasureSpace& sp) {
            return ks::io::function_from_json(ks::io::load_file(fn_path), sp.size());
        };

        if (*validate) {
            ks::MetricMeasureSpace sp = load_space();
            json result = {{"points", sp.size()},
                           {"total_mass", sp.total_mass()},
                           {"diameter", ks::diameter(sp)},
                           {"doubling_constant", ks::doubling_constant(sp)}};
            if (!fn_path.empty()) {
                ks::SampledFunction f = load_fn(sp);
                result["function_values"] = f.size();
            }
            if (!balls_path.empty()) {
                auto balls = ks::io::balls_from_json(sp, ks::io::load_file(balls_path));
                result["balls"] = balls.size();
            }
            result["ok"] = true;
            emit(result, out);
        } else if (*grid) {
            if (grid_domain != "unit-cube") throw ks::BadExpressionError("unsupported domain");
            bool prob = grid_mode != "raw";
            ks::GridSpec g = ks::make_unit_cube_grid(grid_dim, grid_n, prob);
            ks::MetricMeasureSpace sp = ks::grid_space(g);
            if (out.empty()) {
                std::cout << ks::io::space_to_json(sp).dump(2) << "\n";
            } else {
                ks::io::save_file(out, ks::io::space_to_json(sp));
                ks::io::save_file(out + ".grid.json", ks::io::grid_to_json(g));
            }
        } else if (*gen_sp) {
            ks::MetricMeasureSpace sp =
                ks::gen_space(ks::space_kind_from_string(gen_kind), gen_size, seed);
            emit(ks::io::space_to_json(probability_mode ? sp : sp), out);
        } else if (*gen_fn) {
            ks::MetricMeasureSpace sp =
                ks::io::space_from_json(ks::io::load_file(gen_fn_space));
            ks::FunctionSpec spec;
            if (fn_kind == "random-uniform") spec.kind = ks::FunctionKind::RandomUniform;
            else if (fn_kind == "random-lipschitz") spec.kind = ks::FunctionKind::RandomLipschitz;
            else if (fn_kind == "polynomial") spec.kind = ks::FunctionKind::Polynomial;
            else if (fn_kind == "indicator") spec.kind = ks::FunctionKind::Indicator;
            else throw ks::BadExpressionError("unknown function kind '" + fn_kind + "'");
            spec.lipschitz_bound = fn_lip;
            spec.expression = fn_expr;
            std::stringstream ss(fn_ids);
            std::string id;
            while (std::getline(ss, id, ',')) if (!id.empty()) spec.indicator_ids.push_back(id);
            emit(ks::io::function_to_json(ks::gen_function(spec, sp, seed)), out);
        } else if (*norm) {
            ks::MetricMeasureSpace sp = load_space();
            ks::BallFamily fam = build_family(sp, weight_rule);
            ks::SampledFunction f = load_fn(sp);
            double p = parse_exponent(p_text), q = parse_exponent(q_text);
            emit(json{{"p", exponent_json(p)},
                      {"q", exponent_json(q)},
                      {"ks_norm", ks::ks_norm(sp, fam, f, p)},
                      {"lq_norm", ks::lp_norm(sp, f, q)},
                      {"embedding_constant", ks::embedding_constant(sp, fam, p, q)},
                      {"balls", fam.size()}},
                 out);
        } else if (*seminorm) {
            ks::MetricMeasureSpace sp = load_space();
            ks::BallFamily fam = build_family(sp, weight_rule);
            ks::SampledFunction f = load_fn(sp);
            double p = parse_exponent(p_text);
            ks::SeminormResult res =
                ks::ks1p_seminorm(sp, fam, f, p, seminorm_solver.options());
            if (!witness_out.empty())
                ks::io::save_file(witness_out, ks::io::function_to_json(res.witness.values));
            emit(json{{"p", exponent_json(p)},
                      {"seminorm", res.value},
                      {"iterations", res.iterations},
                      {"converged", res.converged},
                      {"feasibility_residual", res.witness.feasibility_residual}},
                 out);
        } else if (*wsnorm) {
            ks::MetricMeasureSpace sp = load_space();
            ks::BallFamily fam = build_family(sp, weight_rule);
            ks::SampledFunction f = load_fn(sp);
            double p = parse_exponent(p_text);
            ks::Ws1pResult res = ks::ws1p_norm(sp, fam, f, p, wsnorm_solver.options());
            emit(json{{"p", exponent_json(p)},
                      {"value", res.value},
                      {"ks_part", res.ks_part},
                      {"seminorm_part", res.seminorm_part},
                      {"p1_warning", res.p1_warning}},
                 out);
        } else if (*poincare) {
            ks::MetricMeasureSpace sp = load_space();
            ks::BallFamily fam = build_family(sp, weight_rule);
            ks::SampledFunction f = load_fn(sp);
            double p = parse_exponent(p_text);
            ks::PoincareReport rep = ks::poincare_report(sp, fam, f, p, poincare_solver.options());
            emit(json{{"p", exponent_json(p)},
                      {"lhs", rep.lhs},
                      {"seminorm", rep.seminorm},
                      {"derived_constant", rep.derived_constant},
                      {"reported_constant", rep.reported_constant},
                      {"ok_derived", rep.ok_derived},
                      {"ok_reported", rep.ok_reported}},
                 out);
        } else if (*maximal) {
            ks::MetricMeasureSpace sp = load_space();
            ks::SampledFunction f = load_fn(sp);
            ks::SampledFunction mf = restrict_r > 0.0 ? ks::restricted_maximal(sp, f, restrict_r)
                                                      : ks::maximal_function(sp, f);
            emit(ks::io::function_to_json(mf), out);
        } else if (*cover) {
            ks::MetricMeasureSpace sp = load_space();
            auto balls = ks::io::balls_from_json(sp, ks::io::load_file(balls_path));
            ks::CoveringSelection sel = ks::greedy_5B(sp, balls);
            json selected = json::array();
            for (int idx : sel.selected)
                selected.push_back(json{{"index", idx},
                                        {"center", sp.id(balls[std::size_t(idx)].center)},
                                        {"radius", balls[std::size_t(idx)].radius}});
            emit(json{{"expansion_factor", sel.expansion_factor}, {"selected", selected}}, out);
        } else if (*layercake) {
            ks::MetricMeasureSpace sp = load_space();
            ks::SampledFunction f = load_fn(sp);
            ks::LayerCakeReport rep = ks::layer_cake(sp, f, ks::Polynomial{parse_coeffs(psi_text)});
            emit(json{{"lhs", rep.lhs}, {"rhs", rep.rhs}, {"ok", rep.ok}}, out);
        } else if (*verify) {
            ks::suite::SuiteConfig cfg;
            cfg.seed = seed;
            cfg.trials_override = trials_override;
            cfg.probability_mode = probability_mode;
            cfg.timings = timings;
            ks::suite::Report rep = ks::suite::run_suite(cfg);
            bool want_json = format.find("json") != std::string::npos;
            bool want_csv = format.find("csv") != std::string::npos;
            bool want_svg = format.find("svg") != std::string::npos;
            ks::suite::emit_report(rep, cfg, out.empty() ? "report" : out, want_json, want_csv,
                                   want_svg);
            std::cout << "checks: " << rep.records.size() << "  passed: " << rep.pass_count()
                      << "  failed: " << rep.fail_count() << "\n";
            for (const auto& r : rep.records)
                if (!r.passed) std::cout << "FAIL " << r.id() << "\n";
            return rep.fail_count() == 0 ? 0 : 1;
        } else if (*replay) {
            json j = ks::io::load_file(report_path);
            for (const auto& jr : j.at("records")) {
                std::string id = jr.at("check").get<std::string>() + "#" +
                                 std::to_string(jr.at("trial").get<int>());
                if (id != record_id) continue;
                if (!jr.contains("repro"))
                    throw ks::BadExpressionError("record " + id +
                                                 " has no reproducer (it passed)");
                ks::suite::EvalResult er =
                    ks::suite::evaluate_check(jr.at("check").get<std::string>(), jr.at("repro"));
                emit(json{{"record", id},
                          {"passed", er.passed},
                          {"values", er.values},
                          {"asserted", er.asserted}},
                     out);
                return er.passed ? 0 : 1;
            }
            throw ks::BadExpressionError("record '" + record_id + "' not found");
        } else if (*report_cmd) {
            json j = ks::io::load_file(report_path);
            ks::suite::Report rep = report_from_json(j);
            std::string dir = out.empty() ? "report" : out;
            bool want_csv = format.find("csv") != std::string::npos;
            bool want_svg = format.find("svg") != std::string::npos;
            ks::suite::emit_report(rep, ks::suite::SuiteConfig{}, dir, false,
                                   want_csv || format == "json", want_svg);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
