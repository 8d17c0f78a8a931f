#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "ks/sobolev.hpp"

using namespace ks;
using namespace ks::testutil;

TEST_CASE("average") {
    MetricMeasureSpace sp = two_point_space();
    CHECK(average(sp, {0.0, 1.0}) == doctest::Approx(0.5));
    MetricMeasureSpace raw = MetricMeasureSpace::from_coords({"a", "b"}, {{0.0}, {1.0}}, {1.0, 3.0});
    CHECK(average(raw, {0.0, 1.0}) == doctest::Approx(0.75));
}

TEST_CASE("WS norm worked instance") {
    MetricMeasureSpace sp = two_point_space();
    BallFamily fam = two_point_family(sp);
    SampledFunction f = {0.0, 1.0};
    Ws1pResult res = ws1p_norm(sp, fam, f, 2.0);
    CHECK(res.ks_part == doctest::Approx(std::sqrt(3.0 / 16.0)));
    CHECK(res.seminorm_part == doctest::Approx(std::sqrt(5.0 / 32.0)).epsilon(1e-5));
    CHECK(res.value == doctest::Approx(std::sqrt(3.0 / 16.0) + std::sqrt(5.0 / 32.0)).epsilon(1e-5));
    CHECK_FALSE(res.p1_warning);
    CHECK(ws1p_norm(sp, fam, f, 1.0).p1_warning);
}

TEST_CASE("Poincare report worked values") {
    MetricMeasureSpace sp = two_point_space();
    BallFamily fam = two_point_family(sp);
    SampledFunction f = {0.0, 1.0};
    PoincareReport rep = poincare_report(sp, fam, f, 2.0);
    // centered function is (-1/2, 1/2); ball integrals -1/4, 1/4, 0
    CHECK(rep.lhs == doctest::Approx(std::sqrt(1.0 / 32.0)));
    CHECK(rep.seminorm == doctest::Approx(std::sqrt(5.0 / 32.0)).epsilon(1e-5));
    CHECK(rep.derived_constant ==
          doctest::Approx(1.0 + std::sqrt(2.0) * std::sqrt(0.625)));
    CHECK(rep.reported_constant == doctest::Approx(2.0));
    CHECK(rep.ok_derived);
    CHECK(rep.ok_reported);

    BallFamily no_full = make_family(sp, {{0, 0.25}, {1, 0.25}}, {0.5, 0.5});
    CHECK_THROWS_AS(poincare_report(sp, no_full, f, 2.0), MissingFullBallError);
}

TEST_CASE("equivalent norm check") {
    MetricMeasureSpace sp = line3_space();
    BallFamily fam = enumerate_balls(sp);
    std::vector<SampledFunction> fs = {{0.0, 1.0, 0.5}, {1.0, 1.0, 1.0}, {0.0, 0.0, 0.0}};
    NormHandle sup = [&](const SampledFunction& f) { return lp_norm(sp, f, kInf); };
    EquivalentNormReport rep = equivalent_norm_check(sp, fam, fs, 2.0, sup);
    CHECK(rep.n_used == 2);  // the zero function is excluded
    CHECK(rep.all_finite_positive);
    CHECK(rep.c_low <= rep.c_high);
    CHECK(rep.c_low > 0.0);
}

TEST_CASE("grid layout") {
    GridSpec g = make_unit_cube_grid(2, 3);
    CHECK(g.node_count() == 9);
    CHECK(g.spacing == doctest::Approx(0.5));
    // lexicographic, axis 0 slowest
    CHECK(g.node_coords(0) == std::vector<double>{0.0, 0.0});
    CHECK(g.node_coords(1) == std::vector<double>{0.0, 0.5});
    CHECK(g.node_coords(3) == std::vector<double>{0.5, 0.0});
    CHECK(g.cell_mass[0] == doctest::Approx(1.0 / 9.0));
    CHECK_THROWS_AS(make_unit_cube_grid(1, 1), GridTooSmallError);
    MetricMeasureSpace sp = grid_space(g);
    CHECK(sp.size() == 9);
    CHECK(sp.dist(0, 4) == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("multi indices") {
    auto a1 = multi_indices_up_to(1, 2);
    CHECK(a1.size() == 3);
    auto a2 = multi_indices_up_to(2, 2);
    CHECK(a2.size() == 6);  // 00 01 02 10 11 20
    CHECK(multi_index_order({1, 2}) == 3);
}

TEST_CASE("derivatives are exact on affine and quadratic data") {
    GridSpec g = make_unit_cube_grid(1, 9);
    std::vector<double> lin(9), quad(9);
    for (int i = 0; i < 9; ++i) {
        double x = g.node_coords(i)[0];
        lin[i] = 2.0 * x + 3.0;
        quad[i] = x * x;
    }
    auto d_lin = grid_weak_derivative(g, lin, {1});
    auto d_quad = grid_weak_derivative(g, quad, {1});
    auto dd_quad = grid_weak_derivative(g, quad, {2});
    for (int i = 0; i < 9; ++i) {
        CHECK(d_lin[i] == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(d_quad[i] == doctest::Approx(2.0 * g.node_coords(i)[0]).epsilon(1e-12));
        CHECK(dd_quad[i] == doctest::Approx(2.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(grid_weak_derivative(g, lin, {1, 1}), GridTooSmallError);
    GridSpec tiny = make_unit_cube_grid(1, 3);
    std::vector<double> f3 = {0.0, 1.0, 0.0};
    CHECK_THROWS_AS(grid_weak_derivative(tiny, f3, {2}), GridTooSmallError);
}

TEST_CASE("grid Sobolev norms and the Euclidean comparison") {
    GridSpec g = make_unit_cube_grid(2, 6);
    MetricMeasureSpace sp = grid_space(g);
    BallFamily fam = enumerate_balls(sp);
    std::vector<double> f(std::size_t(g.node_count()));
    for (int i = 0; i < g.node_count(); ++i) {
        auto x = g.node_coords(i);
        f[std::size_t(i)] = std::sin(3.0 * x[0]) * (x[1] + 0.2) + x[0] * x[0];
    }
    for (int k : {0, 1, 2})
        for (double q : {1.0, 2.0, kInf}) {
            EuclidEmbeddingReport rep = euclid_embedding_report(g, fam, f, k, q);
            CHECK(rep.ok);
        }
    double inner = wsk2_inner(g, fam, f, f, 2);
    double n2 = wskp_norm(g, fam, f, 2, 2.0);
    CHECK(inner == doctest::Approx(n2 * n2).epsilon(1e-12));
}
