#include <doctest.h>

#include "helpers.hpp"
#include "ks/generate.hpp"
#include "ks/lipschitz.hpp"
#include "ks/space.hpp"

using namespace ks;
using namespace ks::testutil;

TEST_CASE("factory validation") {
    CHECK_THROWS_AS(MetricMeasureSpace::from_coords({}, {}, {}), EmptySpaceError);
    CHECK_THROWS_AS(MetricMeasureSpace::from_coords({"a"}, {{0.0}}, {-1.0}), NegativeMassError);
    CHECK_THROWS_AS(MetricMeasureSpace::from_coords({"a"}, {{0.0}}, {0.0}), NegativeMassError);
    // duplicate coordinates collapse the metric
    CHECK_THROWS_AS(MetricMeasureSpace::from_coords({"a", "b"}, {{0.0}, {0.0}}, {0.5, 0.5}),
                    NonMetricError);
}

TEST_CASE("matrix metric triangle check reports the offending triple") {
    // d(a,c) = 5 > d(a,b) + d(b,c) = 2
    std::vector<double> d = {0, 1, 5, 1, 0, 1, 5, 1, 0};
    try {
        MetricMeasureSpace::from_matrix({"a", "b", "c"}, d, {1, 1, 1});
        CHECK(false);
    } catch (const NonMetricError& e) {
        CHECK(std::string(e.what()).find("a") != std::string::npos);
    }
    std::vector<double> asym = {0, 1, 2, 0};
    CHECK_THROWS_AS(MetricMeasureSpace::from_matrix({"a", "b"}, asym, {1, 1}), NonMetricError);
}

TEST_CASE("basic geometry") {
    MetricMeasureSpace sp = two_point_space();
    CHECK(sp.size() == 2);
    CHECK(sp.total_mass() == doctest::Approx(1.0));
    CHECK(diameter(sp) == doctest::Approx(1.0));
    CHECK(sp.min_positive_distance() == doctest::Approx(1.0));
    CHECK(sp.index_of("b") == 1);
    CHECK_THROWS_AS(sp.index_of("zz"), IndexOutOfRangeError);

    MetricMeasureSpace raw = MetricMeasureSpace::from_coords({"a", "b"}, {{0.0}, {1.0}}, {1.0, 3.0});
    MetricMeasureSpace norm = raw.normalized();
    CHECK(norm.total_mass() == doctest::Approx(1.0));
    CHECK(norm.mass(1) == doctest::Approx(0.75));
}

TEST_CASE("doubling constant") {
    CHECK(doubling_constant(two_point_space()) == doctest::Approx(1.0));
    // end point of the 3-point line: mu(B(a,1)) = 2/3, mu(B(a,2)) = 1
    CHECK(doubling_constant(line3_space()) == doctest::Approx(1.5));
    MetricMeasureSpace single = MetricMeasureSpace::from_coords({"a"}, {{0.0}}, {1.0});
    CHECK(doubling_constant(single) == doctest::Approx(1.0));
}

TEST_CASE("default scheme and ball enumeration on the 2-point space") {
    MetricMeasureSpace sp = two_point_space();
    RadiusScheme scheme = default_scheme(sp);
    REQUIRE(scheme.radius_grid.size() == 2);
    CHECK(scheme.radius_grid[0] == doctest::Approx(0.5));
    CHECK(scheme.radius_grid[1] == doctest::Approx(1.0));

    BallFamily fam = enumerate_balls(sp);
    // diagonal order (a,0.5), (a,1), (b,0.5); (b,1) collapses into (a,1)
    REQUIRE(fam.size() == 3);
    CHECK(fam.balls()[0].members == std::vector<int>{0});
    CHECK(fam.balls()[1].members == std::vector<int>{0, 1});
    CHECK(fam.balls()[2].members == std::vector<int>{1});
    double wsum = 0.0;
    for (double w : fam.weights()) {
        CHECK(w > 0.0);
        wsum += w;
    }
    CHECK(wsum == doctest::Approx(1.0));
    CHECK(fam.has_full_ball());
    CHECK(fam.covers_singletons());
    CHECK(fam.full_ball_index() == 1);
    CHECK(fam.ball_masses()[1] == doctest::Approx(1.0));
}

TEST_CASE("radius grid preconditions") {
    MetricMeasureSpace sp = two_point_space();
    RadiusScheme s;
    s.radius_grid = {};
    CHECK_THROWS_AS(enumerate_balls(sp, s), BadRadiusGridError);
    s.radius_grid = {0.5, 0.5};
    CHECK_THROWS_AS(enumerate_balls(sp, s), BadRadiusGridError);
    s.radius_grid = {2.0, 4.0};  // no entry below the minimal distance
    CHECK_THROWS_AS(enumerate_balls(sp, s), BadRadiusGridError);
    s.radius_grid = {0.5};  // never reaches the diameter
    CHECK_THROWS_AS(enumerate_balls(sp, s), BadRadiusGridError);
    s.radius_grid = {-0.5, 1.0};
    CHECK_THROWS_AS(enumerate_balls(sp, s), BadRadiusGridError);
}

TEST_CASE("explicit families and ball integrals") {
    MetricMeasureSpace sp = two_point_space();
    BallFamily fam = two_point_family(sp);
    CHECK(fam.weights()[2] == doctest::Approx(0.5));
    SampledFunction f = {1.0, -1.0};
    CHECK(ball_integral(sp, fam, 0, f) == doctest::Approx(0.5));
    CHECK(ball_integral(sp, fam, 1, f) == doctest::Approx(-0.5));
    CHECK(ball_integral(sp, fam, 2, f) == doctest::Approx(0.0));
    CHECK_THROWS_AS(ball_integral(sp, fam, 7, f), IndexOutOfRangeError);
    CHECK_THROWS_AS(make_family(sp, {{5, 1.0}}, {1.0}), IndexOutOfRangeError);
    CHECK_THROWS_AS(make_family(sp, {{0, 1.0}}, {0.0}), BadRadiusGridError);
}

TEST_CASE("generators") {
    MetricMeasureSpace canon = gen_space(SpaceKind::LinePoints, 2, 7);
    CHECK(canon.size() == 2);
    CHECK(canon.dist(0, 1) == doctest::Approx(1.0));
    CHECK(canon.mass(0) == doctest::Approx(0.5));

    MetricMeasureSpace g1 = gen_space(SpaceKind::Grid1D, 64, 3);
    MetricMeasureSpace g2 = gen_space(SpaceKind::Grid1D, 64, 3);
    CHECK(g1.size() == 64);
    for (int i = 0; i < 64; ++i) CHECK(g1.coords()[i][0] == g2.coords()[i][0]);

    CHECK_THROWS_AS(gen_space(SpaceKind::RandomCloud, 5000, 1), SizeCapError);

    FunctionSpec ind;
    ind.kind = FunctionKind::Indicator;
    ind.indicator_ids = {"p0"};
    SampledFunction fi = gen_function(ind, canon, 0);
    CHECK(fi == SampledFunction{1.0, 0.0});

    FunctionSpec lip;
    lip.kind = FunctionKind::RandomLipschitz;
    lip.lipschitz_bound = 1.0;
    MetricMeasureSpace cloud = gen_space(SpaceKind::RandomCloud, 20, 5);
    SampledFunction fl = gen_function(lip, cloud, 11);
    CHECK(lip_constant(cloud, fl) <= 1.0 + 1e-12);

    FunctionSpec poly;
    poly.kind = FunctionKind::Polynomial;
    poly.expression = "x1^2";
    SampledFunction fp = gen_function(poly, g1, 0);
    for (int i = 0; i < g1.size(); ++i)
        CHECK(fp[i] == doctest::Approx(g1.coords()[i][0] * g1.coords()[i][0]));

    FunctionSpec bad;
    bad.kind = FunctionKind::Polynomial;
    bad.expression = "x1 +";
    CHECK_THROWS_AS(gen_function(bad, g1, 0), BadExpressionError);
}
