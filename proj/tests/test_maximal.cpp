#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "ks/maximal.hpp"

using namespace ks;
using namespace ks::testutil;

TEST_CASE("maximal function worked values") {
    MetricMeasureSpace sp = two_point_space();
    SampledFunction f = {0.0, 1.0};
    SampledFunction mf = maximal_function(sp, f);
    CHECK(mf[0] == doctest::Approx(0.5));  // best ball at a is the full ball
    CHECK(mf[1] == doctest::Approx(1.0));  // the singleton {b}
    CHECK(lp_norm(sp, mf, 2.0) == doctest::Approx(std::sqrt(0.625)));
    // M is monotone under |.| and dominates |f| pointwise
    for (int i = 0; i < sp.size(); ++i) CHECK(mf[i] >= std::fabs(f[i]));
}

TEST_CASE("maximal function is sublinear and positively homogeneous") {
    MetricMeasureSpace sp = line3_space();
    SampledFunction f = {0.2, -1.0, 0.6}, g = {1.0, 0.3, -0.4};
    SampledFunction mf = maximal_function(sp, f), mg = maximal_function(sp, g);
    SampledFunction sum(3), scaled(3);
    for (int i = 0; i < 3; ++i) {
        sum[i] = f[i] + g[i];
        scaled[i] = 2.5 * f[i];
    }
    SampledFunction msum = maximal_function(sp, sum), mscaled = maximal_function(sp, scaled);
    for (int i = 0; i < 3; ++i) {
        CHECK(msum[i] <= mf[i] + mg[i] + 1e-12);
        CHECK(mscaled[i] == doctest::Approx(2.5 * mf[i]));
    }
}

TEST_CASE("restricted maximal") {
    MetricMeasureSpace sp = two_point_space();
    SampledFunction f = {0.0, 1.0};
    // only radius-0 singletons are admissible below the point gap
    SampledFunction mr = restricted_maximal(sp, f, 0.5);
    CHECK(mr[0] == doctest::Approx(0.0));
    CHECK(mr[1] == doctest::Approx(1.0));
    CHECK_THROWS_AS(restricted_maximal(sp, f, 0.0), BadExponentError);
    // zero-mass point with no positive-mass ball below the cutoff stays 0
    MetricMeasureSpace zp = MetricMeasureSpace::from_coords({"a", "b"}, {{0.0}, {1.0}}, {0.0, 1.0});
    SampledFunction mz = restricted_maximal(zp, f, 0.5);
    CHECK(mz[0] == doctest::Approx(0.0));
    // unrestricted, the full ball always reaches the zero-mass point
    CHECK(maximal_function(zp, f)[0] == doctest::Approx(1.0));
}

TEST_CASE("greedy covering on the 2-point space") {
    MetricMeasureSpace sp = two_point_space();
    std::vector<InputBall> balls = {{0, 1.0}, {1, 0.25}};
    CoveringSelection sel = greedy_5B(sp, balls);
    CHECK(sel.expansion_factor == doctest::Approx(5.0));
    CHECK(sel.selected == std::vector<int>{0});  // the big ball absorbs the other
    std::vector<InputBall> disj = {{0, 0.25}, {1, 0.25}};
    CHECK(greedy_5B(sp, disj).selected == std::vector<int>{0, 1});
}

TEST_CASE("distribution functions") {
    MetricMeasureSpace sp = line3_space();
    SampledFunction f = {0.0, 1.0, 2.0};
    CHECK(distribution_function(sp, f, 1.0) == doctest::Approx(1.0 / 3.0));
    CHECK(distribution_function_geq(sp, f, 1.0) == doctest::Approx(2.0 / 3.0));
    CHECK(distribution_function(sp, f, -1.0) == doctest::Approx(1.0));
    CHECK(distribution_function(sp, f, 5.0) == doctest::Approx(0.0));
}

TEST_CASE("layer cake identity") {
    MetricMeasureSpace sp = two_point_space();
    SampledFunction f = {0.0, 1.0};
    LayerCakeReport lin = layer_cake(sp, f, Polynomial{{1.0}});  // Psi(s) = s
    CHECK(lin.lhs == doctest::Approx(0.5));
    CHECK(lin.rhs == doctest::Approx(0.5));
    CHECK(lin.ok);
    LayerCakeReport cubic = layer_cake(sp, f, Polynomial{{0.5, -1.0, 3.0}});
    CHECK(cubic.ok);
    CHECK_THROWS_AS(layer_cake(sp, {-1.0, 1.0}, Polynomial{{1.0}}), NegativeInputError);
}

TEST_CASE("weak-type report worked values") {
    MetricMeasureSpace sp = two_point_space();
    BallFamily fam = two_point_family(sp);
    SampledFunction f = {0.0, 1.0};
    WeakTypeReport at = weak_type_report(sp, fam, f, {0.4});
    CHECK(at.sup_ratio == doctest::Approx(0.8));  // 0.4 * mu({Mf >= 0.4}) / 0.5
    CHECK(at.c_bound == doctest::Approx(1.0));    // doubling constant 1 here
    WeakTypeReport full = weak_type_report(sp, fam, f);
    CHECK(full.sup_ratio == doctest::Approx(1.0));  // attained at t = 1/2 and t = 1
    CHECK(full.ok);
    CHECK(full.ks1_ratio > 0.0);
}

TEST_CASE("strong-type report worked values") {
    MetricMeasureSpace sp = two_point_space();
    BallFamily fam = two_point_family(sp);
    SampledFunction f = {0.0, 1.0};
    StrongTypeReport rep = strong_type_report(sp, fam, f, 2.0);
    CHECK(rep.cp_bound == doctest::Approx(2.0 * std::sqrt(2.0)));
    CHECK(rep.lp_of_mf == doctest::Approx(std::sqrt(0.625)));
    CHECK(rep.lp_of_f == doctest::Approx(std::sqrt(0.5)));
    CHECK(rep.lp_chain_ok);
    CHECK(rep.ks_ratio > 0.0);
    CHECK_THROWS_AS(strong_type_report(sp, fam, f, 1.0), BadExponentError);
    CHECK_THROWS_AS(strong_type_report(sp, fam, f, kInf), BadExponentError);
}

TEST_CASE("WS maximal ratio is recorded") {
    MetricMeasureSpace sp = two_point_space();
    BallFamily fam = two_point_family(sp);
    SampledFunction f = {0.0, 1.0};
    WsMaximalReport rep = ws_maximal_report(sp, fam, f, 2.0);
    CHECK(rep.ws_of_f > 0.0);
    CHECK(rep.ws_of_mf > 0.0);
    CHECK(rep.ratio == doctest::Approx(rep.ws_of_mf / rep.ws_of_f));
}
