#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "ks/lipschitz.hpp"

using namespace ks;
using namespace ks::testutil;

TEST_CASE("Lipschitz constant and slope") {
    MetricMeasureSpace sp = line3_space();
    SampledFunction f = {0.0, 2.0, 3.0};
    CHECK(lip_constant(sp, f) == doctest::Approx(2.0));
    CHECK(slope(sp, f, 1, 1.0) == doctest::Approx(2.0));
    CHECK(slope(sp, f, 0, 1.0) == doctest::Approx(2.0));
    CHECK(slope(sp, f, 0, 2.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(slope(sp, f, 0, 0.0), BadExponentError);
}

TEST_CASE("witness residual and envelope") {
    MetricMeasureSpace sp = two_point_space();
    SampledFunction f = {0.0, 1.0};
    CHECK(witness_residual(sp, f, {0.5, 0.5}) == doctest::Approx(0.0));
    CHECK(witness_residual(sp, f, {0.2, 0.2}) == doctest::Approx(0.6));
    GradientWitness env = feasible_envelope(sp, f);
    CHECK(env.values[0] == doctest::Approx(1.0));
    CHECK(env.values[1] == doctest::Approx(1.0));
    CHECK(witness_residual(sp, f, env.values) == doctest::Approx(0.0));
}

TEST_CASE("seminorm worked instance: sqrt(5/32) with witness (1/2, 1/2)") {
    MetricMeasureSpace sp = two_point_space();
    BallFamily fam = two_point_family(sp);
    SampledFunction f = {0.0, 1.0};
    SeminormResult res = ks1p_seminorm(sp, fam, f, 2.0);
    CHECK(res.value == doctest::Approx(std::sqrt(5.0 / 32.0)).epsilon(1e-6));
    CHECK(res.witness.values[0] == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(res.witness.values[1] == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(res.witness.feasibility_residual <= 1e-9);
}

TEST_CASE("seminorm of a constant is zero") {
    MetricMeasureSpace sp = line3_space();
    BallFamily fam = enumerate_balls(sp);
    SampledFunction c = {2.5, 2.5, 2.5};
    for (double p : {1.0, 2.0, kInf}) CHECK(ks1p_seminorm(sp, fam, c, p).value == 0.0);
}

TEST_CASE("oracle agrees with the solver on the worked instance") {
    MetricMeasureSpace sp = two_point_space();
    BallFamily fam = two_point_family(sp);
    SampledFunction f = {0.0, 1.0};
    double oracle = ks1p_oracle(sp, fam, f, 2.0, 0.002);
    CHECK(oracle == doctest::Approx(std::sqrt(5.0 / 32.0)).epsilon(1e-4));
    double solver = ks1p_seminorm(sp, fam, f, 2.0).value;
    CHECK(std::fabs(solver - oracle) <= std::max(1e-3, 1e-3 * oracle));
    MetricMeasureSpace four = MetricMeasureSpace::from_coords(
        {"a", "b", "c", "d"}, {{0.0}, {1.0}, {2.0}, {3.0}}, {0.25, 0.25, 0.25, 0.25});
    SampledFunction f4 = {0.0, 1.0, 0.0, 1.0};
    CHECK_THROWS_AS(ks1p_oracle(four, enumerate_balls(four), f4, 2.0, 0.1), TooLargeError);
}

TEST_CASE("oracle matches the solver on a 3-point instance across exponents") {
    MetricMeasureSpace sp = line3_space();
    BallFamily fam = enumerate_balls(sp);
    SampledFunction f = {0.3, -0.8, 0.5};
    double lip = lip_constant(sp, f);
    for (double p : {1.0, 1.5, 2.0, kInf}) {
        double oracle = ks1p_oracle(sp, fam, f, p, lip / 25.0);
        double solver = ks1p_seminorm(sp, fam, f, p).value;
        CHECK(std::fabs(solver - oracle) <= std::max(1e-3, 1e-3 * oracle));
    }
}

TEST_CASE("Lipschitz membership bound") {
    MetricMeasureSpace sp = line3_space();
    BallFamily fam = enumerate_balls(sp);
    SampledFunction f = {0.0, 0.7, 1.1};
    for (double p : {1.0, 2.0, kInf}) {
        LipBoundReport rep = lip_membership_bound(sp, fam, f, p);
        CHECK(rep.ok);
        CHECK(rep.seminorm <= rep.bound * (1 + 1e-6) + 1e-12);
    }
}

TEST_CASE("uniqueness probe is tight on a strictly convex instance") {
    MetricMeasureSpace sp = line3_space();
    BallFamily fam = enumerate_balls(sp);
    SampledFunction f = {0.0, 1.0, 0.4};
    SolverOptions opts;
    opts.tolerance = 1e-9;
    UniquenessReport rep = minimizer_uniqueness_probe(sp, fam, f, 2.0, 5, opts);
    CHECK(rep.values.size() == 5);
    CHECK(rep.max_witness_spread <= 1e-4);
}

TEST_CASE("solver invariances on the worked instance") {
    MetricMeasureSpace sp = two_point_space();
    BallFamily fam = two_point_family(sp);
    SampledFunction f = {0.0, 1.0};
    double base = ks1p_seminorm(sp, fam, f, 2.0).value;
    SampledFunction shifted = {5.0, 6.0};
    CHECK(ks1p_seminorm(sp, fam, shifted, 2.0).value == doctest::Approx(base).epsilon(1e-4));
    SampledFunction scaled = {0.0, -3.0};
    CHECK(ks1p_seminorm(sp, fam, scaled, 2.0).value == doctest::Approx(3.0 * base).epsilon(1e-4));
}
