#pragma once

#include <limits>

#include "ks/space.hpp"

namespace ks {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Conjugate exponent q with 1/p + 1/q = 1 (1 <-> inf).
double conjugate_exponent(double p);

/// Classical L^q norm; q = inf is the essential sup over positive-mass points.
double lp_norm(const MetricMeasureSpace& space, const SampledFunction& f, double q);

/// Weighted KS^p norm of the ball integrals; p = inf takes the unweighted sup.
double ks_norm(const MetricMeasureSpace& space, const BallFamily& family,
               const SampledFunction& f, double p);

/// KS^2 inner product: sum_r tau_r (int chi_r f)(int chi_r g).
double ks_inner(const MetricMeasureSpace& space, const BallFamily& family,
                const SampledFunction& f, const SampledFunction& g);

/// Sharp constant C(p,q) with ||f||_{KS^p} <= C ||f||_{L^q} for all f.
double embedding_constant(const MetricMeasureSpace& space, const BallFamily& family,
                          double p, double q);

struct HolderReport {
    double ks1_of_product = 0.0;
    double ks_p_of_f = 0.0;
    double ks_q_of_g = 0.0;
    double lp_of_f = 0.0;
    double lq_of_g = 0.0;
    bool per_ball_ok = true;         // classical per-ball Hoelder, always expected
    bool product_form_ok = true; // KS-level statement, recorded only
};

HolderReport holder_report(const MetricMeasureSpace& space, const BallFamily& family,
                           const SampledFunction& f, const SampledFunction& g, double p);

}  // namespace ks
