#pragma once

#include "ks/lipschitz.hpp"
#include "ks/norms.hpp"

namespace ks {

/// Hardy-Littlewood maximal function over all closed balls centered at data
/// points with radii in the pairwise-distance set (plus 0).
SampledFunction maximal_function(const MetricMeasureSpace& space, const SampledFunction& f);

/// Same with candidate radii restricted to < R.
SampledFunction restricted_maximal(const MetricMeasureSpace& space, const SampledFunction& f,
                                   double R);

struct InputBall {
    int center;
    double radius;
};

struct CoveringSelection {
    std::vector<int> selected;  // indices into the input list
    double expansion_factor = 5.0;
};

/// Greedy Vitali-type selection: decreasing radius, keep a ball iff its member
/// set is disjoint from every ball kept so far.
CoveringSelection greedy_5B(const MetricMeasureSpace& space, const std::vector<InputBall>& balls);

/// mu({f > t}), right-continuous in t.
double distribution_function(const MetricMeasureSpace& space, const SampledFunction& f, double t);

/// mu({f >= t}); the left limit of the distribution function.
double distribution_function_geq(const MetricMeasureSpace& space, const SampledFunction& f,
                                 double t);

/// psi(s) = sum_k coeffs[k] s^k.
struct Polynomial {
    std::vector<double> coeffs;
    double operator()(double s) const;
    Polynomial antiderivative() const;  // vanishing at 0
};

struct LayerCakeReport {
    double lhs = 0.0;  // int Psi(f) dmu
    double rhs = 0.0;  // int_0^max psi(s) mu({f>s}) ds, piecewise exact
    bool ok = true;
};

LayerCakeReport layer_cake(const MetricMeasureSpace& space, const SampledFunction& f,
                           const Polynomial& psi);

struct WeakTypeReport {
    double sup_ratio = 0.0;   // sup_t t mu({Mf >= t}) / ||f||_1
    double c_bound = 0.0;     // D^3 from the measured doubling constant
    double ks1_ratio = 0.0;   // same sup against ||f||_{KS^1}, recorded only
    bool ok = true;
};

WeakTypeReport weak_type_report(const MetricMeasureSpace& space, const BallFamily& family,
                                const SampledFunction& f,
                                const std::vector<double>& t_grid = {});

struct StrongTypeReport {
    double ks_ratio = 0.0;    // ||Mf||_{KS^p} / ||f||_{KS^p}, recorded only
    double lp_of_mf = 0.0;
    double lp_of_f = 0.0;
    double ks_of_mf = 0.0;
    double cp_bound = 0.0;    // 2 (D^3 p/(p-1))^{1/p}
    bool lp_chain_ok = true;  // ||Mf||_{KS^p} <= ||Mf||_{L^p} <= Cp ||f||_{L^p}
};

StrongTypeReport strong_type_report(const MetricMeasureSpace& space, const BallFamily& family,
                                    const SampledFunction& f, double p);

struct WsMaximalReport {
    double ws_of_f = 0.0;
    double ws_of_mf = 0.0;
    double ratio = 0.0;  // recorded only
};

WsMaximalReport ws_maximal_report(const MetricMeasureSpace& space, const BallFamily& family,
                                  const SampledFunction& f, double p,
                                  const SolverOptions& opts = {});

}  // namespace ks
