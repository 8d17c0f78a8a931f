#pragma once

#include <cstdint>

#include "ks/norms.hpp"
#include "ks/space.hpp"

namespace ks {

/// Least Lipschitz constant: sup over pairs of |f(x)-f(y)| / d(x,y).
double lip_constant(const MetricMeasureSpace& space, const SampledFunction& f);

/// Discrete slope at x over the neighborhood of radius h.
double slope(const MetricMeasureSpace& space, const SampledFunction& f, int x, double h);

/// Nonnegative g with |f(x)-f(y)| <= d(x,y)(g(x)+g(y)) on positive-mass pairs.
struct GradientWitness {
    std::vector<double> values;
    double feasibility_residual = 0.0;  // max over pairs of (|df| - d (g+g))_+
};

double witness_residual(const MetricMeasureSpace& space, const SampledFunction& f,
                        const std::vector<double>& g);

/// Canonical feasible start: g(x) = max_y |f(x)-f(y)| / d(x,y).
GradientWitness feasible_envelope(const MetricMeasureSpace& space, const SampledFunction& f);

struct SolverOptions {
    double tolerance = 1e-6;
    int max_iters = 50000;
    int restarts = 3;
    std::uint64_t seed = 0;
};

struct SeminormResult {
    double value = 0.0;
    GradientWitness witness;
    int iterations = 0;
    bool converged = true;
};

/// KS^{1,p} semi-norm: minimal KS^p norm over feasible gradient witnesses.
SeminormResult ks1p_seminorm(const MetricMeasureSpace& space, const BallFamily& family,
                             const SampledFunction& f, double p,
                             const SolverOptions& opts = {});

/// Brute-force grid search over [0, 2 Lip(f)]^n with local refinement.
/// Guarded to <= 3 points; certifies the solver on small instances.
double ks1p_oracle(const MetricMeasureSpace& space, const BallFamily& family,
                   const SampledFunction& f, double p, double step);

struct LipBoundReport {
    double seminorm = 0.0;
    double bound = 0.0;  // (Lip(f)/2) ||1||_{KS^p}
    bool ok = true;
};

LipBoundReport lip_membership_bound(const MetricMeasureSpace& space, const BallFamily& family,
                                    const SampledFunction& f, double p,
                                    const SolverOptions& opts = {});

struct UniquenessReport {
    double max_witness_spread = 0.0;
    std::vector<double> values;  // objective per restart
};

/// Solves from random feasible starts and measures how far the returned
/// witnesses are from one another on mass-carrying points.
UniquenessReport minimizer_uniqueness_probe(const MetricMeasureSpace& space,
                                            const BallFamily& family,
                                            const SampledFunction& f, double p,
                                            int n_restarts, const SolverOptions& opts = {});

}  // namespace ks
