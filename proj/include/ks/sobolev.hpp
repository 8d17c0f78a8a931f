#pragma once

#include <functional>

#include "ks/lipschitz.hpp"
#include "ks/norms.hpp"

namespace ks {

/// Measure-weighted average f_X = mu(X)^{-1} int f dmu.
double average(const MetricMeasureSpace& space, const SampledFunction& f);

struct Ws1pResult {
    double value = 0.0;
    double ks_part = 0.0;
    double seminorm_part = 0.0;
    GradientWitness witness;
    bool p1_warning = false;  // the metric-space definition nominally excludes p = 1
};

/// ||f||_{WS^{1,p}} = ||f||_{KS^p} + ||f||_{KS^{1,p}} on a metric space.
Ws1pResult ws1p_norm(const MetricMeasureSpace& space, const BallFamily& family,
                     const SampledFunction& f, double p, const SolverOptions& opts = {});

struct PoincareReport {
    double lhs = 0.0;               // ||f - f_X||_{KS^p}
    double seminorm = 0.0;
    double derived_constant = 0.0;  // provable for the weighted norm
    double reported_constant = 0.0;    // 2 diam(X), recorded only
    bool ok_derived = true;
    bool ok_reported = true;
};

PoincareReport poincare_report(const MetricMeasureSpace& space, const BallFamily& family,
                               const SampledFunction& f, double p,
                               const SolverOptions& opts = {});

using NormHandle = std::function<double(const SampledFunction&)>;

struct EquivalentNormReport {
    double c_low = 0.0;
    double c_high = 0.0;
    int n_used = 0;
    bool all_finite_positive = true;
};

/// Empirical equivalence ratios of ||.||^* = bullet + KS^{1,p} seminorm
/// against the WS^{1,p} norm over a sample set (zero functions excluded).
EquivalentNormReport equivalent_norm_check(const MetricMeasureSpace& space,
                                           const BallFamily& family,
                                           const std::vector<SampledFunction>& f_set, double p,
                                           const NormHandle& bullet_norm,
                                           const SolverOptions& opts = {});

/// Euclidean grid descriptor; nodes span the unit cube by default.
struct GridSpec {
    int dim = 1;
    int n_per_axis = 2;
    double spacing = 1.0;
    std::vector<double> origin;          // lower corner, size dim
    std::vector<double> cell_mass;       // per node, lexicographic order
    bool probability_mode = true;

    int node_count() const;
    std::vector<double> node_coords(int idx) const;
};

GridSpec make_unit_cube_grid(int dim, int n_per_axis, bool probability_mode = true);

/// Materialize the grid as a metric measure space (Euclidean rule).
MetricMeasureSpace grid_space(const GridSpec& grid);

using MultiIndex = std::vector<int>;

int multi_index_order(const MultiIndex& alpha);
std::vector<MultiIndex> multi_indices_up_to(int dim, int k);

/// D^alpha f by successive central differences, second-order one-sided at the
/// boundary; exact on affine functions everywhere.
std::vector<double> grid_weak_derivative(const GridSpec& grid, const std::vector<double>& f,
                                         const MultiIndex& alpha);

/// Classical W^{k,q} norm on the grid.
double wkp_norm(const GridSpec& grid, const std::vector<double>& f, int k, double q);

/// WS^{k,p} norm with derivative norms taken in KS^p over the grid family.
double wskp_norm(const GridSpec& grid, const BallFamily& family_on_grid,
                 const std::vector<double>& f, int k, double p);

/// Sum over |alpha| <= k of the KS^2 inner products of D^alpha f and D^alpha g.
double wsk2_inner(const GridSpec& grid, const BallFamily& family_on_grid,
                  const std::vector<double>& f, const std::vector<double>& g, int k);

struct EuclidEmbeddingReport {
    double ws_norm = 0.0;
    double w_norm = 0.0;
    bool ok = true;
};

/// ||f||_{WS^{k,q}} <= ||f||_{W^{k,q}} with the same finite differences on both sides.
EuclidEmbeddingReport euclid_embedding_report(const GridSpec& grid,
                                              const BallFamily& family_on_grid,
                                              const std::vector<double>& f, int k, double q);

}  // namespace ks
