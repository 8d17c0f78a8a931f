#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ks/errors.hpp"

namespace ks {

/// Values sampled at the points of a space, aligned to point order.
using SampledFunction = std::vector<double>;

/// Finite metric measure space: point ids, pairwise distances, mass atoms.
/// Immutable after construction; the factories validate the metric axioms.
class MetricMeasureSpace {
public:
    static MetricMeasureSpace from_matrix(std::vector<std::string> ids,
                                          std::vector<double> dist_row_major,
                                          std::vector<double> mass);
    static MetricMeasureSpace from_coords(std::vector<std::string> ids,
                                          std::vector<std::vector<double>> coords,
                                          std::vector<double> mass);

    int size() const { return n_; }
    const std::string& id(int i) const { return ids_[i]; }
    const std::vector<std::string>& ids() const { return ids_; }
    double dist(int i, int j) const { return dist_[std::size_t(i) * n_ + j]; }
    double mass(int i) const { return mass_[i]; }
    const std::vector<double>& masses() const { return mass_; }
    double total_mass() const { return total_mass_; }

    /// Smallest positive pairwise distance; 0 when the space has one point.
    double min_positive_distance() const;

    /// Node coordinates when built from the Euclidean rule, else empty.
    const std::vector<std::vector<double>>& coords() const { return coords_; }

    /// Copy with masses rescaled so the total measure is 1.
    MetricMeasureSpace normalized() const;

    int index_of(const std::string& id) const;

private:
    MetricMeasureSpace() = default;
    void validate_masses();
    void validate_metric(bool check_triangles);

    int n_ = 0;
    std::vector<std::string> ids_;
    std::vector<double> dist_;
    std::vector<double> mass_;
    double total_mass_ = 0.0;
    std::vector<std::vector<double>> coords_;
};

double diameter(const MetricMeasureSpace& space);

/// Max over centers x and radii r drawn from the pairwise-distance set of
/// mu(B(x,2r)) / mu(B(x,r)), skipping balls of zero measure. 1 for one point.
double doubling_constant(const MetricMeasureSpace& space);

struct Ball {
    int center;
    double radius;
    std::vector<int> members;  // sorted point indices with dist(center, .) <= radius
};

std::vector<int> ball_members(const MetricMeasureSpace& space, int center, double radius);

enum class WeightRule { Geometric, Uniform };

struct RadiusScheme {
    std::vector<double> radius_grid;  // strictly increasing
    WeightRule weight_rule = WeightRule::Geometric;
    double geometric_ratio = 0.5;
};

/// Geometric ladder r_j = r_min 2^j with r_min = (min positive distance)/2,
/// extended until r_j >= diameter. {1} for a single point.
RadiusScheme default_scheme(const MetricMeasureSpace& space);

/// Ordered finite ball family with weights tau_r summing to 1.
class BallFamily {
public:
    const std::vector<Ball>& balls() const { return balls_; }
    const std::vector<double>& weights() const { return weights_; }
    double weight(int r) const { return weights_[r]; }
    int size() const { return int(balls_.size()); }
    bool has_full_ball() const { return has_full_ball_; }
    bool covers_singletons() const { return covers_singletons_; }
    /// Index of the first ball containing every point, or -1.
    int full_ball_index() const { return full_ball_index_; }
    /// mu(B_r) for each ball.
    const std::vector<double>& ball_masses() const { return ball_masses_; }

    friend BallFamily enumerate_balls(const MetricMeasureSpace&, const RadiusScheme&);
    friend BallFamily make_family(const MetricMeasureSpace&,
                                  const std::vector<std::pair<int, double>>&,
                                  const std::vector<double>&);

private:
    void finalize(const MetricMeasureSpace& space);

    std::vector<Ball> balls_;
    std::vector<double> weights_;
    std::vector<double> ball_masses_;
    bool has_full_ball_ = false;
    bool covers_singletons_ = false;
    int full_ball_index_ = -1;
};

/// Deterministic diagonal enumeration over (center, radius) with duplicate
/// member sets collapsed to their first occurrence.
BallFamily enumerate_balls(const MetricMeasureSpace& space, const RadiusScheme& scheme);

BallFamily enumerate_balls(const MetricMeasureSpace& space);

/// Explicit family from (center index, radius) pairs and weights.
BallFamily make_family(const MetricMeasureSpace& space,
                       const std::vector<std::pair<int, double>>& center_radius,
                       const std::vector<double>& weights);

/// Integral of f over ball r: sum of f(x) mu({x}) over members, fixed order.
double ball_integral(const MetricMeasureSpace& space, const BallFamily& family, int r,
                     const SampledFunction& f);

}  // namespace ks
