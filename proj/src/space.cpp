#include "ks/space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace ks {

namespace {

double euclid(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        double d = a[k] - b[k];
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace

void MetricMeasureSpace::validate_masses() {
    if (n_ == 0) throw EmptySpaceError("space must contain at least one point");
    if (int(mass_.size()) != n_)
        throw NegativeMassError("measure vector length does not match point count");
    total_mass_ = 0.0;
    for (int i = 0; i < n_; ++i) {
        if (!(mass_[i] >= 0.0) || !std::isfinite(mass_[i]))
            throw NegativeMassError("mass atom at point '" + ids_[i] + "' is negative or non-finite");
        total_mass_ += mass_[i];
    }
    if (!(total_mass_ > 0.0) || !std::isfinite(total_mass_))
        throw NegativeMassError("total mass must be positive and finite");
}

void MetricMeasureSpace::validate_metric(bool check_triangles) {
    for (int i = 0; i < n_; ++i) {
        if (dist(i, i) != 0.0)
            throw NonMetricError("dist(" + ids_[i] + "," + ids_[i] + ") != 0", i, i, -1);
        for (int j = 0; j < n_; ++j) {
            double d = dist(i, j);
            if (!std::isfinite(d) || d < 0.0)
                throw NonMetricError("negative or non-finite distance (" + ids_[i] + "," + ids_[j] + ")",
                                     i, j, -1);
            if (i != j && d == 0.0)
                throw NonMetricError("distinct points " + ids_[i] + "," + ids_[j] + " at distance 0",
                                     i, j, -1);
            if (dist(j, i) != d)
                throw NonMetricError("asymmetric distance (" + ids_[i] + "," + ids_[j] + ")", i, j, -1);
        }
    }
    if (!check_triangles) return;
    // Exhaustive triangle scan; intended scale is <= 2000 points.
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            if (j == i) continue;
            double dij = dist(i, j);
            for (int k = 0; k < n_; ++k) {
                double lhs = dist(i, k);
                double slack = 1e-12 * std::max(1.0, lhs);
                if (lhs > dij + dist(j, k) + slack)
                    throw NonMetricError("triangle inequality fails for (" + ids_[i] + "," +
                                             ids_[j] + "," + ids_[k] + ")",
                                         i, j, k);
            }
        }
}

MetricMeasureSpace MetricMeasureSpace::from_matrix(std::vector<std::string> ids,
                                                   std::vector<double> dist_row_major,
                                                   std::vector<double> mass) {
    MetricMeasureSpace s;
    s.n_ = int(ids.size());
    s.ids_ = std::move(ids);
    s.mass_ = std::move(mass);
    s.validate_masses();
    if (dist_row_major.size() != std::size_t(s.n_) * s.n_)
        throw NonMetricError("distance table has wrong shape", -1, -1, -1);
    s.dist_ = std::move(dist_row_major);
    s.validate_metric(true);
    return s;
}

MetricMeasureSpace MetricMeasureSpace::from_coords(std::vector<std::string> ids,
                                                   std::vector<std::vector<double>> coords,
                                                   std::vector<double> mass) {
    MetricMeasureSpace s;
    s.n_ = int(ids.size());
    s.ids_ = std::move(ids);
    s.mass_ = std::move(mass);
    s.validate_masses();
    if (int(coords.size()) != s.n_)
        throw NonMetricError("coordinate list length does not match point count", -1, -1, -1);
    std::size_t dim = coords.empty() ? 0 : coords[0].size();
    for (const auto& c : coords)
        if (c.size() != dim)
            throw NonMetricError("inconsistent coordinate dimensions", -1, -1, -1);
    s.dist_.assign(std::size_t(s.n_) * s.n_, 0.0);
    for (int i = 0; i < s.n_; ++i)
        for (int j = i + 1; j < s.n_; ++j) {
            double d = euclid(coords[i], coords[j]);
            s.dist_[std::size_t(i) * s.n_ + j] = d;
            s.dist_[std::size_t(j) * s.n_ + i] = d;
        }
    s.coords_ = std::move(coords);
    // Euclidean distances satisfy symmetry and triangles by construction;
    // positivity of distinct points still needs a check.
    s.validate_metric(false);
    return s;
}

double MetricMeasureSpace::min_positive_distance() const {
    double best = 0.0;
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j) {
            double d = dist(i, j);
            if (d > 0.0 && (best == 0.0 || d < best)) best = d;
        }
    return best;
}

MetricMeasureSpace MetricMeasureSpace::normalized() const {
    MetricMeasureSpace s(*this);
    for (double& m : s.mass_) m /= total_mass_;
    s.total_mass_ = 1.0;
    return s;
}

int MetricMeasureSpace::index_of(const std::string& id) const {
    for (int i = 0; i < n_; ++i)
        if (ids_[i] == id) return i;
    throw IndexOutOfRangeError("unknown point id '" + id + "'");
}

double diameter(const MetricMeasureSpace& space) {
    double best = 0.0;
    for (int i = 0; i < space.size(); ++i)
        for (int j = i + 1; j < space.size(); ++j) best = std::max(best, space.dist(i, j));
    return best;
}

double doubling_constant(const MetricMeasureSpace& space) {
    int n = space.size();
    if (n == 1) return 1.0;
    std::set<double> radii;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (space.dist(i, j) > 0.0) radii.insert(space.dist(i, j));
    double best = 1.0;
    for (int c = 0; c < n; ++c) {
        // sorted distances from c with prefix masses
        std::vector<std::pair<double, double>> dm(n);
        for (int j = 0; j < n; ++j) dm[j] = {space.dist(c, j), space.mass(j)};
        std::sort(dm.begin(), dm.end());
        std::vector<double> ds(n), pm(n);
        double acc = 0.0;
        for (int j = 0; j < n; ++j) {
            acc += dm[j].second;
            ds[j] = dm[j].first;
            pm[j] = acc;
        }
        auto ball_mass = [&](double r) {
            auto it = std::upper_bound(ds.begin(), ds.end(), r);
            if (it == ds.begin()) return 0.0;
            return pm[std::size_t(it - ds.begin()) - 1];
        };
        for (double r : radii) {
            double denom = ball_mass(r);
            if (denom <= 0.0) continue;
            best = std::max(best, ball_mass(2.0 * r) / denom);
        }
    }
    return best;
}

std::vector<int> ball_members(const MetricMeasureSpace& space, int center, double radius) {
    std::vector<int> out;
    for (int j = 0; j < space.size(); ++j)
        if (space.dist(center, j) <= radius) out.push_back(j);
    return out;
}

RadiusScheme default_scheme(const MetricMeasureSpace& space) {
    RadiusScheme scheme;
    double dmin = space.min_positive_distance();
    if (dmin == 0.0) {
        scheme.radius_grid = {1.0};
        return scheme;
    }
    double diam = diameter(space);
    double r = dmin / 2.0;
    scheme.radius_grid.push_back(r);
    while (r < diam) {
        r *= 2.0;
        scheme.radius_grid.push_back(r);
    }
    return scheme;
}

void BallFamily::finalize(const MetricMeasureSpace& space) {
    ball_masses_.clear();
    full_ball_index_ = -1;
    std::set<int> singleton_hits;
    for (int r = 0; r < int(balls_.size()); ++r) {
        const Ball& b = balls_[r];
        double m = 0.0;
        for (int x : b.members) m += space.mass(x);
        ball_masses_.push_back(m);
        if (int(b.members.size()) == space.size() && full_ball_index_ < 0) full_ball_index_ = r;
        if (b.members.size() == 1) singleton_hits.insert(b.members[0]);
    }
    has_full_ball_ = full_ball_index_ >= 0;
    covers_singletons_ = int(singleton_hits.size()) == space.size();
    double sum = 0.0;
    for (double w : weights_) {
        if (!(w > 0.0)) throw BadRadiusGridError("ball weights must be positive");
        sum += w;
    }
    for (double& w : weights_) w /= sum;
}

BallFamily enumerate_balls(const MetricMeasureSpace& space, const RadiusScheme& scheme) {
    const auto& grid = scheme.radius_grid;
    if (grid.empty()) throw BadRadiusGridError("radius_grid is empty");
    for (std::size_t j = 1; j < grid.size(); ++j)
        if (!(grid[j] > grid[j - 1]))
            throw BadRadiusGridError("radius_grid is not strictly increasing");
    double dmin = space.min_positive_distance();
    if (dmin > 0.0 && !(grid.front() < dmin))
        throw BadRadiusGridError("min radius-grid entry must be below the minimal positive distance");
    if (grid.front() <= 0.0) throw BadRadiusGridError("radii must be positive");
    if (!(grid.back() >= diameter(space)))
        throw BadRadiusGridError("max radius-grid entry must reach the diameter");

    int n = space.size();
    int m = int(grid.size());
    BallFamily fam;
    std::map<std::vector<int>, int> seen;  // member set -> position
    // Diagonal (Cantor-pairing) order over (center, radius index).
    for (int s = 0; s <= n + m - 2; ++s) {
        for (int c = 0; c < n; ++c) {
            int j = s - c;
            if (j < 0 || j >= m) continue;
            Ball b{c, grid[j], ball_members(space, c, grid[j])};
            auto [it, inserted] = seen.emplace(b.members, int(fam.balls_.size()));
            if (inserted) fam.balls_.push_back(std::move(b));
        }
    }
    fam.weights_.resize(fam.balls_.size());
    for (std::size_t i = 0; i < fam.weights_.size(); ++i)
        fam.weights_[i] = scheme.weight_rule == WeightRule::Geometric
                              ? std::pow(scheme.geometric_ratio, double(i))
                              : 1.0;
    fam.finalize(space);
    return fam;
}

BallFamily enumerate_balls(const MetricMeasureSpace& space) {
    return enumerate_balls(space, default_scheme(space));
}

BallFamily make_family(const MetricMeasureSpace& space,
                       const std::vector<std::pair<int, double>>& center_radius,
                       const std::vector<double>& weights) {
    if (center_radius.empty() || center_radius.size() != weights.size())
        throw BadRadiusGridError("balls and weights must be nonempty and aligned");
    BallFamily fam;
    for (const auto& [c, r] : center_radius) {
        if (c < 0 || c >= space.size()) throw IndexOutOfRangeError("ball center out of range");
        fam.balls_.push_back(Ball{c, r, ball_members(space, c, r)});
    }
    fam.weights_ = weights;
    fam.finalize(space);
    return fam;
}

double ball_integral(const MetricMeasureSpace& space, const BallFamily& family, int r,
                     const SampledFunction& f) {
    if (r < 0 || r >= family.size()) throw IndexOutOfRangeError("ball index out of range");
    double acc = 0.0;
    for (int x : family.balls()[r].members) acc += f[x] * space.mass(x);
    return acc;
}

}  // namespace ks
