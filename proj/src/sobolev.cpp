#include "ks/sobolev.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ks {

double average(const MetricMeasureSpace& space, const SampledFunction& f) {
    if (!(space.total_mass() > 0.0)) throw ZeroTotalMassError("total mass must be positive");
    double acc = 0.0;
    for (int i = 0; i < space.size(); ++i) acc += f[i] * space.mass(i);
    return acc / space.total_mass();
}

Ws1pResult ws1p_norm(const MetricMeasureSpace& space, const BallFamily& family,
                     const SampledFunction& f, double p, const SolverOptions& opts) {
    Ws1pResult out;
    out.p1_warning = (p == 1.0);
    out.ks_part = ks_norm(space, family, f, p);
    SeminormResult sem = ks1p_seminorm(space, family, f, p, opts);
    out.seminorm_part = sem.value;
    out.witness = std::move(sem.witness);
    out.value = out.ks_part + out.seminorm_part;
    return out;
}

PoincareReport poincare_report(const MetricMeasureSpace& space, const BallFamily& family,
                               const SampledFunction& f, double p, const SolverOptions& opts) {
    if (!family.has_full_ball())
        throw MissingFullBallError("Poincare report needs a ball containing every point");
    PoincareReport rep;
    double favg = average(space, f);
    SampledFunction centered(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) centered[i] = f[i] - favg;
    rep.lhs = ks_norm(space, family, centered, p);

    SeminormResult sem = ks1p_seminorm(space, family, f, p, opts);
    rep.seminorm = sem.value;

    double diam = diameter(space);
    SampledFunction ones(f.size(), 1.0);
    double ones_norm = ks_norm(space, family, ones, p);
    double tau_star = family.weight(family.full_ball_index());
    double tau_factor = (p == kInf) ? 1.0 : std::pow(tau_star, -1.0 / p);
    rep.derived_constant = diam * (1.0 + tau_factor * ones_norm / space.total_mass());
    rep.reported_constant = 2.0 * diam;

    double slack = 1.0 + std::max(opts.tolerance, 1e-12);
    rep.ok_derived = rep.lhs <= rep.derived_constant * rep.seminorm * slack + 1e-14;
    rep.ok_reported = rep.lhs <= rep.reported_constant * rep.seminorm * slack + 1e-14;
    return rep;
}

EquivalentNormReport equivalent_norm_check(const MetricMeasureSpace& space,
                                           const BallFamily& family,
                                           const std::vector<SampledFunction>& f_set, double p,
                                           const NormHandle& bullet_norm,
                                           const SolverOptions& opts) {
    EquivalentNormReport rep;
    rep.c_low = kInf;
    rep.c_high = 0.0;
    for (const auto& f : f_set) {
        double ks_part = ks_norm(space, family, f, p);
        if (ks_part == 0.0 && lp_norm(space, f, kInf) == 0.0) continue;  // zero excluded
        double sem = ks1p_seminorm(space, family, f, p, opts).value;
        double ws = ks_part + sem;
        double star = bullet_norm(f) + sem;
        if (!(ws > 0.0)) continue;
        double ratio = star / ws;
        rep.c_low = std::min(rep.c_low, ratio);
        rep.c_high = std::max(rep.c_high, ratio);
        ++rep.n_used;
        if (!std::isfinite(ratio) || !(ratio > 0.0)) rep.all_finite_positive = false;
    }
    if (rep.n_used == 0) { rep.c_low = rep.c_high = 1.0; }
    return rep;
}

int GridSpec::node_count() const {
    int c = 1;
    for (int a = 0; a < dim; ++a) c *= n_per_axis;
    return c;
}

std::vector<double> GridSpec::node_coords(int idx) const {
    std::vector<double> x(dim, 0.0);
    for (int a = dim - 1; a >= 0; --a) {
        x[a] = origin[a] + spacing * (idx % n_per_axis);
        idx /= n_per_axis;
    }
    return x;
}

GridSpec make_unit_cube_grid(int dim, int n_per_axis, bool probability_mode) {
    if (dim < 1 || n_per_axis < 2) throw GridTooSmallError("grid needs dim >= 1, n >= 2");
    GridSpec g;
    g.dim = dim;
    g.n_per_axis = n_per_axis;
    g.spacing = 1.0 / double(n_per_axis - 1);
    g.origin.assign(dim, 0.0);
    g.probability_mode = probability_mode;
    int count = g.node_count();
    g.cell_mass.assign(count, probability_mode ? 1.0 / double(count) : 1.0);
    return g;
}

MetricMeasureSpace grid_space(const GridSpec& grid) {
    int count = grid.node_count();
    std::vector<std::string> ids(count);
    std::vector<std::vector<double>> coords(count);
    for (int i = 0; i < count; ++i) {
        ids[i] = "n" + std::to_string(i);
        coords[i] = grid.node_coords(i);
    }
    return MetricMeasureSpace::from_coords(std::move(ids), std::move(coords), grid.cell_mass);
}

int multi_index_order(const MultiIndex& alpha) {
    int s = 0;
    for (int a : alpha) s += a;
    return s;
}

namespace {

void enumerate_rec(int dim, int k, MultiIndex& cur, std::vector<MultiIndex>& out) {
    if (int(cur.size()) == dim) {
        out.push_back(cur);
        return;
    }
    int used = multi_index_order(cur);
    for (int a = 0; a + used <= k; ++a) {
        cur.push_back(a);
        enumerate_rec(dim, k, cur, out);
        cur.pop_back();
    }
}

// one central-difference pass along `axis`
std::vector<double> diff_axis(const GridSpec& grid, const std::vector<double>& f, int axis) {
    int n = grid.n_per_axis;
    double h = grid.spacing;
    std::vector<double> out(f.size(), 0.0);
    int stride = 1;
    for (int a = axis + 1; a < grid.dim; ++a) stride *= n;
    int count = grid.node_count();
    for (int base = 0; base < count; ++base) {
        int pos = (base / stride) % n;
        if (pos != 0) continue;
        // base is the start of a line along `axis`
        for (int i = 0; i < n; ++i) {
            int at = base + i * stride;
            double d;
            if (i == 0)
                d = (-3.0 * f[at] + 4.0 * f[at + stride] - f[at + 2 * stride]) / (2.0 * h);
            else if (i == n - 1)
                d = (3.0 * f[at] - 4.0 * f[at - stride] + f[at - 2 * stride]) / (2.0 * h);
            else
                d = (f[at + stride] - f[at - stride]) / (2.0 * h);
            out[at] = d;
        }
    }
    return out;
}

double ks_norm_on_grid(const GridSpec& grid, const BallFamily& family,
                       const std::vector<double>& f, double p) {
    auto integral = [&](int r) {
        double acc = 0.0;
        for (int x : family.balls()[r].members) acc += f[x] * grid.cell_mass[x];
        return acc;
    };
    if (p == kInf) {
        double best = 0.0;
        for (int r = 0; r < family.size(); ++r) best = std::max(best, std::fabs(integral(r)));
        return best;
    }
    double acc = 0.0;
    for (int r = 0; r < family.size(); ++r)
        acc += family.weight(r) * std::pow(std::fabs(integral(r)), p);
    return std::pow(acc, 1.0 / p);
}

double lq_norm_on_grid(const GridSpec& grid, const std::vector<double>& f, double q) {
    if (q == kInf) {
        double best = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i)
            if (grid.cell_mass[i] > 0.0) best = std::max(best, std::fabs(f[i]));
        return best;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        acc += std::pow(std::fabs(f[i]), q) * grid.cell_mass[i];
    return std::pow(acc, 1.0 / q);
}

}  // namespace

std::vector<MultiIndex> multi_indices_up_to(int dim, int k) {
    std::vector<MultiIndex> out;
    MultiIndex cur;
    enumerate_rec(dim, k, cur, out);
    return out;
}

std::vector<double> grid_weak_derivative(const GridSpec& grid, const std::vector<double>& f,
                                         const MultiIndex& alpha) {
    if (int(alpha.size()) != grid.dim)
        throw GridTooSmallError("multi-index dimension mismatch");
    int order = multi_index_order(alpha);
    if (order > 0 && grid.n_per_axis < 2 * order + 1)
        throw GridTooSmallError("grid resolution too small for derivative order " +
                                std::to_string(order));
    std::vector<double> out = f;
    for (int a = 0; a < grid.dim; ++a)
        for (int rep = 0; rep < alpha[a]; ++rep) out = diff_axis(grid, out, a);
    return out;
}

double wkp_norm(const GridSpec& grid, const std::vector<double>& f, int k, double q) {
    auto alphas = multi_indices_up_to(grid.dim, k);
    if (q == kInf) {
        double best = 0.0;
        for (const auto& alpha : alphas)
            best = std::max(best, lq_norm_on_grid(grid, grid_weak_derivative(grid, f, alpha), kInf));
        return best;
    }
    double acc = 0.0;
    for (const auto& alpha : alphas)
        acc += std::pow(lq_norm_on_grid(grid, grid_weak_derivative(grid, f, alpha), q), q);
    return std::pow(acc, 1.0 / q);
}

double wskp_norm(const GridSpec& grid, const BallFamily& family_on_grid,
                 const std::vector<double>& f, int k, double p) {
    auto alphas = multi_indices_up_to(grid.dim, k);
    if (p == kInf) {
        double best = 0.0;
        for (const auto& alpha : alphas)
            best = std::max(best, ks_norm_on_grid(grid, family_on_grid,
                                                  grid_weak_derivative(grid, f, alpha), kInf));
        return best;
    }
    double acc = 0.0;
    for (const auto& alpha : alphas)
        acc += std::pow(
            ks_norm_on_grid(grid, family_on_grid, grid_weak_derivative(grid, f, alpha), p), p);
    return std::pow(acc, 1.0 / p);
}

double wsk2_inner(const GridSpec& grid, const BallFamily& family_on_grid,
                  const std::vector<double>& f, const std::vector<double>& g, int k) {
    auto alphas = multi_indices_up_to(grid.dim, k);
    double acc = 0.0;
    for (const auto& alpha : alphas) {
        std::vector<double> df = grid_weak_derivative(grid, f, alpha);
        std::vector<double> dg = grid_weak_derivative(grid, g, alpha);
        for (int r = 0; r < family_on_grid.size(); ++r) {
            double fi = 0.0, gi = 0.0;
            for (int x : family_on_grid.balls()[r].members) {
                fi += df[x] * grid.cell_mass[x];
                gi += dg[x] * grid.cell_mass[x];
            }
            acc += family_on_grid.weight(r) * fi * gi;
        }
    }
    return acc;
}

EuclidEmbeddingReport euclid_embedding_report(const GridSpec& grid,
                                              const BallFamily& family_on_grid,
                                              const std::vector<double>& f, int k, double q) {
    EuclidEmbeddingReport rep;
    rep.ws_norm = wskp_norm(grid, family_on_grid, f, k, q);
    rep.w_norm = wkp_norm(grid, f, k, q);
    rep.ok = rep.ws_norm <= rep.w_norm * (1.0 + 1e-10) + 1e-14;
    return rep;
}

}  // namespace ks
