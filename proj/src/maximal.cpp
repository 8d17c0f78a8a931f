#include "ks/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "ks/sobolev.hpp"

namespace ks {

namespace {

SampledFunction maximal_impl(const MetricMeasureSpace& space, const SampledFunction& f,
                             double radius_limit, bool unrestricted) {
    int n = space.size();
    SampledFunction mf(n, 0.0);
    std::vector<char> found(n, 0);
    std::vector<int> order(n);
    for (int c = 0; c < n; ++c) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return space.dist(c, a) < space.dist(c, b);
        });
        // group points by distance from c; each group end is one closed ball
        std::vector<double> radius, avg;
        std::vector<int> group_of(n);  // per sorted position
        double mass_acc = 0.0, int_acc = 0.0;
        int i = 0;
        while (i < n) {
            double d = space.dist(c, order[i]);
            int j = i;
            while (j < n && space.dist(c, order[j]) == d) {
                mass_acc += space.mass(order[j]);
                int_acc += std::fabs(f[order[j]]) * space.mass(order[j]);
                ++j;
            }
            int g = int(radius.size());
            for (int k = i; k < j; ++k) group_of[k] = g;
            radius.push_back(d);
            avg.push_back(mass_acc > 0.0 ? int_acc / mass_acc : -1.0);
            i = j;
        }
        // suffix max of admissible ball averages
        int ngroups = int(radius.size());
        std::vector<double> suff(ngroups + 1, -1.0);
        for (int g = ngroups - 1; g >= 0; --g) {
            double v = (radius[g] < radius_limit && avg[g] >= 0.0) ? avg[g] : -1.0;
            suff[g] = std::max(suff[g + 1], v);
        }
        for (int k = 0; k < n; ++k) {
            double v = suff[group_of[k]];
            if (v >= 0.0) {
                int x = order[k];
                mf[x] = std::max(mf[x], v);
                found[x] = 1;
            }
        }
    }
    if (unrestricted)
        for (int x = 0; x < n; ++x)
            if (!found[x])
                throw NoValidBallError("no positive-mass ball contains point '" + space.id(x) +
                                       "'");
    return mf;
}

}  // namespace

SampledFunction maximal_function(const MetricMeasureSpace& space, const SampledFunction& f) {
    return maximal_impl(space, f, std::numeric_limits<double>::infinity(), true);
}

SampledFunction restricted_maximal(const MetricMeasureSpace& space, const SampledFunction& f,
                                   double R) {
    if (!(R > 0.0)) throw BadExponentError("restriction radius must be positive");
    return maximal_impl(space, f, R, false);
}

CoveringSelection greedy_5B(const MetricMeasureSpace& space, const std::vector<InputBall>& balls) {
    CoveringSelection sel;
    std::vector<int> order(balls.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return balls[a].radius > balls[b].radius;  // ties keep input order
    });
    std::vector<char> used(space.size(), 0);
    for (int idx : order) {
        std::vector<int> members = ball_members(space, balls[idx].center, balls[idx].radius);
        bool disjoint = std::none_of(members.begin(), members.end(),
                                     [&](int x) { return used[x]; });
        if (!disjoint) continue;
        for (int x : members) used[x] = 1;
        sel.selected.push_back(idx);
    }
    std::sort(sel.selected.begin(), sel.selected.end());
    return sel;
}

double distribution_function(const MetricMeasureSpace& space, const SampledFunction& f,
                             double t) {
    double acc = 0.0;
    for (int i = 0; i < space.size(); ++i)
        if (f[i] > t) acc += space.mass(i);
    return acc;
}

double distribution_function_geq(const MetricMeasureSpace& space, const SampledFunction& f,
                                 double t) {
    double acc = 0.0;
    for (int i = 0; i < space.size(); ++i)
        if (f[i] >= t) acc += space.mass(i);
    return acc;
}

double Polynomial::operator()(double s) const {
    double acc = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * s + coeffs[k];
    return acc;
}

Polynomial Polynomial::antiderivative() const {
    Polynomial out;
    out.coeffs.assign(coeffs.size() + 1, 0.0);
    for (std::size_t k = 0; k < coeffs.size(); ++k) out.coeffs[k + 1] = coeffs[k] / double(k + 1);
    return out;
}

LayerCakeReport layer_cake(const MetricMeasureSpace& space, const SampledFunction& f,
                           const Polynomial& psi) {
    for (double v : f)
        if (v < 0.0) throw NegativeInputError("layer cake requires a nonnegative function");
    Polynomial big_psi = psi.antiderivative();
    LayerCakeReport rep;
    for (int i = 0; i < space.size(); ++i) rep.lhs += big_psi(f[i]) * space.mass(i);

    std::set<double> breaks{0.0};
    for (double v : f) breaks.insert(v);
    std::vector<double> b(breaks.begin(), breaks.end());
    for (std::size_t i = 0; i + 1 < b.size(); ++i)
        rep.rhs += (big_psi(b[i + 1]) - big_psi(b[i])) * distribution_function(space, f, b[i]);
    rep.ok = std::fabs(rep.lhs - rep.rhs) <= 1e-12 * std::max(1.0, std::fabs(rep.lhs));
    return rep;
}

WeakTypeReport weak_type_report(const MetricMeasureSpace& space, const BallFamily& family,
                                const SampledFunction& f, const std::vector<double>& t_grid) {
    WeakTypeReport rep;
    double d = doubling_constant(space);
    rep.c_bound = d * d * d;
    SampledFunction mf = maximal_function(space, f);
    double l1 = lp_norm(space, f, 1.0);
    double ks1 = ks_norm(space, family, f, 1.0);

    std::vector<double> grid = t_grid;
    if (grid.empty()) {
        std::set<double> breaks;
        for (int i = 0; i < space.size(); ++i)
            if (mf[i] > 0.0) breaks.insert(mf[i]);
        grid.assign(breaks.begin(), breaks.end());
    }
    double sup = 0.0;
    for (double t : grid)
        if (t > 0.0) sup = std::max(sup, t * distribution_function_geq(space, mf, t));
    rep.sup_ratio = l1 > 0.0 ? sup / l1 : 0.0;
    rep.ks1_ratio = ks1 > 0.0 ? sup / ks1 : 0.0;
    rep.ok = rep.sup_ratio <= rep.c_bound * (1.0 + 1e-10);
    return rep;
}

StrongTypeReport strong_type_report(const MetricMeasureSpace& space, const BallFamily& family,
                                    const SampledFunction& f, double p) {
    if (!(p > 1.0) || p == kInf) throw BadExponentError("strong-type report requires 1 < p < inf");
    StrongTypeReport rep;
    double d = doubling_constant(space);
    rep.cp_bound = 2.0 * std::pow(d * d * d * p / (p - 1.0), 1.0 / p);
    SampledFunction mf = maximal_function(space, f);
    rep.ks_of_mf = ks_norm(space, family, mf, p);
    rep.lp_of_mf = lp_norm(space, mf, p);
    rep.lp_of_f = lp_norm(space, f, p);
    double ks_f = ks_norm(space, family, f, p);
    rep.ks_ratio = ks_f > 0.0 ? rep.ks_of_mf / ks_f : 0.0;
    rep.lp_chain_ok = rep.ks_of_mf <= rep.lp_of_mf * (1.0 + 1e-10) + 1e-14 &&
                      rep.lp_of_mf <= rep.cp_bound * rep.lp_of_f * (1.0 + 1e-10) + 1e-14;
    return rep;
}

WsMaximalReport ws_maximal_report(const MetricMeasureSpace& space, const BallFamily& family,
                                  const SampledFunction& f, double p,
                                  const SolverOptions& opts) {
    if (!(p > 1.0)) throw BadExponentError("WS maximal report requires p > 1");
    WsMaximalReport rep;
    SampledFunction mf = maximal_function(space, f);
    rep.ws_of_f = ws1p_norm(space, family, f, p, opts).value;
    rep.ws_of_mf = ws1p_norm(space, family, mf, p, opts).value;
    rep.ratio = rep.ws_of_f > 0.0 ? rep.ws_of_mf / rep.ws_of_f : 0.0;
    return rep;
}

}  // namespace ks
