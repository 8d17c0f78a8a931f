#include "ks/norms.hpp"

#include <algorithm>
#include <cmath>

namespace ks {

double conjugate_exponent(double p) {
    if (!(p >= 1.0)) throw BadExponentError("exponent must satisfy p >= 1");
    if (p == 1.0) return kInf;
    if (p == kInf) return 1.0;
    return p / (p - 1.0);
}

double lp_norm(const MetricMeasureSpace& space, const SampledFunction& f, double q) {
    if (!(q >= 1.0)) throw BadExponentError("exponent must satisfy q >= 1");
    if (q == kInf) {
        double best = 0.0;
        for (int i = 0; i < space.size(); ++i)
            if (space.mass(i) > 0.0) best = std::max(best, std::fabs(f[i]));
        return best;
    }
    double acc = 0.0;
    for (int i = 0; i < space.size(); ++i)
        acc += std::pow(std::fabs(f[i]), q) * space.mass(i);
    return std::pow(acc, 1.0 / q);
}

double ks_norm(const MetricMeasureSpace& space, const BallFamily& family,
               const SampledFunction& f, double p) {
    if (!(p >= 1.0)) throw BadExponentError("exponent must satisfy p >= 1");
    if (p == kInf) {
        double best = 0.0;
        for (int r = 0; r < family.size(); ++r)
            best = std::max(best, std::fabs(ball_integral(space, family, r, f)));
        return best;
    }
    double acc = 0.0;
    for (int r = 0; r < family.size(); ++r)
        acc += family.weight(r) * std::pow(std::fabs(ball_integral(space, family, r, f)), p);
    return std::pow(acc, 1.0 / p);
}

double ks_inner(const MetricMeasureSpace& space, const BallFamily& family,
                const SampledFunction& f, const SampledFunction& g) {
    double acc = 0.0;
    for (int r = 0; r < family.size(); ++r)
        acc += family.weight(r) * ball_integral(space, family, r, f) *
               ball_integral(space, family, r, g);
    return acc;
}

double embedding_constant(const MetricMeasureSpace& space, const BallFamily& family,
                          double p, double q) {
    if (!(p >= 1.0) || !(q >= 1.0)) throw BadExponentError("exponents must be >= 1");
    const auto& mb = family.ball_masses();
    if (q < kInf || p == kInf) {
        double best = 0.0;
        double expo = (q == kInf) ? 1.0 : 1.0 - 1.0 / q;
        for (double m : mb) best = std::max(best, std::pow(m, expo));
        return best;
    }
    // q = inf, p < inf: constant (sum tau_r mu(B_r)^p)^{1/p}
    double acc = 0.0;
    for (int r = 0; r < family.size(); ++r)
        acc += family.weight(r) * std::pow(mb[r], p);
    return std::pow(acc, 1.0 / p);
}

HolderReport holder_report(const MetricMeasureSpace& space, const BallFamily& family,
                           const SampledFunction& f, const SampledFunction& g, double p) {
    if (!(p > 1.0) || p == kInf)
        throw BadExponentError("Hoelder report requires 1 < p < inf");
    double q = conjugate_exponent(p);
    HolderReport rep;
    SampledFunction fg(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) fg[i] = f[i] * g[i];
    rep.ks1_of_product = ks_norm(space, family, fg, 1.0);
    rep.ks_p_of_f = ks_norm(space, family, f, p);
    rep.ks_q_of_g = ks_norm(space, family, g, q);
    rep.lp_of_f = lp_norm(space, f, p);
    rep.lq_of_g = lp_norm(space, g, q);
    for (int r = 0; r < family.size(); ++r) {
        double lhs = std::fabs(ball_integral(space, family, r, fg));
        double fp = 0.0, gq = 0.0;
        for (int x : family.balls()[r].members) {
            fp += std::pow(std::fabs(f[x]), p) * space.mass(x);
            gq += std::pow(std::fabs(g[x]), q) * space.mass(x);
        }
        double rhs = std::pow(fp, 1.0 / p) * std::pow(gq, 1.0 / q);
        if (lhs > rhs + 1e-10 * std::max(1.0, rhs)) rep.per_ball_ok = false;
    }
    rep.product_form_ok =
        rep.ks1_of_product <= rep.ks_p_of_f * rep.ks_q_of_g +
                                  1e-10 * std::max(1.0, rep.ks_p_of_f * rep.ks_q_of_g);
    return rep;
}

}  // namespace ks
