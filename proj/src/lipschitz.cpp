#include "ks/lipschitz.hpp"

#include <algorithm>
#include <cmath>

#include "ks/rng.hpp"

namespace ks {

double lip_constant(const MetricMeasureSpace& space, const SampledFunction& f) {
    double best = 0.0;
    for (int i = 0; i < space.size(); ++i)
        for (int j = i + 1; j < space.size(); ++j) {
            double d = space.dist(i, j);
            if (d > 0.0) best = std::max(best, std::fabs(f[i] - f[j]) / d);
        }
    return best;
}

double slope(const MetricMeasureSpace& space, const SampledFunction& f, int x, double h) {
    if (!(h > 0.0)) throw BadExponentError("neighborhood radius must be positive");
    double best = 0.0;
    for (int y = 0; y < space.size(); ++y) {
        if (y == x) continue;
        double d = space.dist(x, y);
        if (d > 0.0 && d <= h) best = std::max(best, std::fabs(f[y] - f[x]) / d);
    }
    return best;
}

double witness_residual(const MetricMeasureSpace& space, const SampledFunction& f,
                        const std::vector<double>& g) {
    double worst = 0.0;
    for (int i = 0; i < space.size(); ++i) {
        if (space.mass(i) <= 0.0) continue;
        for (int j = i + 1; j < space.size(); ++j) {
            if (space.mass(j) <= 0.0) continue;
            double d = space.dist(i, j);
            if (d <= 0.0) continue;
            worst = std::max(worst, std::fabs(f[i] - f[j]) - d * (g[i] + g[j]));
        }
    }
    return std::max(worst, 0.0);
}

GradientWitness feasible_envelope(const MetricMeasureSpace& space, const SampledFunction& f) {
    GradientWitness w;
    w.values.assign(f.size(), 0.0);
    for (int i = 0; i < space.size(); ++i)
        for (int j = 0; j < space.size(); ++j) {
            if (j == i) continue;
            double d = space.dist(i, j);
            if (d > 0.0) w.values[i] = std::max(w.values[i], std::fabs(f[i] - f[j]) / d);
        }
    w.feasibility_residual = 0.0;
    return w;
}

namespace {

// Convex program: minimize ||g||_{KS^p} over g >= 0 with
// g(x) + g(y) >= |f(x)-f(y)| / d(x,y) on positive-mass pairs.
struct WitnessProblem {
    const MetricMeasureSpace& space;
    const BallFamily& family;
    double p;

    std::vector<int> active;                                     // positive-mass points
    std::vector<std::vector<std::pair<int, double>>> inc;        // point -> (ball, mass coeff)
    struct Cons { int x, y; double c; };
    std::vector<Cons> cons;
    std::vector<std::vector<std::pair<int, double>>> cons_of;    // point -> (other, c)
    std::vector<double> tau;
    int nballs = 0;

    WitnessProblem(const MetricMeasureSpace& sp, const BallFamily& fam,
                   const SampledFunction& f, double p_)
        : space(sp), family(fam), p(p_) {
        int n = sp.size();
        inc.resize(n);
        cons_of.resize(n);
        nballs = fam.size();
        tau = fam.weights();
        for (int i = 0; i < n; ++i)
            if (sp.mass(i) > 0.0) active.push_back(i);
        for (int r = 0; r < nballs; ++r)
            for (int x : fam.balls()[r].members)
                if (sp.mass(x) > 0.0) inc[x].push_back({r, sp.mass(x)});
        for (std::size_t a = 0; a < active.size(); ++a)
            for (std::size_t b = a + 1; b < active.size(); ++b) {
                int x = active[a], y = active[b];
                double d = sp.dist(x, y);
                if (d <= 0.0) continue;
                double c = std::fabs(f[x] - f[y]) / d;
                if (c <= 0.0) continue;
                cons.push_back({x, y, c});
                cons_of[x].push_back({y, c});
                cons_of[y].push_back({x, c});
            }
    }

    std::vector<double> ball_sums(const std::vector<double>& g) const {
        std::vector<double> s(nballs, 0.0);
        for (int x : active)
            for (auto [r, m] : inc[x]) s[r] += m * g[x];
        return s;
    }

    double value(const std::vector<double>& s) const {
        if (p == kInf) {
            double best = 0.0;
            for (double v : s) best = std::max(best, v);
            return best;
        }
        double acc = 0.0;
        for (int r = 0; r < nballs; ++r) acc += tau[r] * std::pow(std::max(s[r], 0.0), p);
        return std::pow(acc, 1.0 / p);
    }

    // Raise g until every pair constraint holds; never decreases a coordinate.
    void repair(std::vector<double>& g) const {
        for (int x : active) g[x] = std::max(g[x], 0.0);
        for (const Cons& cn : cons) {
            double deficit = cn.c - g[cn.x] - g[cn.y];
            if (deficit > 0.0) {
                g[cn.x] += deficit / 2.0;
                g[cn.y] += deficit / 2.0;
            }
        }
    }

    double lower_bound_at(int x, const std::vector<double>& g, int skip = -1) const {
        double lb = 0.0;
        for (auto [y, c] : cons_of[x])
            if (y != skip) lb = std::max(lb, c - g[y]);
        return lb;
    }

    // The objective is non-decreasing in every coordinate, so per-coordinate
    // minimization is a shrink to the constraint lower bound.
    bool shrink(std::vector<double>& g, std::vector<double>& s) const {
        bool moved = false;
        for (int x : active) {
            double lb = lower_bound_at(x, g);
            if (g[x] > lb) {
                double delta = lb - g[x];
                for (auto [r, m] : inc[x]) s[r] += m * delta;
                g[x] = lb;
                moved = true;
            }
        }
        return moved;
    }

    // Exact line search along e_x - e_y within the feasible interval.
    bool pair_move(const Cons& cn, std::vector<double>& g, std::vector<double>& s) const {
        int x = cn.x, y = cn.y;
        double t_lo = -g[x], t_hi = g[y];
        for (auto [z, c] : cons_of[x])
            if (z != y) t_lo = std::max(t_lo, c - g[x] - g[z]);
        for (auto [z, c] : cons_of[y])
            if (z != x) t_hi = std::min(t_hi, g[y] + g[z] - c);
        if (!(t_hi - t_lo > 1e-15)) return false;

        // direction weights on the balls touching x or y
        std::vector<std::pair<int, double>> w;
        w.reserve(inc[x].size() + inc[y].size());
        for (auto [r, m] : inc[x]) w.push_back({r, m});
        for (auto [r, m] : inc[y]) {
            bool merged = false;
            for (auto& [r2, w2] : w)
                if (r2 == r) { w2 -= m; merged = true; break; }
            if (!merged) w.push_back({r, -m});
        }

        double t_star = 0.0;
        if (p == kInf) {
            std::vector<char> touched(nballs, 0);
            for (auto [r, wr] : w) touched[r] = 1;
            double rest = 0.0;
            for (int r = 0; r < nballs; ++r)
                if (!touched[r]) rest = std::max(rest, s[r]);
            auto phi = [&](double t) {
                double v = rest;
                for (auto [r, wr] : w) v = std::max(v, s[r] + t * wr);
                return v;
            };
            double lo = t_lo, hi = t_hi;
            for (int it = 0; it < 200; ++it) {
                double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
                if (phi(m1) <= phi(m2)) hi = m2; else lo = m1;
            }
            t_star = (lo + hi) / 2.0;
        } else if (p == 1.0) {
            double slope_sum = 0.0;
            for (auto [r, wr] : w) slope_sum += tau[r] * wr;
            t_star = slope_sum >= 0.0 ? t_lo : t_hi;
        } else {
            auto dphi = [&](double t) {
                double v = 0.0;
                for (auto [r, wr] : w)
                    v += tau[r] * std::pow(std::max(s[r] + t * wr, 0.0), p - 1.0) * wr;
                return v;
            };
            if (dphi(t_lo) >= 0.0) t_star = t_lo;
            else if (dphi(t_hi) <= 0.0) t_star = t_hi;
            else {
                double lo = t_lo, hi = t_hi;
                for (int it = 0; it < 90; ++it) {
                    double mid = 0.5 * (lo + hi);
                    if (dphi(mid) >= 0.0) hi = mid; else lo = mid;
                }
                t_star = 0.5 * (lo + hi);
            }
        }
        if (t_star == 0.0) return false;

        auto part = [&](double t) {
            if (p == kInf) return 0.0;  // handled via full objective below
            double v = 0.0;
            for (auto [r, wr] : w) v += tau[r] * std::pow(std::max(s[r] + t * wr, 0.0), p);
            return v;
        };
        if (p != kInf) {
            double before = part(0.0), after = part(t_star);
            if (!(after < before - 1e-18 * std::max(1.0, before))) return false;
        } else {
            std::vector<double> s2 = s;
            for (auto [r, wr] : w) s2[r] += t_star * wr;
            if (!(value(s2) < value(s) - 1e-18)) return false;
        }
        g[x] += t_star;
        g[y] -= t_star;
        if (g[x] < 0.0) g[x] = 0.0;
        if (g[y] < 0.0) g[y] = 0.0;
        for (auto [r, wr] : w) s[r] = std::max(s[r] + t_star * wr, 0.0);
        return true;
    }

    std::vector<double> subgradient(const std::vector<double>& g,
                                    const std::vector<double>& s, double fval) const {
        std::vector<double> grad(g.size(), 0.0);
        if (p == kInf) {
            int arg = 0;
            for (int r = 1; r < nballs; ++r)
                if (s[r] > s[arg]) arg = r;
            for (int x : family.balls()[arg].members)
                if (space.mass(x) > 0.0) grad[x] = space.mass(x);
            return grad;
        }
        double scale = (p == 1.0 || fval <= 0.0) ? 1.0 : std::pow(fval, 1.0 - p);
        for (int x : active) {
            double v = 0.0;
            for (auto [r, m] : inc[x]) {
                double base = (p == 1.0) ? 1.0 : std::pow(std::max(s[r], 0.0), p - 1.0);
                v += tau[r] * base * m;
            }
            grad[x] = scale * v;
        }
        return grad;
    }
};

struct SolveOutcome {
    std::vector<double> g;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

SolveOutcome solve_from(const WitnessProblem& prob, std::vector<double> g,
                        const SolverOptions& opts, Rng& rng) {
    prob.repair(g);
    std::vector<double> s = prob.ball_sums(g);
    std::vector<double> best_g = g;
    double best = prob.value(s);
    int iters = 0;
    double delta = 0.05;  // Polyak target gap, halved on stalls
    bool converged = false;

    if (prob.cons.empty()) {
        for (int x : prob.active) g[x] = 0.0;
        return {g, 0.0, 0, true};
    }

    for (int outer = 0; outer < 200 && iters < opts.max_iters; ++outer) {
        double start_best = best;

        // descent sweeps: coordinate shrinks plus pairwise line searches
        for (int sweep = 0; sweep < 50 && iters < opts.max_iters; ++sweep) {
            bool moved = prob.shrink(g, s);
            for (const auto& cn : prob.cons) moved |= prob.pair_move(cn, g, s);
            iters += int(prob.cons.size());
            if (!moved) break;
        }
        s = prob.ball_sums(g);  // undo incremental drift
        double fval = prob.value(s);
        if (fval < best) { best = fval; best_g = g; }

        // subgradient burst to escape vertices the sweeps cannot leave
        int stall = 0;
        for (int it = 0; it < 60 && iters < opts.max_iters; ++it, ++iters) {
            fval = prob.value(s);
            if (fval < best - 1e-16) { best = fval; best_g = g; stall = 0; }
            else if (++stall > 15) { stall = 0; delta *= 0.5; }
            if (delta < 1e-9) break;
            std::vector<double> grad = prob.subgradient(g, s, fval);
            double gnorm2 = 0.0;
            for (int x : prob.active) gnorm2 += grad[x] * grad[x];
            if (gnorm2 <= 0.0) break;
            double target = (1.0 - delta) * best;
            double step = std::max(fval - target, delta * std::max(best, 1e-12)) / gnorm2;
            // occasional random scaling diversifies the escape direction
            step *= 0.5 + rng.uniform();
            for (int x : prob.active) g[x] -= step * grad[x];
            prob.repair(g);
            s = prob.ball_sums(g);
            prob.shrink(g, s);
        }
        if (prob.value(s) > best) { g = best_g; s = prob.ball_sums(g); }

        if (start_best - best < opts.tolerance * std::max(best, 1e-9)) {
            converged = true;
            break;
        }
    }
    // final polish from the incumbent
    g = best_g;
    s = prob.ball_sums(g);
    for (int sweep = 0; sweep < 50; ++sweep) {
        bool moved = prob.shrink(g, s);
        for (const auto& cn : prob.cons) moved |= prob.pair_move(cn, g, s);
        if (!moved) break;
    }
    s = prob.ball_sums(g);
    double fval = prob.value(s);
    if (fval < best) { best = fval; best_g = g; }
    return {best_g, best, iters, converged};
}

std::vector<double> random_feasible_start(const WitnessProblem& prob,
                                          const GradientWitness& envelope, Rng& rng) {
    std::vector<double> g(envelope.values.size(), 0.0);
    for (int x : prob.active) g[x] = envelope.values[x] * rng.uniform(0.0, 1.5);
    prob.repair(g);
    return g;
}

// Interior-point path following for finite p. The objective
// sum_r tau_r (a_r . g)^p is convex with nonnegative rows a_r, the feasible
// region {g >= 0, g_x + g_y >= c} is polyhedral, and the instances are tiny,
// so damped Newton on the log-barrier reaches the central-path limit to
// near machine precision independently of the start.
struct BarrierSolver {
    const WitnessProblem& prob;
    double p;
    int n;                                  // active coordinate count
    std::vector<int> pos;                   // point index -> active position
    std::vector<std::vector<std::pair<int, double>>> rows;  // ball -> (pos, mass)
    std::vector<double> taus;
    struct PairCon { int i, j; double c; };
    std::vector<PairCon> pcons;
    double scale = 1.0;                     // constraint normalization

    explicit BarrierSolver(const WitnessProblem& pr) : prob(pr), p(pr.p) {
        n = int(pr.active.size());
        pos.assign(std::size_t(pr.space.size()), -1);
        for (int i = 0; i < n; ++i) pos[std::size_t(pr.active[i])] = i;
        for (int r = 0; r < pr.nballs; ++r) {
            std::vector<std::pair<int, double>> row;
            for (int x : pr.family.balls()[r].members)
                if (pr.space.mass(x) > 0.0) row.push_back({pos[std::size_t(x)], pr.space.mass(x)});
            if (row.empty()) continue;
            rows.push_back(std::move(row));
            taus.push_back(pr.tau[std::size_t(r)]);
        }
        for (const auto& cn : pr.cons) {
            scale = std::max(scale, cn.c);
            pcons.push_back({pos[std::size_t(cn.x)], pos[std::size_t(cn.y)], cn.c});
        }
        for (auto& cn : pcons) cn.c /= scale;
    }

    double objective(const std::vector<double>& x) const {
        double h = 0.0;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            double s = 0.0;
            for (auto [i, m] : rows[r]) s += m * x[std::size_t(i)];
            h += taus[r] * std::pow(std::max(s, 0.0), p);
        }
        return h;
    }

    double barrier(const std::vector<double>& x, double t) const {
        double b = t * objective(x);
        for (const auto& cn : pcons) {
            double slack = x[std::size_t(cn.i)] + x[std::size_t(cn.j)] - cn.c;
            if (!(slack > 0.0)) return kInf;
            b -= std::log(slack);
        }
        for (double v : x) {
            if (!(v > 0.0)) return kInf;
            b -= std::log(v);
        }
        return b;
    }

    // Cholesky solve of H d = -grad with escalating ridge on failure.
    static bool solve_spd(std::vector<double> h, std::vector<double> rhs, int n,
                          std::vector<double>& out) {
        double trace = 0.0;
        for (int i = 0; i < n; ++i) trace += h[std::size_t(i) * n + i];
        double ridge = 0.0;
        for (int attempt = 0; attempt < 6; ++attempt) {
            std::vector<double> a = h;
            if (ridge > 0.0)
                for (int i = 0; i < n; ++i) a[std::size_t(i) * n + i] += ridge;
            bool ok = true;
            for (int i = 0; i < n && ok; ++i) {
                for (int j = 0; j <= i; ++j) {
                    double s = a[std::size_t(i) * n + j];
                    for (int k = 0; k < j; ++k)
                        s -= a[std::size_t(i) * n + k] * a[std::size_t(j) * n + k];
                    if (i == j) {
                        if (!(s > 0.0)) { ok = false; break; }
                        a[std::size_t(i) * n + j] = std::sqrt(s);
                    } else {
                        a[std::size_t(i) * n + j] = s / a[std::size_t(j) * n + j];
                    }
                }
            }
            if (ok) {
                std::vector<double> y(std::size_t(n), 0.0);
                for (int i = 0; i < n; ++i) {
                    double s = rhs[std::size_t(i)];
                    for (int k = 0; k < i; ++k) s -= a[std::size_t(i) * n + k] * y[std::size_t(k)];
                    y[std::size_t(i)] = s / a[std::size_t(i) * n + i];
                }
                out.assign(std::size_t(n), 0.0);
                for (int i = n - 1; i >= 0; --i) {
                    double s = y[std::size_t(i)];
                    for (int k = i + 1; k < n; ++k)
                        s -= a[std::size_t(k) * n + i] * out[std::size_t(k)];
                    out[std::size_t(i)] = s / a[std::size_t(i) * n + i];
                }
                return true;
            }
            ridge = ridge == 0.0 ? 1e-12 * std::max(trace / n, 1.0) : ridge * 100.0;
        }
        return false;
    }

    // Minimizes the barrier at fixed t; x stays strictly feasible.
    void center(std::vector<double>& x, double t, int& iters) const {
        for (int it = 0; it < 60; ++it, ++iters) {
            std::vector<double> grad(std::size_t(n), 0.0);
            std::vector<double> hess(std::size_t(n) * n, 0.0);
            for (std::size_t r = 0; r < rows.size(); ++r) {
                double s = 0.0;
                for (auto [i, m] : rows[r]) s += m * x[std::size_t(i)];
                s = std::max(s, 1e-300);
                double g1 = t * taus[r] * p * std::pow(s, p - 1.0);
                for (auto [i, m] : rows[r]) grad[std::size_t(i)] += g1 * m;
                if (p > 1.0) {
                    double g2 = t * taus[r] * p * (p - 1.0) * std::pow(s, p - 2.0);
                    for (auto [i, mi] : rows[r])
                        for (auto [j, mj] : rows[r])
                            hess[std::size_t(i) * n + j] += g2 * mi * mj;
                }
            }
            for (const auto& cn : pcons) {
                double slack = x[std::size_t(cn.i)] + x[std::size_t(cn.j)] - cn.c;
                double inv = 1.0 / slack, inv2 = inv * inv;
                grad[std::size_t(cn.i)] -= inv;
                grad[std::size_t(cn.j)] -= inv;
                hess[std::size_t(cn.i) * n + cn.i] += inv2;
                hess[std::size_t(cn.j) * n + cn.j] += inv2;
                hess[std::size_t(cn.i) * n + cn.j] += inv2;
                hess[std::size_t(cn.j) * n + cn.i] += inv2;
            }
            for (int i = 0; i < n; ++i) {
                double inv = 1.0 / x[std::size_t(i)];
                grad[std::size_t(i)] -= inv;
                hess[std::size_t(i) * n + i] += inv * inv;
            }

            std::vector<double> rhs(std::size_t(n), 0.0);
            for (int i = 0; i < n; ++i) rhs[std::size_t(i)] = -grad[std::size_t(i)];
            std::vector<double> d;
            if (!solve_spd(hess, rhs, n, d)) return;
            double lambda2 = 0.0;
            for (int i = 0; i < n; ++i) lambda2 -= grad[std::size_t(i)] * d[std::size_t(i)];
            if (!(lambda2 > 1e-18)) return;

            // cap the step inside the region, then backtrack on the barrier
            double alpha = 1.0;
            for (const auto& cn : pcons) {
                double dd = d[std::size_t(cn.i)] + d[std::size_t(cn.j)];
                if (dd < 0.0) {
                    double slack = x[std::size_t(cn.i)] + x[std::size_t(cn.j)] - cn.c;
                    alpha = std::min(alpha, -0.99 * slack / dd);
                }
            }
            for (int i = 0; i < n; ++i)
                if (d[std::size_t(i)] < 0.0)
                    alpha = std::min(alpha, -0.99 * x[std::size_t(i)] / d[std::size_t(i)]);

            double b0 = barrier(x, t);
            std::vector<double> trial(x);
            int halvings = 0;
            while (halvings < 60) {
                for (int i = 0; i < n; ++i)
                    trial[std::size_t(i)] = x[std::size_t(i)] + alpha * d[std::size_t(i)];
                if (barrier(trial, t) <= b0 - 0.25 * alpha * lambda2) break;
                alpha *= 0.5;
                ++halvings;
            }
            if (halvings == 60) return;
            x = trial;
            if (lambda2 < 1e-16) return;
        }
    }

    SolveOutcome solve(const std::vector<double>& g0) const {
        // strictly feasible start: the (repaired) incoming witness lifted off
        // every bound; constraints are normalized by `scale`
        std::vector<double> x(std::size_t(n), 0.0);
        for (int i = 0; i < n; ++i)
            x[std::size_t(i)] = std::max(g0[std::size_t(prob.active[std::size_t(i)])] / scale, 0.0) + 1e-2;

        int m = int(pcons.size()) + n;
        double t = std::max(1.0, double(m) / std::max(objective(x), 1e-9));
        SolveOutcome out;
        for (int outer = 0; outer < 80; ++outer) {
            center(x, t, out.iterations);
            if (double(m) / t < 1e-13 * std::max(objective(x), 1e-9)) {
                out.converged = true;
                break;
            }
            t *= 20.0;
        }
        out.g.assign(g0.size(), 0.0);
        for (int i = 0; i < n; ++i)
            out.g[std::size_t(prob.active[std::size_t(i)])] = x[std::size_t(i)] * scale;
        out.value = std::pow(objective(x), 1.0 / p) * scale;
        return out;
    }
};

}  // namespace

SeminormResult ks1p_seminorm(const MetricMeasureSpace& space, const BallFamily& family,
                             const SampledFunction& f, double p, const SolverOptions& opts) {
    if (!(p >= 1.0)) throw BadExponentError("exponent must satisfy p >= 1");
    WitnessProblem prob(space, family, f, p);
    GradientWitness env = feasible_envelope(space, f);

    SeminormResult out;
    out.witness.values.assign(f.size(), 0.0);
    if (prob.cons.empty()) return out;

    double lip = lip_constant(space, f);
    Rng rng(opts.seed ^ 0x5bd1e995u);
    SolveOutcome best;
    best.value = kInf;
    int total_iters = 0;
    bool all_converged = true;
    if (p != kInf) {
        BarrierSolver bar(prob);
        best = bar.solve(env.values);
        total_iters = best.iterations;
        all_converged = best.converged;
    } else {
        int starts = std::max(opts.restarts, 1);
        for (int k = 0; k < starts; ++k) {
            std::vector<double> g0;
            if (k == 0) g0 = env.values;
            else if (k == 1) {
                g0.assign(f.size(), 0.0);
                for (int x : prob.active) g0[x] = lip / 2.0;
            } else g0 = random_feasible_start(prob, env, rng);
            SolveOutcome res = solve_from(prob, std::move(g0), opts, rng);
            total_iters += res.iterations;
            all_converged = all_converged && res.converged;
            if (res.value < best.value) best = std::move(res);
        }
    }
    out.value = best.value;
    out.witness.values = best.g;
    out.witness.feasibility_residual = witness_residual(space, f, best.g);
    out.iterations = total_iters;
    out.converged = all_converged;
    if (out.witness.feasibility_residual > std::max(opts.tolerance, 1e-9))
        throw SolverFailureError("witness infeasible after solve");
    return out;
}

double ks1p_oracle(const MetricMeasureSpace& space, const BallFamily& family,
                   const SampledFunction& f, double p, double step) {
    if (space.size() > 3) throw TooLargeError("oracle is restricted to at most 3 points");
    if (!(step > 0.0)) throw BadExponentError("oracle step must be positive");
    WitnessProblem prob(space, family, f, p);
    if (prob.cons.empty()) return 0.0;
    double lip = lip_constant(space, f);
    if (lip == 0.0) return 0.0;

    const auto& pts = prob.active;
    int n = int(pts.size());
    auto feasible = [&](const std::vector<double>& g) {
        for (const auto& cn : prob.cons)
            if (g[cn.x] + g[cn.y] < cn.c - 1e-9 * std::max(1.0, cn.c)) return false;
        return true;
    };
    auto eval = [&](const std::vector<double>& g) { return prob.value(prob.ball_sums(g)); };

    double hi = 2.0 * lip;
    int steps = int(std::ceil(hi / step));
    std::vector<double> g(f.size(), 0.0), best_g;
    double best = kInf;
    std::vector<int> idx(n, 0);
    while (true) {
        for (int k = 0; k < n; ++k) g[pts[k]] = std::min(idx[k] * step, hi);
        if (feasible(g)) {
            double v = eval(g);
            if (v < best) { best = v; best_g = g; }
        }
        int k = 0;
        while (k < n && ++idx[k] > steps) idx[k++] = 0;
        if (k == n) break;
    }
    // local refinement around the incumbent
    double st = step;
    for (int level = 0; level < 14; ++level) {
        st /= 2.0;
        bool improved = true;
        while (improved) {
            improved = false;
            std::vector<int> off(n, -2);
            while (true) {
                g = best_g;
                for (int k = 0; k < n; ++k)
                    g[pts[k]] = std::max(best_g[pts[k]] + off[k] * st, 0.0);
                if (feasible(g)) {
                    double v = eval(g);
                    if (v < best - 1e-16) { best = v; best_g = g; improved = true; }
                }
                int k = 0;
                while (k < n && ++off[k] > 2) off[k++] = -2;
                if (k == n) break;
            }
        }
    }
    return best;
}

LipBoundReport lip_membership_bound(const MetricMeasureSpace& space, const BallFamily& family,
                                    const SampledFunction& f, double p,
                                    const SolverOptions& opts) {
    LipBoundReport rep;
    SampledFunction ones(f.size(), 1.0);
    double lip = lip_constant(space, f);
    rep.bound = (lip / 2.0) * ks_norm(space, family, ones, p);
    rep.seminorm = ks1p_seminorm(space, family, f, p, opts).value;
    rep.ok = rep.seminorm <= rep.bound * (1.0 + std::max(opts.tolerance, 1e-12)) + 1e-12;
    return rep;
}

UniquenessReport minimizer_uniqueness_probe(const MetricMeasureSpace& space,
                                            const BallFamily& family,
                                            const SampledFunction& f, double p,
                                            int n_restarts, const SolverOptions& opts) {
    WitnessProblem prob(space, family, f, p);
    GradientWitness env = feasible_envelope(space, f);
    UniquenessReport rep;
    std::vector<std::vector<double>> witnesses;
    for (int k = 0; k < n_restarts; ++k) {
        Rng rng = Rng::derive(opts.seed, "uniqueness-restart", std::uint64_t(k));
        std::vector<double> g0 = prob.cons.empty()
                                     ? std::vector<double>(f.size(), 0.0)
                                     : random_feasible_start(prob, env, rng);
        SolveOutcome res;
        if (prob.cons.empty()) {
            res.g = g0;
            res.value = 0.0;
        } else if (p != kInf) {
            BarrierSolver bar(prob);
            res = bar.solve(g0);
        } else {
            res = solve_from(prob, std::move(g0), opts, rng);
        }
        rep.values.push_back(res.value);
        witnesses.push_back(std::move(res.g));
    }
    // compare only where some ball integral sees the coordinate
    std::vector<int> sensitive;
    for (int x : prob.active)
        if (!prob.inc[x].empty()) sensitive.push_back(x);
    for (std::size_t a = 0; a < witnesses.size(); ++a)
        for (std::size_t b = a + 1; b < witnesses.size(); ++b)
            for (int x : sensitive)
                rep.max_witness_spread = std::max(
                    rep.max_witness_spread, std::fabs(witnesses[a][x] - witnesses[b][x]));
    return rep;
}

}  // namespace ks
