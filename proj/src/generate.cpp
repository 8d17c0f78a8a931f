#include "ks/generate.hpp"

#include <algorithm>
#include <cmath>

#include "ks/expr.hpp"
#include "ks/lipschitz.hpp"

namespace ks {

SpaceKind space_kind_from_string(const std::string& name) {
    if (name == "grid-1d") return SpaceKind::Grid1D;
    if (name == "grid-2d") return SpaceKind::Grid2D;
    if (name == "random-cloud") return SpaceKind::RandomCloud;
    if (name == "line-points") return SpaceKind::LinePoints;
    throw BadExpressionError("unknown space kind '" + name + "'");
}

MetricMeasureSpace gen_space(SpaceKind kind, int size, std::uint64_t seed) {
    if (size < 1) throw EmptySpaceError("size must be at least 1");
    Rng rng = Rng::derive(seed, "gen-space", std::uint64_t(kind));
    std::vector<std::string> ids;
    std::vector<std::vector<double>> coords;
    auto cap = [](int n) {
        if (n > kMaxPoints) throw SizeCapError("space size exceeds the 2000-point cap");
    };
    switch (kind) {
        case SpaceKind::Grid1D: {
            cap(size);
            for (int i = 0; i < size; ++i) {
                ids.push_back("p" + std::to_string(i));
                coords.push_back({size == 1 ? 0.0 : double(i) / double(size - 1)});
            }
            break;
        }
        case SpaceKind::Grid2D: {
            // size is the per-axis resolution
            cap(size * size);
            for (int i = 0; i < size; ++i)
                for (int j = 0; j < size; ++j) {
                    ids.push_back("p" + std::to_string(i * size + j));
                    coords.push_back({size == 1 ? 0.0 : double(i) / double(size - 1),
                                      size == 1 ? 0.0 : double(j) / double(size - 1)});
                }
            break;
        }
        case SpaceKind::RandomCloud: {
            cap(size);
            for (int i = 0; i < size; ++i) {
                ids.push_back("p" + std::to_string(i));
                coords.push_back({rng.uniform(), rng.uniform()});
            }
            break;
        }
        case SpaceKind::LinePoints: {
            cap(size);
            std::vector<double> xs;
            if (size == 1) xs = {0.0};
            else if (size == 2) xs = {0.0, 1.0};  // the canonical 2-point space
            else {
                xs = {0.0, 1.0};
                while (int(xs.size()) < size) {
                    double v = rng.uniform();
                    bool clash = false;
                    for (double u : xs)
                        if (std::fabs(u - v) < 1e-6) clash = true;
                    if (!clash) xs.push_back(v);
                }
                std::sort(xs.begin(), xs.end());
            }
            for (int i = 0; i < size; ++i) {
                ids.push_back("p" + std::to_string(i));
                coords.push_back({xs[i]});
            }
            break;
        }
    }
    std::vector<double> mass(ids.size(), 1.0 / double(ids.size()));
    return MetricMeasureSpace::from_coords(std::move(ids), std::move(coords), std::move(mass));
}

SampledFunction gen_function(const FunctionSpec& spec, const MetricMeasureSpace& space,
                             std::uint64_t seed) {
    Rng rng = Rng::derive(seed, "gen-function", std::uint64_t(spec.kind));
    int n = space.size();
    SampledFunction f(n, 0.0);
    switch (spec.kind) {
        case FunctionKind::RandomUniform:
            for (double& v : f) v = rng.uniform(-1.0, 1.0);
            break;
        case FunctionKind::RandomLipschitz: {
            for (double& v : f) v = rng.uniform(-1.0, 1.0);
            double lip = lip_constant(space, f);
            if (lip > spec.lipschitz_bound && lip > 0.0) {
                double mean = 0.0;
                for (double v : f) mean += v;
                mean /= double(n);
                double scale = spec.lipschitz_bound / lip;
                for (double& v : f) v = mean + (v - mean) * scale;
            }
            break;
        }
        case FunctionKind::Polynomial: {
            if (space.coords().empty())
                throw BadExpressionError("polynomial sampler needs a coordinate space");
            Expression e = Expression::parse(spec.expression);
            for (int i = 0; i < n; ++i) f[i] = e.eval(space.coords()[i]);
            break;
        }
        case FunctionKind::Indicator: {
            for (const auto& id : spec.indicator_ids) f[space.index_of(id)] = 1.0;
            break;
        }
    }
    for (double v : f)
        if (!std::isfinite(v)) throw BadExpressionError("generated function has non-finite values");
    return f;
}

}  // namespace ks
