#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ks/rng.hpp"
#include "ks/space.hpp"

namespace ks {

inline constexpr int kMaxPoints = 2000;

enum class SpaceKind { Grid1D, Grid2D, RandomCloud, LinePoints };

SpaceKind space_kind_from_string(const std::string& name);

/// Deterministic synthetic spaces in probability mode.
MetricMeasureSpace gen_space(SpaceKind kind, int size, std::uint64_t seed);

enum class FunctionKind { RandomUniform, RandomLipschitz, Polynomial, Indicator };

/// random-uniform: iid values in [-1,1].
/// random-lipschitz: rescaled so lip_constant <= L.
/// polynomial: expression over node coordinates (requires a coordinate space).
/// indicator: 1 on the listed point ids.
struct FunctionSpec {
    FunctionKind kind = FunctionKind::RandomUniform;
    double lipschitz_bound = 1.0;
    std::string expression;
    std::vector<std::string> indicator_ids;
};

SampledFunction gen_function(const FunctionSpec& spec, const MetricMeasureSpace& space,
                             std::uint64_t seed);

}  // namespace ks
