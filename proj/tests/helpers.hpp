#pragma once

#include <cmath>
#include <vector>

#include "ks/space.hpp"

namespace ks::testutil {

// Two points at distance 1 with masses 1/2 each.
inline MetricMeasureSpace two_point_space() {
    return MetricMeasureSpace::from_coords({"a", "b"}, {{0.0}, {1.0}}, {0.5, 0.5});
}

// Family {a}, {b}, {a,b} with weights 1/4, 1/4, 1/2; most closed-form values
// in these tests live on this instance.
inline BallFamily two_point_family(const MetricMeasureSpace& space) {
    return make_family(space, {{0, 0.25}, {1, 0.25}, {0, 1.0}}, {0.25, 0.25, 0.5});
}

inline MetricMeasureSpace line3_space() {
    return MetricMeasureSpace::from_coords({"a", "b", "c"}, {{0.0}, {1.0}, {2.0}},
                                           {1.0 / 3, 1.0 / 3, 1.0 / 3});
}

}  // namespace ks::testutil
