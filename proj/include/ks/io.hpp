#pragma once

#include <string>

#include "ks/maximal.hpp"
#include "ks/sobolev.hpp"
#include "ks/space.hpp"

#include <json.hpp>

namespace ks::io {

// Space file, format_version 1:
// { "format_version": 1,
//   "points": [{"id": "a", "coords": [0.0]}, ...],
//   "metric": {"type": "euclidean"} | {"type": "matrix", "matrix": [[...]]},
//   "measure": [ ... ] }
nlohmann::json space_to_json(const MetricMeasureSpace& space);
MetricMeasureSpace space_from_json(const nlohmann::json& j);

// Function file: { "format_version": 1, "values": [...] }
nlohmann::json function_to_json(const SampledFunction& f);
SampledFunction function_from_json(const nlohmann::json& j, int expected_size = -1);

// Balls file is a bare array: [{"center": "a", "radius": 1.0}, ...]
nlohmann::json balls_to_json(const MetricMeasureSpace& space, const std::vector<InputBall>& balls);
std::vector<InputBall> balls_from_json(const MetricMeasureSpace& space, const nlohmann::json& j);

nlohmann::json grid_to_json(const GridSpec& grid);
GridSpec grid_from_json(const nlohmann::json& j);

nlohmann::json load_file(const std::string& path);
void save_file(const std::string& path, const nlohmann::json& j);
void save_text(const std::string& path, const std::string& text);

}  // namespace ks::io
