#include "ks/io.hpp"

#include <cmath>
#include <fstream>

namespace ks::io {

using nlohmann::json;

json space_to_json(const MetricMeasureSpace& space) {
    json j;
    j["format_version"] = 1;
    json points = json::array();
    bool euclidean = !space.coords().empty();
    for (int i = 0; i < space.size(); ++i) {
        json p;
        p["id"] = space.id(i);
        if (euclidean) p["coords"] = space.coords()[i];
        points.push_back(std::move(p));
    }
    j["points"] = std::move(points);
    if (euclidean) {
        j["metric"] = {{"type", "euclidean"}};
    } else {
        json rows = json::array();
        for (int i = 0; i < space.size(); ++i) {
            json row = json::array();
            for (int k = 0; k < space.size(); ++k) row.push_back(space.dist(i, k));
            rows.push_back(std::move(row));
        }
        j["metric"] = {{"type", "matrix"}, {"matrix", std::move(rows)}};
    }
    j["measure"] = space.masses();
    return j;
}

MetricMeasureSpace space_from_json(const json& j) {
    if (!j.contains("format_version") || j["format_version"].get<int>() != 1)
        throw IoFailureError("unsupported space file format_version");
    std::vector<std::string> ids;
    std::vector<std::vector<double>> coords;
    for (const auto& p : j.at("points")) {
        ids.push_back(p.at("id").get<std::string>());
        if (p.contains("coords")) coords.push_back(p["coords"].get<std::vector<double>>());
    }
    std::vector<double> mass = j.at("measure").get<std::vector<double>>();
    std::string type = j.at("metric").at("type").get<std::string>();
    if (type == "euclidean") {
        if (coords.size() != ids.size())
            throw IoFailureError("euclidean metric requires coords on every point");
        return MetricMeasureSpace::from_coords(std::move(ids), std::move(coords), std::move(mass));
    }
    if (type == "matrix") {
        auto rows = j.at("metric").at("matrix").get<std::vector<std::vector<double>>>();
        std::vector<double> flat;
        for (const auto& row : rows) {
            if (row.size() != ids.size()) throw IoFailureError("distance matrix has wrong shape");
            flat.insert(flat.end(), row.begin(), row.end());
        }
        return MetricMeasureSpace::from_matrix(std::move(ids), std::move(flat), std::move(mass));
    }
    throw IoFailureError("unknown metric type '" + type + "'");
}

json function_to_json(const SampledFunction& f) {
    return json{{"format_version", 1}, {"values", f}};
}

SampledFunction function_from_json(const json& j, int expected_size) {
    if (!j.contains("format_version") || j["format_version"].get<int>() != 1)
        throw IoFailureError("unsupported function file format_version");
    SampledFunction f = j.at("values").get<SampledFunction>();
    for (double v : f)
        if (!std::isfinite(v)) throw IoFailureError("function values must be finite");
    if (expected_size >= 0 && int(f.size()) != expected_size)
        throw IoFailureError("function length does not match the space");
    return f;
}

json balls_to_json(const MetricMeasureSpace& space, const std::vector<InputBall>& balls) {
    json j = json::array();
    for (const auto& b : balls)
        j.push_back({{"center", space.id(b.center)}, {"radius", b.radius}});
    return j;
}

std::vector<InputBall> balls_from_json(const MetricMeasureSpace& space, const json& j) {
    std::vector<InputBall> out;
    for (const auto& b : j)
        out.push_back({space.index_of(b.at("center").get<std::string>()),
                       b.at("radius").get<double>()});
    return out;
}

json grid_to_json(const GridSpec& grid) {
    return json{{"format_version", 1},
                {"dim", grid.dim},
                {"n_per_axis", grid.n_per_axis},
                {"spacing", grid.spacing},
                {"origin", grid.origin},
                {"cell_mass", grid.cell_mass},
                {"mode", grid.probability_mode ? "probability" : "raw"}};
}

GridSpec grid_from_json(const json& j) {
    if (!j.contains("format_version") || j["format_version"].get<int>() != 1)
        throw IoFailureError("unsupported grid file format_version");
    GridSpec g;
    g.dim = j.at("dim").get<int>();
    g.n_per_axis = j.at("n_per_axis").get<int>();
    g.spacing = j.at("spacing").get<double>();
    g.origin = j.at("origin").get<std::vector<double>>();
    g.cell_mass = j.at("cell_mass").get<std::vector<double>>();
    g.probability_mode = j.at("mode").get<std::string>() == "probability";
    return g;
}

json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoFailureError("cannot open '" + path + "'");
    json j;
    in >> j;
    return j;
}

void save_file(const std::string& path, const json& j) {
    save_text(path, j.dump(2) + "\n");
}

void save_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailureError("cannot write '" + path + "'");
    out << text;
}

}  // namespace ks::io
