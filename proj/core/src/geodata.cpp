#include "rfisim/geodata.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace rfisim {
namespace {

Vec2 closest_point_on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
    const Vec2 ab = b - a;
    const double len2 = ab.dot(ab);
    if (len2 <= 0.0) return a;
    const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
    return a + ab * t;
}

Polygon2D parse_polygon(const nlohmann::json& geometry) {
    if (geometry.at("type").get<std::string>() != "Polygon") {
        throw std::runtime_error("geodata: only Polygon geometries are supported");
    }
    const auto& rings = geometry.at("coordinates");
    if (rings.empty()) throw std::runtime_error("geodata: polygon without rings");
    Polygon2D poly;
    for (const auto& pt : rings[0]) {
        poly.points.push_back({pt.at(0).get<double>(), pt.at(1).get<double>()});
    }
    // GeoJSON rings repeat the first vertex; drop the closing duplicate.
    if (poly.points.size() >= 2) {
        const Vec2 d = poly.points.front() - poly.points.back();
        if (d.norm() < 1e-9) poly.points.pop_back();
    }
    if (poly.points.size() < 3) throw std::runtime_error("geodata: degenerate polygon");
    if (!poly.is_simple()) throw std::runtime_error("geodata: non-simple (self-intersecting) polygon");
    return poly;
}

}  // namespace

bool GeoScenario::in_valid_region(const Vec2& p) const {
    for (const auto& poly : valid_region) {
        if (poly.contains(p)) return true;
    }
    return false;
}

Vec2 GeoScenario::project_to_valid_region(const Vec2& p, double* distance_out) const {
    if (in_valid_region(p)) {
        if (distance_out) *distance_out = 0.0;
        return p;
    }
    double best = std::numeric_limits<double>::max();
    Vec2 best_point = p;
    for (const auto& poly : valid_region) {
        const size_t n = poly.points.size();
        for (size_t i = 0, j = n - 1; i < n; j = i++) {
            const Vec2 q = closest_point_on_segment(poly.points[j], poly.points[i], p);
            const double d = (q - p).norm();
            if (d < best) {
                best = d;
                best_point = q;
            }
        }
    }
    if (distance_out) *distance_out = best;
    return best_point;
}

void GeoScenario::bounding_box(Vec2& lo, Vec2& hi) const {
    lo = {std::numeric_limits<double>::max(), std::numeric_limits<double>::max()};
    hi = {std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()};
    auto extend = [&](const Polygon2D& poly) {
        Vec2 plo, phi;
        poly.bounding_box(plo, phi);
        lo.x = std::min(lo.x, plo.x);
        lo.y = std::min(lo.y, plo.y);
        hi.x = std::max(hi.x, phi.x);
        hi.y = std::max(hi.y, phi.y);
    };
    for (const auto& poly : valid_region) extend(poly);
    if (buildings) {
        for (const auto& prism : buildings->prisms()) extend(prism.footprint);
    }
}

GeoScenario geoscenario_from_parts(std::vector<Prism> buildings, std::vector<Polygon2D> valid_region,
                                   double area_km2) {
    GeoScenario scenario;
    scenario.buildings = std::make_shared<BuildingSet>(std::move(buildings));
    scenario.valid_region = std::move(valid_region);
    if (area_km2 > 0.0) {
        scenario.area_km2 = area_km2;
    } else {
        double area_m2 = 0.0;
        for (const auto& poly : scenario.valid_region) area_m2 += poly.area();
        scenario.area_km2 = area_m2 / 1e6;
    }
    if (scenario.area_km2 <= 0.0) throw std::runtime_error("geodata: scenario area must be > 0");
    return scenario;
}

GeoScenario load_geodata(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("geodata: cannot open " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("geodata: parse error in " + path + ": " + e.what());
    }
    std::vector<Prism> prisms;
    std::vector<Polygon2D> valid;
    for (const auto& feature : doc.at("features")) {
        const auto& props = feature.at("properties");
        const std::string kind = props.at("kind").get<std::string>();
        Polygon2D poly = parse_polygon(feature.at("geometry"));
        if (kind == "building") {
            if (!props.contains("height_m")) {
                throw std::runtime_error("geodata: building feature without height_m");
            }
            const double h = props.at("height_m").get<double>();
            if (h <= 0.0) throw std::runtime_error("geodata: building height must be > 0");
            prisms.push_back({std::move(poly), h});
        } else if (kind == "valid_region") {
            valid.push_back(std::move(poly));
        } else {
            throw std::runtime_error("geodata: unknown feature kind '" + kind + "'");
        }
    }
    const double area = doc.value("area_km2", 0.0);
    GeoScenario scenario = geoscenario_from_parts(std::move(prisms), std::move(valid), area);
    scenario.origin_reference = doc.value("origin", std::string{});
    return scenario;
}

}  // namespace rfisim
