#pragma once

#include <memory>
#include <string>
#include <vector>

#include "rfisim/buildings.hpp"

namespace rfisim {

// Map input: extruded buildings plus the valid-placement region (streets and
// open ground), both in the local east-north-up frame (meters).
struct GeoScenario {
    std::shared_ptr<const BuildingSet> buildings;
    std::vector<Polygon2D> valid_region;
    double area_km2 = 0.0;
    std::string origin_reference;  // free-form geo-reference of the local origin

    bool in_valid_region(const Vec2& p) const;
    // Nearest point of the valid region (boundary or interior); distance in meters.
    Vec2 project_to_valid_region(const Vec2& p, double* distance_out = nullptr) const;
    void bounding_box(Vec2& lo, Vec2& hi) const;
};

// Loads a GeoJSON-style feature collection. Each feature carries a Polygon
// geometry in local meters plus properties:
//   kind = "building" (requires height_m > 0) | "valid_region"
// Optional top-level "area_km2" overrides the area computed from the valid region.
// Throws on parse errors, non-simple polygons, and missing height attributes.
GeoScenario load_geodata(const std::string& path);

GeoScenario geoscenario_from_parts(std::vector<Prism> buildings,
                                   std::vector<Polygon2D> valid_region,
                                   double area_km2 = 0.0);

}  // namespace rfisim
