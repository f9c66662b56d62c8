#pragma once

#include <cstdint>
#include <vector>

#include "rfisim/vec.hpp"

namespace rfisim {

struct Polygon2D {
    std::vector<Vec2> points;

    bool contains(const Vec2& p) const;  // even-odd rule, boundary counts as inside
    double area() const;                 // absolute area
    bool is_simple() const;              // no self-intersections
    void bounding_box(Vec2& lo, Vec2& hi) const;
};

// Extruded 2.5D building: footprint polygon from z=0 up to height_m.
struct Prism {
    Polygon2D footprint;
    double height_m = 0.0;
};

bool segment_intersects_prism(const Vec3& a, const Vec3& b, const Prism& prism);

// Immutable set of building prisms with a uniform 2D grid index for occlusion
// queries. Queries are read-only and safe to run from parallel workers.
class BuildingSet {
public:
    BuildingSet() = default;
    explicit BuildingSet(std::vector<Prism> prisms);

    // True iff the open segment a-b intersects any prism.
    bool segment_blocked(const Vec3& a, const Vec3& b) const;
    // All-prisms reference implementation, kept as the test oracle.
    bool segment_blocked_naive(const Vec3& a, const Vec3& b) const;

    bool point_in_footprint(const Vec2& p) const;

    const std::vector<Prism>& prisms() const { return prisms_; }
    bool empty() const { return prisms_.empty(); }
    double max_height_m() const { return max_height_m_; }

private:
    void collect_candidates(const Vec3& a, const Vec3& b, std::vector<uint32_t>& out) const;

    std::vector<Prism> prisms_;
    double max_height_m_ = 0.0;
    // grid index
    Vec2 grid_lo_{0.0, 0.0};
    double cell_size_ = 1.0;
    int nx_ = 0;
    int ny_ = 0;
    std::vector<std::vector<uint32_t>> cells_;
};

}  // namespace rfisim
