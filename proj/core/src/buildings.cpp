#include "rfisim/buildings.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rfisim {
namespace {

int orientation(const Vec2& a, const Vec2& b, const Vec2& c) {
    const double v = (b - a).cross(c - a);
    if (v > 0.0) return 1;
    if (v < 0.0) return -1;
    return 0;
}

bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

// Closed-segment intersection test, collinear overlaps included.
bool segments_intersect(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2) {
    const int o1 = orientation(p1, p2, q1);
    const int o2 = orientation(p1, p2, q2);
    const int o3 = orientation(q1, q2, p1);
    const int o4 = orientation(q1, q2, p2);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(p1, p2, q1)) return true;
    if (o2 == 0 && on_segment(p1, p2, q2)) return true;
    if (o3 == 0 && on_segment(q1, q2, p1)) return true;
    if (o4 == 0 && on_segment(q1, q2, p2)) return true;
    return false;
}

}  // namespace

bool Polygon2D::contains(const Vec2& p) const {
    const size_t n = points.size();
    bool inside = false;
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2& a = points[i];
        const Vec2& b = points[j];
        // Boundary points count as inside.
        if (orientation(a, b, p) == 0 && on_segment(a, b, p)) return true;
        if ((a.y > p.y) != (b.y > p.y)) {
            const double x_cross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (p.x < x_cross) inside = !inside;
        }
    }
    return inside;
}

double Polygon2D::area() const {
    double acc = 0.0;
    const size_t n = points.size();
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        acc += points[j].cross(points[i]);
    }
    return std::abs(acc) / 2.0;
}

bool Polygon2D::is_simple() const {
    const size_t n = points.size();
    if (n < 3) return false;
    for (size_t i = 0; i < n; ++i) {
        const Vec2& a1 = points[i];
        const Vec2& a2 = points[(i + 1) % n];
        for (size_t j = i + 1; j < n; ++j) {
            // Skip adjacent edges (they share an endpoint).
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
            const Vec2& b1 = points[j];
            const Vec2& b2 = points[(j + 1) % n];
            if (segments_intersect(a1, a2, b1, b2)) return false;
        }
    }
    return true;
}

void Polygon2D::bounding_box(Vec2& lo, Vec2& hi) const {
    lo = {std::numeric_limits<double>::max(), std::numeric_limits<double>::max()};
    hi = {std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()};
    for (const auto& p : points) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
    }
}

bool segment_intersects_prism(const Vec3& a, const Vec3& b, const Prism& prism) {
    // Clip the parameter range to z in [0, height].
    double t0 = 0.0;
    double t1 = 1.0;
    const double dz = b.z - a.z;
    if (std::abs(dz) < 1e-12) {
        if (a.z < 0.0 || a.z > prism.height_m) return false;
    } else {
        double ta = (0.0 - a.z) / dz;
        double tb = (prism.height_m - a.z) / dz;
        if (ta > tb) std::swap(ta, tb);
        t0 = std::max(t0, ta);
        t1 = std::min(t1, tb);
        if (t0 >= t1) return false;
    }
    const Vec2 p0 = {a.x + t0 * (b.x - a.x), a.y + t0 * (b.y - a.y)};
    const Vec2 p1 = {a.x + t1 * (b.x - a.x), a.y + t1 * (b.y - a.y)};
    if (prism.footprint.contains(p0) || prism.footprint.contains(p1)) return true;
    const size_t n = prism.footprint.points.size();
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        if (segments_intersect(p0, p1, prism.footprint.points[j], prism.footprint.points[i])) {
            return true;
        }
    }
    return false;
}

BuildingSet::BuildingSet(std::vector<Prism> prisms) : prisms_(std::move(prisms)) {
    if (prisms_.empty()) return;
    Vec2 lo = {std::numeric_limits<double>::max(), std::numeric_limits<double>::max()};
    Vec2 hi = {std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()};
    for (const auto& p : prisms_) {
        max_height_m_ = std::max(max_height_m_, p.height_m);
        Vec2 plo, phi;
        p.footprint.bounding_box(plo, phi);
        lo.x = std::min(lo.x, plo.x);
        lo.y = std::min(lo.y, plo.y);
        hi.x = std::max(hi.x, phi.x);
        hi.y = std::max(hi.y, phi.y);
    }
    const double extent = std::max(hi.x - lo.x, hi.y - lo.y);
    cell_size_ = std::max(10.0, extent / 256.0);
    grid_lo_ = lo;
    nx_ = std::max(1, static_cast<int>(std::ceil((hi.x - lo.x) / cell_size_)));
    ny_ = std::max(1, static_cast<int>(std::ceil((hi.y - lo.y) / cell_size_)));
    cells_.resize(static_cast<size_t>(nx_) * ny_);
    for (uint32_t idx = 0; idx < prisms_.size(); ++idx) {
        Vec2 plo, phi;
        prisms_[idx].footprint.bounding_box(plo, phi);
        const int x0 = std::clamp(static_cast<int>((plo.x - lo.x) / cell_size_), 0, nx_ - 1);
        const int x1 = std::clamp(static_cast<int>((phi.x - lo.x) / cell_size_), 0, nx_ - 1);
        const int y0 = std::clamp(static_cast<int>((plo.y - lo.y) / cell_size_), 0, ny_ - 1);
        const int y1 = std::clamp(static_cast<int>((phi.y - lo.y) / cell_size_), 0, ny_ - 1);
        for (int y = y0; y <= y1; ++y) {
            for (int x = x0; x <= x1; ++x) {
                cells_[static_cast<size_t>(y) * nx_ + x].push_back(idx);
            }
        }
    }
}

void BuildingSet::collect_candidates(const Vec3& a, const Vec3& b,
                                     std::vector<uint32_t>& out) const {
    // Restrict to the part of the segment below the tallest building; the
    // satellite end of a ray exits the city volume almost immediately.
    double t0 = 0.0;
    double t1 = 1.0;
    const double dz = b.z - a.z;
    if (std::abs(dz) > 1e-12) {
        double ta = (0.0 - a.z) / dz;
        double tb = (max_height_m_ - a.z) / dz;
        if (ta > tb) std::swap(ta, tb);
        t0 = std::max(0.0, ta);
        t1 = std::min(1.0, tb);
        if (t0 >= t1) return;
    } else if (a.z < 0.0 || a.z > max_height_m_) {
        return;
    }
    Vec2 p0 = {a.x + t0 * (b.x - a.x), a.y + t0 * (b.y - a.y)};
    Vec2 p1 = {a.x + t1 * (b.x - a.x), a.y + t1 * (b.y - a.y)};

    // 2D DDA over the grid cells covered by p0-p1 (one-cell margin).
    auto cell_of = [&](const Vec2& p, int& cx, int& cy) {
        cx = static_cast<int>(std::floor((p.x - grid_lo_.x) / cell_size_));
        cy = static_cast<int>(std::floor((p.y - grid_lo_.y) / cell_size_));
    };
    int cx0, cy0, cx1, cy1;
    cell_of(p0, cx0, cy0);
    cell_of(p1, cx1, cy1);
    const int steps = std::max(std::abs(cx1 - cx0), std::abs(cy1 - cy0)) + 1;
    int prev_cx = std::numeric_limits<int>::min();
    int prev_cy = 0;
    for (int s = 0; s <= steps; ++s) {
        const double t = static_cast<double>(s) / steps;
        const Vec2 p = {p0.x + t * (p1.x - p0.x), p0.y + t * (p1.y - p0.y)};
        int cx, cy;
        cell_of(p, cx, cy);
        if (cx == prev_cx && cy == prev_cy) continue;
        prev_cx = cx;
        prev_cy = cy;
        for (int y = cy - 1; y <= cy + 1; ++y) {
            for (int x = cx - 1; x <= cx + 1; ++x) {
                if (x < 0 || x >= nx_ || y < 0 || y >= ny_) continue;
                const auto& cell = cells_[static_cast<size_t>(y) * nx_ + x];
                out.insert(out.end(), cell.begin(), cell.end());
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
}

bool BuildingSet::segment_blocked(const Vec3& a, const Vec3& b) const {
    if (prisms_.empty()) return false;
    std::vector<uint32_t> candidates;
    collect_candidates(a, b, candidates);
    for (uint32_t idx : candidates) {
        if (segment_intersects_prism(a, b, prisms_[idx])) return true;
    }
    return false;
}

bool BuildingSet::segment_blocked_naive(const Vec3& a, const Vec3& b) const {
    for (const auto& p : prisms_) {
        if (segment_intersects_prism(a, b, p)) return true;
    }
    return false;
}

bool BuildingSet::point_in_footprint(const Vec2& p) const {
    if (prisms_.empty()) return false;
    const int cx = std::clamp(static_cast<int>((p.x - grid_lo_.x) / cell_size_), 0, nx_ - 1);
    const int cy = std::clamp(static_cast<int>((p.y - grid_lo_.y) / cell_size_), 0, ny_ - 1);
    for (uint32_t idx : cells_[static_cast<size_t>(cy) * nx_ + cx]) {
        if (prisms_[idx].footprint.contains(p)) return true;
    }
    return false;
}

}  // namespace rfisim
