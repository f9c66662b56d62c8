#include "rfisim/antenna.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rfisim {

double pattern_gain_dbi(const BeamPattern& pattern, double offset_rad) {
    if (pattern.hpbw_rad <= 0.0) throw std::invalid_argument("pattern_gain: hpbw must be > 0");
    const double offset = std::abs(offset_rad);
    const double ratio = offset / pattern.hpbw_rad;
    const double rolloff = 12.0 * ratio * ratio;
    return pattern.peak_gain_dbi - std::min(rolloff, pattern.peak_gain_dbi - pattern.floor_gain_dbi);
}

Vec3 Direction::unit() const {
    const double ce = std::cos(elevation_rad);
    return {ce * std::sin(azimuth_rad), ce * std::cos(azimuth_rad), std::sin(elevation_rad)};
}

Direction Direction::from_vector(const Vec3& v) {
    Direction d;
    d.azimuth_rad = std::atan2(v.x, v.y);
    d.elevation_rad = std::atan2(v.z, v.xy().norm());
    return d;
}

double angle_between(const Direction& a, const Direction& b) {
    const double c = std::clamp(a.unit().dot(b.unit()), -1.0, 1.0);
    return std::acos(c);
}

bool Sector::contains_azimuth(double azimuth_rad) const {
    if (width_rad >= 2.0 * kPi - 1e-12) return true;
    double delta = std::fmod(azimuth_rad - boresight_azimuth_rad, 2.0 * kPi);
    if (delta > kPi) delta -= 2.0 * kPi;
    if (delta < -kPi) delta += 2.0 * kPi;
    return std::abs(delta) <= width_rad / 2.0;
}

Direction geometric_beamform(const Vec3& tx, const Vec3& rx) {
    const Vec3 delta = rx - tx;
    if (delta.norm() < 1e-9) {
        throw std::invalid_argument("geometric_beamform: coincident endpoints");
    }
    return Direction::from_vector(delta);
}

double gain_toward_dbi(const Sector& sector, const BeamPattern& pattern, const Direction& target) {
    return pattern_gain_dbi(pattern, angle_between(sector.steering, target));
}

}  // namespace rfisim
