#include "rfisim/geometry.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "rfisim/units.hpp"

namespace rfisim {

double apparent_nadir(double nadir_rad, double altitude_m, const EarthModel& earth) {
    if (nadir_rad < 0.0) throw std::domain_error("apparent_nadir: negative nadir angle");
    const double r = earth.radius_m + altitude_m;
    const double arg = r / earth.radius_m * std::sin(nadir_rad);
    if (arg > 1.0 + 1e-12) {
        throw std::domain_error("apparent_nadir: boresight points past the horizon");
    }
    return std::asin(std::min(arg, 1.0));
}

double nadir_from_apparent(double apparent_nadir_rad, double altitude_m, const EarthModel& earth) {
    if (apparent_nadir_rad < 0.0 || apparent_nadir_rad > kPi / 2.0 + 1e-12) {
        throw std::domain_error("nadir_from_apparent: look angle outside [0, 90 deg]");
    }
    const double r = earth.radius_m + altitude_m;
    return std::asin(earth.radius_m / r * std::sin(apparent_nadir_rad));
}

ReflectionGeometry reflection_geometry(double node_height_m, double sat_height_m,
                                       double apparent_nadir_rad) {
    if (node_height_m <= 0.0 || sat_height_m < 100.0 * node_height_m) {
        throw std::invalid_argument("reflection_geometry: requires h_s >= 100 * h_node");
    }
    if (apparent_nadir_rad < 0.0 || apparent_nadir_rad > kPi / 2.0 + 1e-12) {
        throw std::invalid_argument("reflection_geometry: look angle outside [0, 90 deg]");
    }
    const double h1 = node_height_m;
    const double hs = sat_height_m;

    if (apparent_nadir_rad >= kPi / 2.0 - 1e-12) {
        // Grazing limit: both rays run parallel to the ground and the path
        // difference vanishes identically.
        ReflectionGeometry g;
        g.incidence_rad = kPi / 2.0;
        g.los_angle_rad = kPi;
        g.node_to_reflection_m = std::numeric_limits<double>::infinity();
        g.reflection_to_satellite_m = std::numeric_limits<double>::infinity();
        g.path_difference_m = 0.0;
        g.path_difference_approx_m = 0.0;
        return g;
    }

    // alpha_i = arctan(h_s / (h_s + h_1) * tan(alpha_s)), evaluated with atan2 so
    // the grazing limit alpha_s -> 90 deg is exact.
    const double alpha_i = std::atan2(hs * std::sin(apparent_nadir_rad),
                                      (hs + h1) * std::cos(apparent_nadir_rad));
    const double tan_i = std::tan(alpha_i);
    ReflectionGeometry g;
    g.incidence_rad = alpha_i;
    g.node_to_reflection_m = h1 * tan_i;
    g.reflection_to_satellite_m = hs * tan_i;
    g.los_angle_rad = std::atan2(hs - h1, (hs + h1) * tan_i) + kPi / 2.0;

    // Exact difference of the two path lengths, written in the algebraically
    // equivalent rationalized form that stays stable when x >> h.
    const double x = g.node_to_reflection_m + g.reflection_to_satellite_m;
    const double sum_sq = x * x;
    const double long_path = std::sqrt(sum_sq + (h1 + hs) * (h1 + hs));
    const double short_path = std::sqrt(sum_sq + (hs - h1) * (hs - h1));
    g.path_difference_m = 4.0 * h1 * hs / (long_path + short_path);
    g.path_difference_approx_m = 2.0 * h1 * std::cos(apparent_nadir_rad);
    return g;
}

double flat_earth_error(double distance_m, const EarthModel& earth) {
    if (distance_m < 0.0) throw std::domain_error("flat_earth_error: negative distance");
    const double r = earth.radius_m;
    // sqrt(R^2 + x^2) - R, rationalized to avoid cancellation for x << R.
    return distance_m * distance_m / (std::sqrt(r * r + distance_m * distance_m) + r);
}

Vec3 satellite_position(double nadir_rad, double azimuth_rad, double altitude_m,
                        const Vec3& center, const EarthModel& earth) {
    const double alpha_s = apparent_nadir(nadir_rad, altitude_m, earth);
    const double horizontal = altitude_m * std::tan(alpha_s);
    return center + Vec3{horizontal * std::sin(azimuth_rad), horizontal * std::cos(azimuth_rad),
                         altitude_m};
}

}  // namespace rfisim
