#pragma once

#include "rfisim/vec.hpp"

namespace rfisim {

struct EarthModel {
    double radius_m = 6371000.0;
};

// Satellite pointing geometry. The nadir angle is measured at the satellite
// between its boresight and the direction to the Earth center; the apparent
// nadir (look) angle is measured at the ground between the boresight and the
// local vertical. Simulation campaigns reject apparent nadir angles above 80
// degrees, where the flat-ground reflection model stops being valid.
struct SatGeometry {
    double altitude_m = 0.0;
    double nadir_rad = 0.0;
    double apparent_nadir_rad = 0.0;
    double azimuth_rad = 0.0;  // compass azimuth of the satellite seen from the network center
};

struct ReflectionGeometry {
    double incidence_rad = 0.0;       // angle at the ground reflection point, from vertical
    double los_angle_rad = 0.0;       // elevation-plane LoS angle at the node
    double node_to_reflection_m = 0.0;       // horizontal distance node -> reflection point
    double reflection_to_satellite_m = 0.0;  // horizontal distance reflection point -> satellite
    double path_difference_m = 0.0;          // exact LoS / reflected path length difference
    double path_difference_approx_m = 0.0;   // closed-form 2*h_node*cos(alpha_s), kept for testing
};

// Apparent nadir angle from the satellite nadir angle. Throws std::domain_error
// when the boresight points past the horizon.
double apparent_nadir(double nadir_rad, double altitude_m, const EarthModel& earth = {});

// Inverse of apparent_nadir, used to drive scenarios by look angle.
double nadir_from_apparent(double apparent_nadir_rad, double altitude_m, const EarthModel& earth = {});

// Specular reflection geometry on the z=0 ground plane for a node at
// node_height_m and a satellite at sat_height_m, seen under look angle
// apparent_nadir_rad. Requires sat_height_m >= 100 * node_height_m.
ReflectionGeometry reflection_geometry(double node_height_m, double sat_height_m,
                                       double apparent_nadir_rad);

// Height discrepancy |h_flat - h_sphere| at horizontal distance x from a ground
// node. Computed from the geometric construction (the printed closed form in
// the source material is dimensionally inconsistent): the spherical ground
// under the tangent-plane point at distance x sits sqrt(R^2 + x^2) - R below it.
double flat_earth_error(double distance_m, const EarthModel& earth = {});

// Satellite position in the local east-north-up frame such that the boresight
// toward `center` makes nadir angle nadir_rad. Horizontal offset is
// altitude * tan(apparent nadir); azimuth is a compass angle (0 = north, 90 = east).
Vec3 satellite_position(double nadir_rad, double azimuth_rad, double altitude_m,
                        const Vec3& center, const EarthModel& earth = {});

}  // namespace rfisim
