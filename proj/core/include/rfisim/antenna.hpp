#pragma once

#include "rfisim/units.hpp"
#include "rfisim/vec.hpp"

namespace rfisim {

// Quadratic-in-dB main lobe with a hard side/back-lobe floor:
//   g(theta) = g_max - min(12 (theta / theta_hb)^2, g_max - g_floor)
// which gives exactly -3 dB at half the half-power beamwidth.
struct BeamPattern {
    double peak_gain_dbi = 0.0;
    double hpbw_rad = 0.0;
    double floor_gain_dbi = 0.0;

    // Table-driven node classes: both floors sit at -8.5 dBi.
    static BeamPattern gnb() { return {35.0, deg_to_rad(3.0), -8.5}; }
    static BeamPattern ue() { return {24.5, deg_to_rad(10.0), -8.5}; }
};

double pattern_gain_dbi(const BeamPattern& pattern, double offset_rad);

// Pointing direction: compass azimuth (0 = north, 90 = east, radians) and
// elevation above the horizontal plane.
struct Direction {
    double azimuth_rad = 0.0;
    double elevation_rad = 0.0;

    Vec3 unit() const;
    static Direction from_vector(const Vec3& v);
};

// Great-circle angle between two directions.
double angle_between(const Direction& a, const Direction& b);

enum class SectorRole { Silent, Transmitting, Receiving };

struct Sector {
    double boresight_azimuth_rad = 0.0;
    double width_rad = 2.0 * kPi;
    Direction steering;
    bool active = false;
    SectorRole role = SectorRole::Silent;

    bool contains_azimuth(double azimuth_rad) const;
};

// Steering direction for a transmitter aimed at a receiver along their LoS.
// The elevation beamforming angle (measured from straight down, 0..180 deg)
// is atan2(d, h_tx - h_rx); the returned elevation is that angle minus 90 deg.
Direction geometric_beamform(const Vec3& tx, const Vec3& rx);

// Pattern gain toward an arbitrary direction, evaluated at the great-circle
// offset from the sector steering direction.
double gain_toward_dbi(const Sector& sector, const BeamPattern& pattern, const Direction& target);

}  // namespace rfisim
