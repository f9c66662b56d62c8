#pragma once

#include <optional>
#include <string>

#include "rfisim/antenna.hpp"
#include "rfisim/geometry.hpp"
#include "rfisim/vec.hpp"

namespace rfisim {

enum class ScanMode { Conical, Limb };

struct SatelliteConfig {
    std::string name;
    double altitude_m = 400e3;
    double hpbw_rad = 0.0;
    // Boresight gain; if unset, the aperture approximation
    // 10 log10(41253 / hpbw_deg^2) is used.
    std::optional<double> boresight_gain_dbi;
    double frequency_hz = 0.0;
    ScanMode scan_mode = ScanMode::Conical;
    double interference_threshold_dbw = -163.0;
    double limb_tangent_height_m = 10e3;  // limb mode only

    double resolved_gain_dbi() const;
    BeamPattern pattern() const;
    void validate() const;
};

// Built-in presets mirroring the studied sensors.
SatelliteConfig satellite_preset(const std::string& name);  // tempest-164, tempest-178, aura-mls-240

struct SatelliteState {
    SatelliteConfig config;
    Vec3 position;
    Vec3 boresight;  // unit vector
    double apparent_nadir_rad = 0.0;
    double nadir_rad = 0.0;
    double azimuth_rad = 0.0;
};

// Places the satellite over the network center and aims the boresight: conical
// scan at the center itself, limb scan at the point tangent_height above it.
SatelliteState make_satellite(const SatelliteConfig& cfg, double nadir_rad, double azimuth_rad,
                              const Vec3& center, const EarthModel& earth = {});

// Receive gain toward a ray arriving from ground_point, evaluated on the
// satellite beam pattern at the boresight offset.
double satellite_gain_dbi(const SatelliteState& state, const Vec3& ground_point);

}  // namespace rfisim
