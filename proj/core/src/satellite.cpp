#include "rfisim/satellite.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rfisim/units.hpp"

namespace rfisim {

double SatelliteConfig::resolved_gain_dbi() const {
    if (boresight_gain_dbi) return *boresight_gain_dbi;
    const double hpbw_deg = rad_to_deg(hpbw_rad);
    return 10.0 * std::log10(41253.0 / (hpbw_deg * hpbw_deg));
}

BeamPattern SatelliteConfig::pattern() const {
    // Far-sidelobe floor below boresight; large reflector sensors roll off far
    // deeper than the 43.5 dB envelope used for the terrestrial arrays.  Limb
    // sounders carry tight stray-light requirements because the measurement
    // never faces the warm surface, so their rejection outside the field of
    // view is deeper still.
    const double g = resolved_gain_dbi();
    const double floor_db = scan_mode == ScanMode::Limb ? 90.0 : 60.0;
    return {g, hpbw_rad, g - floor_db};
}

void SatelliteConfig::validate() const {
    if (altitude_m <= 0.0) throw std::invalid_argument("satellite: altitude must be > 0");
    if (hpbw_rad <= 0.0) throw std::invalid_argument("satellite: hpbw must be > 0");
    if (frequency_hz <= 0.0) throw std::invalid_argument("satellite: frequency must be > 0");
    if (interference_threshold_dbw >= 0.0) {
        throw std::invalid_argument("satellite: interference threshold must be < 0 dBW");
    }
}

SatelliteConfig satellite_preset(const std::string& name) {
    SatelliteConfig cfg;
    cfg.name = name;
    if (name == "tempest-164") {
        cfg.altitude_m = 400e3;
        cfg.hpbw_rad = deg_to_rad(1.68);
        cfg.frequency_hz = 164e9;
        cfg.scan_mode = ScanMode::Conical;
        cfg.interference_threshold_dbw = -163.0;
    } else if (name == "tempest-178") {
        cfg.altitude_m = 400e3;
        cfg.hpbw_rad = deg_to_rad(1.72);
        cfg.frequency_hz = 178e9;
        cfg.scan_mode = ScanMode::Conical;
        cfg.interference_threshold_dbw = -163.0;
    } else if (name == "aura-mls-240") {
        cfg.altitude_m = 705e3;
        cfg.hpbw_rad = deg_to_rad(0.066);
        cfg.frequency_hz = 240e9;  // the instrument channel near 240 GHz
        cfg.scan_mode = ScanMode::Limb;
        cfg.interference_threshold_dbw = -194.0;
        cfg.limb_tangent_height_m = 10e3;
    } else {
        throw std::invalid_argument("unknown satellite preset: " + name);
    }
    return cfg;
}

SatelliteState make_satellite(const SatelliteConfig& cfg, double nadir_rad, double azimuth_rad,
                              const Vec3& center, const EarthModel& earth) {
    cfg.validate();
    const double alpha_s = apparent_nadir(nadir_rad, cfg.altitude_m, earth);
    if (alpha_s > deg_to_rad(80.0) + 1e-9) {
        throw std::domain_error("make_satellite: look angle above 80 deg");
    }
    SatelliteState state;
    state.config = cfg;
    state.nadir_rad = nadir_rad;
    state.apparent_nadir_rad = alpha_s;
    state.azimuth_rad = azimuth_rad;
    state.position = satellite_position(nadir_rad, azimuth_rad, cfg.altitude_m, center, earth);
    if (cfg.scan_mode == ScanMode::Conical) {
        state.boresight = (center - state.position).normalized();
    } else {
        // Limb view: the boresight grazes the atmosphere at the tangent
        // height far beyond the network, so its apparent nadir follows from
        // the tangent geometry asin((R + h_t) / (R + h_sat)).  Azimuthally it
        // looks from the satellite across the network.
        const double alpha_limb = std::asin((earth.radius_m + cfg.limb_tangent_height_m) /
                                            (earth.radius_m + cfg.altitude_m));
        const double az_fwd = azimuth_rad + kPi;
        state.boresight = Vec3{std::sin(az_fwd) * std::sin(alpha_limb),
                               std::cos(az_fwd) * std::sin(alpha_limb), -std::cos(alpha_limb)};
    }
    return state;
}

double satellite_gain_dbi(const SatelliteState& state, const Vec3& ground_point) {
    const Vec3 arrival = (ground_point - state.position).normalized();
    const double c = std::clamp(arrival.dot(state.boresight), -1.0, 1.0);
    return pattern_gain_dbi(state.config.pattern(), std::acos(c));
}

}  // namespace rfisim
