#pragma once

#include <string>
#include <vector>

namespace rfisim {

struct AtmosphereLayer {
    double height_m = 0.0;
    double gamma_oxygen_db_per_km = 0.0;
    double gamma_water_db_per_km = 0.0;

    double gamma_db_per_km() const { return gamma_oxygen_db_per_km + gamma_water_db_per_km; }
};

// Specific-attenuation profile gamma(h) for one carrier frequency. Heights are
// strictly increasing; attenuation is zero above the last sample.
struct AtmosphereProfile {
    double frequency_hz = 0.0;
    std::vector<AtmosphereLayer> layers;

    double top_height_m() const { return layers.empty() ? 0.0 : layers.back().height_m; }
    // Linear interpolation between samples, 0 above the top, first sample below.
    double gamma_db_per_km_at(double height_m) const;
    void validate() const;  // throws on empty / unsorted / negative gamma / gap above ground
};

// Set of profiles loaded from the columnar data file:
//   frequency_ghz <f>
//   height_m gamma_o_dB_per_km gamma_w_dB_per_km
//   ...
// with '#' comments. Profiles for frequencies between tabulated blocks are
// linearly interpolated sample-by-sample.
class AtmosphereTable {
public:
    static AtmosphereTable load(const std::string& path);
    static AtmosphereTable from_profiles(std::vector<AtmosphereProfile> profiles);

    AtmosphereProfile profile_for(double frequency_hz) const;
    double min_frequency_hz() const;
    double max_frequency_hz() const;
    bool empty() const { return profiles_.empty(); }

private:
    std::vector<AtmosphereProfile> profiles_;  // sorted by frequency
};

// Slant-path gaseous absorption in dB, integrating gamma(h) along the ray.
// Uses the flat-layer simplification theta(h) = 90 deg - alpha_s, valid for
// look angles up to 80 deg; larger angles are rejected.
double atmospheric_loss_db(const AtmosphereProfile& profile, double apparent_nadir_rad,
                           double sat_altitude_m);

}  // namespace rfisim
