#include "rfisim/atmosphere.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "rfisim/units.hpp"

namespace rfisim {

double AtmosphereProfile::gamma_db_per_km_at(double height_m) const {
    if (layers.empty()) return 0.0;
    if (height_m <= layers.front().height_m) return layers.front().gamma_db_per_km();
    if (height_m >= layers.back().height_m) {
        return height_m > layers.back().height_m ? 0.0 : layers.back().gamma_db_per_km();
    }
    auto it = std::upper_bound(layers.begin(), layers.end(), height_m,
                               [](double h, const AtmosphereLayer& l) { return h < l.height_m; });
    const AtmosphereLayer& hi = *it;
    const AtmosphereLayer& lo = *(it - 1);
    const double t = (height_m - lo.height_m) / (hi.height_m - lo.height_m);
    return lo.gamma_db_per_km() + t * (hi.gamma_db_per_km() - lo.gamma_db_per_km());
}

void AtmosphereProfile::validate() const {
    if (layers.empty()) throw std::runtime_error("atmosphere profile: no layers");
    if (layers.front().height_m > 0.0) {
        throw std::runtime_error("atmosphere profile: gap below first layer (must cover h=0)");
    }
    for (size_t i = 0; i < layers.size(); ++i) {
        if (layers[i].gamma_oxygen_db_per_km < 0.0 || layers[i].gamma_water_db_per_km < 0.0) {
            throw std::runtime_error("atmosphere profile: negative attenuation");
        }
        if (i > 0 && layers[i].height_m <= layers[i - 1].height_m) {
            throw std::runtime_error("atmosphere profile: heights not strictly increasing");
        }
    }
}

AtmosphereTable AtmosphereTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("atmosphere: cannot open " + path);
    std::vector<AtmosphereProfile> profiles;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "frequency_ghz") {
            double f_ghz = 0.0;
            if (!(ls >> f_ghz) || f_ghz <= 0.0) {
                throw std::runtime_error("atmosphere: bad frequency_ghz at line " +
                                         std::to_string(lineno));
            }
            profiles.push_back({f_ghz * 1e9, {}});
        } else {
            if (profiles.empty()) {
                throw std::runtime_error("atmosphere: data before frequency_ghz header at line " +
                                         std::to_string(lineno));
            }
            AtmosphereLayer layer;
            try {
                layer.height_m = std::stod(first);
            } catch (const std::exception&) {
                throw std::runtime_error("atmosphere: parse error at line " + std::to_string(lineno));
            }
            if (!(ls >> layer.gamma_oxygen_db_per_km >> layer.gamma_water_db_per_km)) {
                throw std::runtime_error("atmosphere: parse error at line " + std::to_string(lineno));
            }
            profiles.back().layers.push_back(layer);
        }
    }
    return from_profiles(std::move(profiles));
}

AtmosphereTable AtmosphereTable::from_profiles(std::vector<AtmosphereProfile> profiles) {
    for (const auto& p : profiles) p.validate();
    std::sort(profiles.begin(), profiles.end(),
              [](const AtmosphereProfile& a, const AtmosphereProfile& b) {
                  return a.frequency_hz < b.frequency_hz;
              });
    AtmosphereTable t;
    t.profiles_ = std::move(profiles);
    return t;
}

double AtmosphereTable::min_frequency_hz() const {
    if (profiles_.empty()) throw std::runtime_error("atmosphere: empty table");
    return profiles_.front().frequency_hz;
}

double AtmosphereTable::max_frequency_hz() const {
    if (profiles_.empty()) throw std::runtime_error("atmosphere: empty table");
    return profiles_.back().frequency_hz;
}

AtmosphereProfile AtmosphereTable::profile_for(double frequency_hz) const {
    if (profiles_.empty()) throw std::runtime_error("atmosphere: empty table");
    const double tol = 1e-3;  // Hz tolerance is irrelevant at GHz scales; match loosely
    if (frequency_hz < profiles_.front().frequency_hz - tol ||
        frequency_hz > profiles_.back().frequency_hz + tol) {
        throw std::runtime_error("atmosphere: frequency outside tabulated range");
    }
    auto it = std::lower_bound(profiles_.begin(), profiles_.end(), frequency_hz,
                               [](const AtmosphereProfile& p, double f) {
                                   return p.frequency_hz < f;
                               });
    if (it == profiles_.end()) return profiles_.back();
    if (std::abs(it->frequency_hz - frequency_hz) < 1e6) return *it;
    if (it == profiles_.begin()) return profiles_.front();
    const AtmosphereProfile& hi = *it;
    const AtmosphereProfile& lo = *(it - 1);
    const double t = (frequency_hz - lo.frequency_hz) / (hi.frequency_hz - lo.frequency_hz);
    auto component_at = [](const AtmosphereProfile& p, double h, bool oxygen) {
        AtmosphereProfile single;
        single.frequency_hz = p.frequency_hz;
        single.layers.reserve(p.layers.size());
        for (const auto& l : p.layers) {
            single.layers.push_back({l.height_m, oxygen ? l.gamma_oxygen_db_per_km : 0.0,
                                     oxygen ? 0.0 : l.gamma_water_db_per_km});
        }
        return single.gamma_db_per_km_at(h);
    };
    AtmosphereProfile out;
    out.frequency_hz = frequency_hz;
    out.layers.reserve(lo.layers.size());
    for (const auto& l : lo.layers) {
        AtmosphereLayer mixed;
        mixed.height_m = l.height_m;
        mixed.gamma_oxygen_db_per_km =
            (1.0 - t) * l.gamma_oxygen_db_per_km + t * component_at(hi, l.height_m, true);
        mixed.gamma_water_db_per_km =
            (1.0 - t) * l.gamma_water_db_per_km + t * component_at(hi, l.height_m, false);
        out.layers.push_back(mixed);
    }
    return out;
}

double atmospheric_loss_db(const AtmosphereProfile& profile, double apparent_nadir_rad,
                           double sat_altitude_m) {
    if (apparent_nadir_rad < 0.0 || apparent_nadir_rad > deg_to_rad(80.0) + 1e-9) {
        throw std::domain_error("atmospheric_loss: look angle outside [0, 80 deg]");
    }
    profile.validate();
    const double h_top = std::min(sat_altitude_m, profile.top_height_m());
    // Trapezoidal integral of gamma(h) dh over the sample grid, then the
    // constant-elevation slant factor 1/cos(alpha_s).
    double zenith_db = 0.0;
    double prev_h = 0.0;
    double prev_g = profile.gamma_db_per_km_at(0.0);
    for (const auto& l : profile.layers) {
        if (l.height_m <= 0.0) {
            prev_h = l.height_m;
            prev_g = l.gamma_db_per_km();
            continue;
        }
        const double h = std::min(l.height_m, h_top);
        const double g = profile.gamma_db_per_km_at(h);
        zenith_db += 0.5 * (prev_g + g) * (h - prev_h) * 1e-3;
        prev_h = h;
        prev_g = g;
        if (l.height_m >= h_top) break;
    }
    return zenith_db / std::cos(apparent_nadir_rad);
}

}  // namespace rfisim
