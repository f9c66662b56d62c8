#pragma once

#include <cstdint>

namespace rfisim {

// Single-link distribution for the beamforming-angle CDF: transmitter at a
// fixed height, receiver height uniform in [rx_height_min, rx_height_max] and
// 2D distance uniform in [distance_min, distance_max], independent.
//
// Heights entirely below the transmitter select the downward-beam regime
// (angles in (0, 90) deg); heights entirely above select the upward regime
// (angles in (90, 180) deg). Straddling bounds are rejected.
struct LinkDistribution {
    double tx_height_m = 15.0;
    double rx_height_min_m = 1.6;
    double rx_height_max_m = 1.8;
    double distance_min_m = 1.0;
    double distance_max_m = 200.0;

    void validate() const;  // throws std::invalid_argument on bad bounds
};

// CDF of the elevation beamforming angle alpha_BF = atan2(d, h_tx - h_rx),
// measured from straight down in [0, pi]. Full-range: 0 below the support,
// 1 above it.
//
// The closed form integrates E_h[ clamp((tan(alpha) * (h_tx - h_rx) - d1) / (d2 - d1), 0, 1) ]
// exactly over the uniform height gap; this re-derivation covers the partial
// overlap regions and is validated against the sampling oracle below.
double cdf_alpha_bf(double alpha_rad, const LinkDistribution& dist);

// Empirical CDF estimate from n draws of (d, h_rx), for validating the closed form.
double cdf_alpha_bf_oracle(double alpha_rad, const LinkDistribution& dist, int n, uint64_t seed);

struct AmplificationEvents {
    double theta_los_minus_rad = 0.0;
    double theta_los_plus_rad = 0.0;
    double theta_gr_minus_rad = 0.0;
    double theta_gr_plus_rad = 0.0;
    double p_a_los = 0.0;  // P(LoS ray within the 3 dB main-lobe band)
    double p_a_gr = 0.0;   // P(ground-reflected ray within the band)
};

// Event bands: theta_LoS = pi - alpha_s +- theta_hb/2, theta_GR = alpha_s +- theta_hb/2,
// with probabilities computed as CDF differences.
AmplificationEvents amplification_probabilities(double alpha_s_rad, double theta_hb_rad,
                                                const LinkDistribution& dist);

// Direct sampling of the event definitions |alpha_BF - band center| <= theta_hb/2.
AmplificationEvents amplification_probabilities_oracle(double alpha_s_rad, double theta_hb_rad,
                                                       const LinkDistribution& dist, int n,
                                                       uint64_t seed);

}  // namespace rfisim
