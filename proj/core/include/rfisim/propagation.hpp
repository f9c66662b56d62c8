#pragma once

#include <complex>
#include <limits>
#include <span>
#include <vector>

#include "rfisim/units.hpp"

namespace rfisim {

// Reflecting ground material. The reflection phase shift is fixed to pi, so
// the applied coefficient is -|r|.
struct MaterialProperties {
    std::complex<double> epsilon = {5.24, 0.0};  // concrete
    double sigma_rough_m = 0.05e-3;
    static constexpr double kPhaseShiftRad = kPi;
};

struct RoughnessFactor {
    double rho = 1.0;  // Rayleigh factor exp(-g/2), in (0, 1]
    double g = 0.0;    // (4 pi sigma cos(alpha_i) / lambda)^2
};

enum class RayKind { LoS, GroundReflection };

// One propagation path from a transmitter to the satellite, with its loss
// breakdown and complex field amplitude (sqrt of linear received power).
struct RayContribution {
    RayKind kind = RayKind::LoS;
    double path_length_m = 0.0;
    double free_space_db = 0.0;
    double reflection_db = 0.0;  // 0 for LoS
    double atmospheric_db = 0.0;
    bool blocked = false;
    double phase_rad = 0.0;
    double tx_gain_dbi = 0.0;
    double rx_gain_dbi = 0.0;
    std::complex<double> field = {0.0, 0.0};
};

struct TotalLoss {
    double free_space_db = 0.0;
    double reflection_db = 0.0;
    double atmospheric_db = 0.0;
    bool blocked = false;

    double total_db() const {
        if (blocked) return std::numeric_limits<double>::infinity();
        return free_space_db + reflection_db + atmospheric_db;
    }
};

// TE-polarization Fresnel coefficient with n = sqrt(epsilon).
std::complex<double> fresnel_te(double alpha_i_rad, std::complex<double> epsilon);

RoughnessFactor roughness_factor(double sigma_m, double alpha_i_rad, double lambda_m);

// -20 log10(rho * |r|), always >= 0 for passive materials.
double reflection_loss_db(double alpha_i_rad, const MaterialProperties& mat, double frequency_hz);

double free_space_loss_db(double distance_m, double frequency_hz);

// Populates the field from the link budget: P_tx + g_tx + g_rx - losses, with
// amplitude = sqrt(linear power). Blocked rays carry a zero field.
void finalize_field(RayContribution& ray, double tx_power_dbw);

// Coherent power of the superposed fields, in dBW. Empty input or full
// cancellation returns -infinity; callers serialize that as the -300 dBW floor.
double combine_rays_dbw(std::span<const RayContribution> rays);

}  // namespace rfisim
