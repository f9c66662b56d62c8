#include "rfisim/propagation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rfisim {

std::complex<double> fresnel_te(double alpha_i_rad, std::complex<double> epsilon) {
    if (alpha_i_rad < 0.0 || alpha_i_rad >= kPi / 2.0) {
        throw std::domain_error("fresnel_te: incidence angle outside [0, 90 deg)");
    }
    const std::complex<double> n = std::sqrt(epsilon);
    const double cos_i = std::cos(alpha_i_rad);
    const double sin_i = std::sin(alpha_i_rad);
    const std::complex<double> s = sin_i / n;
    const std::complex<double> root = n * std::sqrt(1.0 - s * s);
    return (cos_i - root) / (cos_i + root);
}

RoughnessFactor roughness_factor(double sigma_m, double alpha_i_rad, double lambda_m) {
    if (sigma_m < 0.0 || lambda_m <= 0.0) {
        throw std::invalid_argument("roughness_factor: sigma >= 0 and lambda > 0 required");
    }
    const double a = 4.0 * kPi * sigma_m * std::cos(alpha_i_rad) / lambda_m;
    RoughnessFactor f;
    f.g = a * a;
    f.rho = std::exp(-f.g / 2.0);
    return f;
}

double reflection_loss_db(double alpha_i_rad, const MaterialProperties& mat, double frequency_hz) {
    const double r_mag = std::abs(fresnel_te(alpha_i_rad, mat.epsilon));
    const double rho = roughness_factor(mat.sigma_rough_m, alpha_i_rad, wavelength(frequency_hz)).rho;
    if (r_mag <= 0.0) return std::numeric_limits<double>::infinity();
    return -20.0 * std::log10(rho * r_mag);
}

double free_space_loss_db(double distance_m, double frequency_hz) {
    if (distance_m <= 0.0) throw std::domain_error("free_space_loss: distance must be positive");
    return 20.0 * std::log10(4.0 * kPi * frequency_hz * distance_m / kSpeedOfLight);
}

void finalize_field(RayContribution& ray, double tx_power_dbw) {
    if (ray.blocked) {
        ray.field = {0.0, 0.0};
        return;
    }
    const double budget_dbw = tx_power_dbw + ray.tx_gain_dbi + ray.rx_gain_dbi -
                              ray.free_space_db - ray.reflection_db - ray.atmospheric_db;
    const double amp = amplitude_from_dbw(budget_dbw);
    ray.field = std::polar(amp, ray.phase_rad);
}

double combine_rays_dbw(std::span<const RayContribution> rays) {
    std::complex<double> sum = {0.0, 0.0};
    for (const auto& r : rays) {
        if (!r.blocked) sum += r.field;
    }
    const double power = std::norm(sum);
    if (power <= 0.0) return -std::numeric_limits<double>::infinity();
    return linear_to_db(power);
}

}  // namespace rfisim
