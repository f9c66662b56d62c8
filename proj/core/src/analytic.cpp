#include "rfisim/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "rfisim/units.hpp"

namespace rfisim {
namespace {

// CDF of arctan(d / H) on (0, pi/2) for d ~ U[d1, d2], H ~ U[A, B] independent,
// 0 < A < B, 0 < d1 < d2:
//   F(t) = E_H[ clamp((t H - d1) / (d2 - d1), 0, 1) ],   t = tan(alpha).
double gap_cdf(double tan_alpha, double gap_lo, double gap_hi, double d1, double d2) {
    const double t = tan_alpha;
    if (t <= 0.0) return 0.0;
    const double dd = d2 - d1;
    const double lo = d1 / t;  // below this gap the integrand is 0
    const double hi = d2 / t;  // above this gap the integrand is 1
    const double ones = std::max(0.0, gap_hi - std::max(gap_lo, hi));
    const double a = std::min(std::max(gap_lo, lo), gap_hi);
    const double b = std::max(std::min(gap_hi, hi), gap_lo);
    double lin = 0.0;
    if (b > a) {
        lin = (0.5 * t * (b * b - a * a) - d1 * (b - a)) / dd;
    }
    return (ones + lin) / (gap_hi - gap_lo);
}

}  // namespace

void LinkDistribution::validate() const {
    if (!(distance_min_m > 0.0) || !(distance_max_m > distance_min_m)) {
        throw std::invalid_argument("LinkDistribution: need 0 < d1 < d2");
    }
    if (!(rx_height_min_m > 0.0) || !(rx_height_max_m > rx_height_min_m)) {
        throw std::invalid_argument("LinkDistribution: need 0 < h1 < h2");
    }
    const bool below = rx_height_max_m < tx_height_m;
    const bool above = rx_height_min_m > tx_height_m;
    if (!below && !above) {
        throw std::invalid_argument("LinkDistribution: rx height range must not straddle h_tx");
    }
}

double cdf_alpha_bf(double alpha_rad, const LinkDistribution& dist) {
    dist.validate();
    if (alpha_rad <= 0.0) return 0.0;
    if (alpha_rad >= kPi) return 1.0;
    if (dist.rx_height_max_m < dist.tx_height_m) {
        // Downward regime, support inside (0, pi/2).
        if (alpha_rad >= kPi / 2.0) return 1.0;
        return gap_cdf(std::tan(alpha_rad), dist.tx_height_m - dist.rx_height_max_m,
                       dist.tx_height_m - dist.rx_height_min_m, dist.distance_min_m,
                       dist.distance_max_m);
    }
    // Upward regime: alpha_BF = pi - arctan(d / (h_rx - h_tx)), support in (pi/2, pi).
    if (alpha_rad <= kPi / 2.0) return 0.0;
    const double mirrored = kPi - alpha_rad;
    return 1.0 - gap_cdf(std::tan(mirrored), dist.rx_height_min_m - dist.tx_height_m,
                         dist.rx_height_max_m - dist.tx_height_m, dist.distance_min_m,
                         dist.distance_max_m);
}

double cdf_alpha_bf_oracle(double alpha_rad, const LinkDistribution& dist, int n, uint64_t seed) {
    dist.validate();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> d_dist(dist.distance_min_m, dist.distance_max_m);
    std::uniform_real_distribution<double> h_dist(dist.rx_height_min_m, dist.rx_height_max_m);
    int count = 0;
    for (int i = 0; i < n; ++i) {
        const double d = d_dist(rng);
        const double h = h_dist(rng);
        const double alpha = std::atan2(d, dist.tx_height_m - h);
        if (alpha <= alpha_rad) ++count;
    }
    return static_cast<double>(count) / n;
}

AmplificationEvents amplification_probabilities(double alpha_s_rad, double theta_hb_rad,
                                                const LinkDistribution& dist) {
    if (theta_hb_rad < 0.0) throw std::invalid_argument("theta_hb must be >= 0");
    AmplificationEvents ev;
    ev.theta_los_minus_rad = kPi - alpha_s_rad - theta_hb_rad / 2.0;
    ev.theta_los_plus_rad = kPi - alpha_s_rad + theta_hb_rad / 2.0;
    ev.theta_gr_minus_rad = alpha_s_rad - theta_hb_rad / 2.0;
    ev.theta_gr_plus_rad = alpha_s_rad + theta_hb_rad / 2.0;
    auto clamp01pi = [](double x) { return std::clamp(x, 0.0, kPi); };
    ev.p_a_los = cdf_alpha_bf(clamp01pi(ev.theta_los_plus_rad), dist) -
                 cdf_alpha_bf(clamp01pi(ev.theta_los_minus_rad), dist);
    ev.p_a_gr = cdf_alpha_bf(clamp01pi(ev.theta_gr_plus_rad), dist) -
                cdf_alpha_bf(clamp01pi(ev.theta_gr_minus_rad), dist);
    return ev;
}

AmplificationEvents amplification_probabilities_oracle(double alpha_s_rad, double theta_hb_rad,
                                                       const LinkDistribution& dist, int n,
                                                       uint64_t seed) {
    dist.validate();
    AmplificationEvents ev = amplification_probabilities(alpha_s_rad, theta_hb_rad, dist);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> d_dist(dist.distance_min_m, dist.distance_max_m);
    std::uniform_real_distribution<double> h_dist(dist.rx_height_min_m, dist.rx_height_max_m);
    int n_los = 0;
    int n_gr = 0;
    const double los_center = kPi - alpha_s_rad;
    const double gr_center = alpha_s_rad;
    for (int i = 0; i < n; ++i) {
        const double d = d_dist(rng);
        const double h = h_dist(rng);
        const double alpha = std::atan2(d, dist.tx_height_m - h);
        if (std::abs(alpha - los_center) <= theta_hb_rad / 2.0) ++n_los;
        if (std::abs(alpha - gr_center) <= theta_hb_rad / 2.0) ++n_gr;
    }
    ev.p_a_los = static_cast<double>(n_los) / n;
    ev.p_a_gr = static_cast<double>(n_gr) / n;
    return ev;
}

}  // namespace rfisim
