// Acceptance gate: nine end-to-end criteria, one pass/fail line each.
// Run with no arguments for the full gate or with an index (1-9) for one
// criterion. Exit status = number of failed criteria.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "rfisim/analytic.hpp"
#include "rfisim/atmosphere.hpp"
#include "rfisim/geodata.hpp"
#include "rfisim/geometry.hpp"
#include "rfisim/montecarlo.hpp"
#include "rfisim/propagation.hpp"
#include "rfisim/satellite.hpp"
#include "rfisim/scenario.hpp"
#include "rfisim/units.hpp"

using namespace rfisim;

namespace {

struct Criterion {
    bool ok = true;
    std::string detail;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

// --------------------------------------------------------------------------
// 1. Geometry golden values.
bool criterion_geometry(std::string& detail) {
    Criterion c;
    auto deg = [](double rad) { return rad_to_deg(rad); };
    c.expect(std::abs(deg(apparent_nadir(deg_to_rad(65.0), 400e3)) - 74.41) < 0.01,
             "apparent nadir at 65 deg");
    c.expect(std::abs(deg(nadir_from_apparent(deg_to_rad(90.0), 400e3)) - 70.21) < 0.05,
             "horizon nadir");
    c.expect(std::abs(deg(apparent_nadir(deg_to_rad(10.0), 400e3)) - 10.63) < 0.01,
             "apparent nadir at 10 deg");
    c.expect(std::abs(deg(apparent_nadir(deg_to_rad(35.0), 400e3)) - 37.56) < 0.01,
             "apparent nadir at 35 deg");
    detail = c.detail;
    return c.ok;
}

// --------------------------------------------------------------------------
// 2. Path-difference limits and closed-form accuracy.
bool criterion_path_difference(std::string& detail) {
    Criterion c;
    const double h1 = 15.0;
    c.expect(reflection_geometry(h1, 400e3, deg_to_rad(90.0)).path_difference_m == 0.0,
             "delta_d at 90 deg not exactly 0");
    const double at_zero = reflection_geometry(h1, 400e3, 0.0).path_difference_m;
    c.expect(std::abs(at_zero - 2.0 * h1) < 1e-9, "delta_d at 0 deg not 2 h1");

    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> h_dist(0.1, 30.0);
    std::uniform_real_distribution<double> hs_dist(400e3, 1200e3);
    std::uniform_real_distribution<double> a_dist(0.0, deg_to_rad(89.99));
    double worst = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const auto geo = reflection_geometry(h_dist(rng), hs_dist(rng), a_dist(rng));
        const double rel =
            std::abs(geo.path_difference_m - geo.path_difference_approx_m) / geo.path_difference_m;
        worst = std::max(worst, rel);
    }
    c.expect(worst < 1e-4, "exact-vs-approx relative error " + std::to_string(worst));
    detail = c.detail.empty() ? "worst rel err " + std::to_string(worst) : c.detail;
    return c.ok;
}

// --------------------------------------------------------------------------
// 3. Reflection model.
bool criterion_reflection(std::string& detail) {
    Criterion c;
    MaterialProperties smooth;
    smooth.sigma_rough_m = 0.0;
    const double loss0 = reflection_loss_db(0.0, smooth, 178e9);
    c.expect(std::abs(loss0 - 8.14) < 0.01,
             "smooth normal-incidence loss " + std::to_string(loss0));

    MaterialProperties rough;
    rough.sigma_rough_m = 0.3e-3;
    MaterialProperties mild;  // default 0.05 mm
    const double gap = reflection_loss_db(0.0, rough, 178e9) - reflection_loss_db(0.0, mild, 178e9);
    c.expect(gap > 10.0, "sigma 0.3 vs 0.05 mm gap " + std::to_string(gap));

    // Rayleigh parameter crosses g = 1 within the band for sigma = 0.3 mm.
    const RoughnessFactor f = roughness_factor(0.3e-3, 0.0, wavelength(178e9));
    c.expect(f.g > 1.0, "g at 178 GHz below 1");
    c.expect(roughness_factor(0.3e-3, 0.0, wavelength(100e9)).g < f.g, "g not increasing in f");
    detail = c.detail;
    return c.ok;
}

// --------------------------------------------------------------------------
// 4. Analytic CDF vs Monte Carlo oracles.
bool criterion_analytic(std::string& detail) {
    Criterion c;
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst_cdf = 0.0;
    double worst_p = 0.0;
    for (int k = 0; k < 5; ++k) {
        LinkDistribution d;
        d.tx_height_m = 2.0 + 23.0 * u(rng);
        if (k >= 3) {  // upward-regime draws
            d.rx_height_min_m = d.tx_height_m + 0.5 + 5.0 * u(rng);
            d.rx_height_max_m = d.rx_height_min_m + 0.5 + 10.0 * u(rng);
        } else {
            d.rx_height_min_m = 0.2 + 0.5 * u(rng);
            d.rx_height_max_m = d.rx_height_min_m + 0.2 + u(rng);
        }
        d.distance_min_m = 1.0 + 10.0 * u(rng);
        d.distance_max_m = 60.0 + 240.0 * u(rng);
        d.validate();

        for (int a = 1; a <= 20; ++a) {
            const double alpha = deg_to_rad(a * 180.0 / 21.0);
            const double diff =
                std::abs(cdf_alpha_bf(alpha, d) - cdf_alpha_bf_oracle(alpha, d, 1000000, 7 + a));
            worst_cdf = std::max(worst_cdf, diff);
        }
        for (double alpha_s_deg : {10.63, 37.56, 74.41}) {
            const double alpha_s = deg_to_rad(alpha_s_deg);
            const auto ev = amplification_probabilities(alpha_s, deg_to_rad(3.0), d);
            const auto mc =
                amplification_probabilities_oracle(alpha_s, deg_to_rad(3.0), d, 1000000, 31 + k);
            worst_p = std::max(worst_p, std::abs(ev.p_a_los - mc.p_a_los));
            worst_p = std::max(worst_p, std::abs(ev.p_a_gr - mc.p_a_gr));
        }
    }
    c.expect(worst_cdf < 3e-3, "CDF mismatch " + std::to_string(worst_cdf));
    c.expect(worst_p < 3e-3, "event probability mismatch " + std::to_string(worst_p));
    detail = c.detail.empty() ? "worst |dF| " + std::to_string(worst_cdf) + ", worst |dP| " +
                                    std::to_string(worst_p)
                              : c.detail;
    return c.ok;
}

// --------------------------------------------------------------------------
// 5. Blockage index vs brute force.
bool criterion_blockage(std::string& detail) {
    Criterion c;
    const GeoScenario city = load_geodata(RFISIM_DATA_DIR "/fixtures/grid_small.json");
    const BuildingSet& set = *city.buildings;
    std::mt19937_64 rng(555);
    std::uniform_real_distribution<double> xy(-120.0, 120.0);
    std::uniform_real_distribution<double> z(0.0, 60.0);
    std::uniform_real_distribution<double> pick(0.0, 1.0);
    int mismatches = 0;
    for (int i = 0; i < 10000; ++i) {
        Vec3 a{xy(rng), xy(rng), z(rng)};
        Vec3 b{xy(rng), xy(rng), z(rng)};
        if (pick(rng) < 0.3) b = {xy(rng) * 1000.0, xy(rng) * 1000.0, 400e3};  // satellite rays
        if (set.segment_blocked(a, b) != set.segment_blocked_naive(a, b)) ++mismatches;
    }
    c.expect(mismatches == 0, std::to_string(mismatches) + " mismatching segments");
    detail = c.detail;
    return c.ok;
}

// --------------------------------------------------------------------------
// 6. Single-link frequency sweep, shape level.
struct SweepPoint {
    double f_ghz = 0.0;
    double los_dbw = 0.0;
    double gr_dbw = 0.0;
    double combined_dbw = 0.0;
    double constructive_dbw = 0.0;
    double destructive_dbw = 0.0;
};

std::vector<SweepPoint> single_link_sweep(double alpha_bf_deg, const AtmosphereTable& table) {
    SatelliteConfig sat_cfg;
    sat_cfg.name = "sweep";
    sat_cfg.altitude_m = 400e3;
    sat_cfg.hpbw_rad = deg_to_rad(2.0);
    sat_cfg.boresight_gain_dbi = 38.5;

    GroundNode node;
    node.height_m = 3.0;
    node.kind = NodeKind::Gnb;
    node.tx_power_dbm = 30.0;  // 0 dBW
    node.pattern = {35.0, deg_to_rad(3.0), -8.5};
    node.sectors.resize(1);
    node.sectors[0].width_rad = 2.0 * kPi;

    const BuildingSet open;
    std::vector<SweepPoint> sweep;
    for (double f_ghz = 100.0; f_ghz <= 300.0; f_ghz += 1.0) {
        sat_cfg.frequency_hz = f_ghz * 1e9;
        const SatelliteState sat = make_satellite(sat_cfg, deg_to_rad(35.0), 0.0, {0, 0, 0});
        const NodeRayGeometry geo =
            precompute_rays(node, sat, open, {}, table.profile_for(sat_cfg.frequency_hz));
        Direction steering{geo.sat_azimuth_rad, deg_to_rad(alpha_bf_deg) - kPi / 2.0};
        const auto rays = node_contribution(node, 0, steering, geo, sat_cfg.frequency_hz, 0.0);
        const auto& [los, gr] = *rays;
        SweepPoint p;
        p.f_ghz = f_ghz;
        const double a_los = std::abs(los.field);
        const double a_gr = std::abs(gr.field);
        p.los_dbw = linear_to_db(a_los * a_los);
        p.gr_dbw = linear_to_db(a_gr * a_gr);
        p.combined_dbw = linear_to_db(std::norm(los.field + gr.field));
        p.constructive_dbw = linear_to_db((a_los + a_gr) * (a_los + a_gr));
        const double diff = std::abs(a_los - a_gr);
        p.destructive_dbw = diff > 0.0 ? linear_to_db(diff * diff) : kPowerFloorDbw;
        sweep.push_back(p);
    }
    return sweep;
}

bool criterion_single_link(std::string& detail) {
    Criterion c;
    const AtmosphereTable table =
        AtmosphereTable::load(RFISIM_DATA_DIR "/atmosphere/gamma_100_300.txt");
    const auto at = [](const std::vector<SweepPoint>& s, double f) {
        for (const auto& p : s) {
            if (std::abs(p.f_ghz - f) < 0.5) return p;
        }
        return s.front();
    };

    const auto up = single_link_sweep(125.0, table);    // C2: LoS amplified regime
    const auto down = single_link_sweep(35.0, table);   // C1: GR amplified regime
    for (const auto& p : up) c.expect(p.los_dbw > p.gr_dbw, "LoS !> GR at 125 deg");
    for (const auto& p : down) c.expect(p.gr_dbw > p.los_dbw, "GR !> LoS at 35 deg");

    for (const auto* sweep : {&up, &down}) {
        for (const auto& p : *sweep) {
            c.expect(p.combined_dbw <= p.constructive_dbw + 1e-9, "combined above constructive");
            c.expect(p.combined_dbw + 1e-9 >= p.destructive_dbw, "combined below destructive");
        }
        // Absorption peaks: received power dips at the resonances.
        c.expect(at(*sweep, 119.0).combined_dbw < at(*sweep, 112.0).combined_dbw - 3.0 &&
                     at(*sweep, 119.0).combined_dbw < at(*sweep, 126.0).combined_dbw - 3.0,
                 "no 118 GHz absorption dip");
        c.expect(at(*sweep, 183.0).combined_dbw < at(*sweep, 170.0).combined_dbw - 10.0 &&
                     at(*sweep, 183.0).combined_dbw < at(*sweep, 196.0).combined_dbw - 10.0,
                 "no 183 GHz absorption dip");
    }
    detail = c.detail;
    return c.ok;
}

// --------------------------------------------------------------------------
// 7. Campaign trends on the 2 x 2 km fixture.
bool criterion_campaign(std::string& detail) {
    Criterion c;
    const GeoScenario city = load_geodata(RFISIM_DATA_DIR "/fixtures/city_2x2km.json");
    const AtmosphereTable table =
        AtmosphereTable::load(RFISIM_DATA_DIR "/atmosphere/gamma_100_300.txt");

    CampaignConfig mc;
    mc.iterations = 1000;
    mc.seed = 20240815;

    const SatelliteConfig tempest = satellite_preset("tempest-178");
    const std::vector<double> nadirs = {10.0, 35.0, 65.0};

    // Per-density urban topologies (30 gNB sectors' worth of UEs each).
    std::vector<double> densities = {10.0, 45.0, 100.0};
    std::vector<Topology> topos;
    for (size_t i = 0; i < densities.size(); ++i) {
        auto gnbs = place_gnbs(city, densities[i], 1000 + i);
        auto ues = place_ues(city, static_cast<int>(gnbs.size()), 2000 + i);
        topos.push_back(attach_ues(std::move(gnbs), std::move(ues), *city.buildings, 200.0));
    }

    // median I per (density, nadir) at rho = 1.
    std::vector<std::vector<CellResult>> urban(densities.size());
    for (size_t i = 0; i < densities.size(); ++i) {
        std::vector<CampaignCell> cells;
        for (double n : nadirs) cells.push_back({tempest, deg_to_rad(n), 0.0, 1.0});
        urban[i] = run_campaign(topos[i], *city.buildings, ScenarioType::UrbanCellular, cells,
                                table, mc, {0, 0, 0})
                       .cells;
    }

    char buf[160];
    for (size_t n = 0; n < nadirs.size(); ++n) {
        for (size_t i = 0; i + 1 < densities.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "median not non-decreasing in density at %g deg",
                          nadirs[n]);
            c.expect(urban[i][n].stats.median_dbw <= urban[i + 1][n].stats.median_dbw + 1e-9, buf);
        }
    }
    for (size_t i = 0; i < densities.size(); ++i) {
        for (size_t n = 0; n + 1 < nadirs.size(); ++n) {
            std::snprintf(buf, sizeof(buf), "median not non-increasing in nadir at density %g",
                          densities[i]);
            c.expect(urban[i][n].stats.median_dbw + 1e-9 >= urban[i][n + 1].stats.median_dbw, buf);
        }
        c.expect(urban[i][0].stats.fraction_unblocked_los >
                         urban[i][1].stats.fraction_unblocked_los &&
                     urban[i][1].stats.fraction_unblocked_los >
                         urban[i][2].stats.fraction_unblocked_los,
                 "unblocked fraction not decreasing in nadir");
        // Steep look angles shorten the slant advantage enough that the
        // threshold is never crossed.
        for (size_t n = 0; n < nadirs.size(); ++n) {
            if (nadirs[n] == 65.0) {
                c.expect(urban[i][n].stats.p_exceed_threshold == 0.0,
                         "P(I > -163) nonzero at 65 deg");
            }
        }
    }

    // Load-factor ordering at density 45, nadir 35.
    {
        std::vector<CampaignCell> cells;
        for (double rho : {0.2, 0.5, 1.0}) cells.push_back({tempest, deg_to_rad(35.0), 0.0, rho});
        const auto rc = run_campaign(topos[1], *city.buildings, ScenarioType::UrbanCellular, cells,
                                     table, mc, {0, 0, 0})
                            .cells;
        c.expect(db_to_linear(rc[0].stats.mean_dbw) <= db_to_linear(rc[1].stats.mean_dbw) &&
                     db_to_linear(rc[1].stats.mean_dbw) <= db_to_linear(rc[2].stats.mean_dbw),
                 "rho mean ordering violated");
    }

    // Backhaul exceeds urban at matched density (30 vs 10 dBm transmit power).
    {
        PlacementOptions popts;
        popts.gnb_tx_power_dbm = 30.0;
        auto gnbs = place_gnbs(city, 45.0, 1001, popts);
        const Topology backhaul = build_backhaul_links(std::move(gnbs), *city.buildings, 77);
        CampaignConfig bc = mc;
        bc.p_tx_given_active = 1.0;
        std::vector<CampaignCell> cells = {{tempest, deg_to_rad(35.0), 0.0, 1.0}};
        const auto rc = run_campaign(backhaul, *city.buildings, ScenarioType::Backhaul, cells,
                                     table, bc, {0, 0, 0})
                            .cells;
        c.expect(rc[0].stats.median_dbw > urban[1][1].stats.median_dbw,
                 "backhaul median does not exceed urban");
    }

    // Limb scanner vs conical scanner at matched geometry (density 100, 10 deg).
    {
        std::vector<CampaignCell> cells = {
            {satellite_preset("aura-mls-240"), deg_to_rad(10.0), 0.0, 1.0}};
        const auto rc = run_campaign(topos[2], *city.buildings, ScenarioType::UrbanCellular, cells,
                                     table, mc, {0, 0, 0})
                            .cells;
        const double gap = urban[2][0].stats.mean_dbw - rc[0].stats.mean_dbw;
        std::snprintf(buf, sizeof(buf), "limb-vs-conical gap %.1f dB (need > 30)", gap);
        c.expect(gap > 30.0, buf);
        c.expect(rc[0].stats.p_exceed_threshold == 0.0, "limb aggregate exceeds -194 dBW");
    }

    detail = c.detail;
    return c.ok;
}

// --------------------------------------------------------------------------
// 8. Coherence sanity.
bool criterion_coherence(std::string& detail) {
    Criterion c;
    auto make_ray = [](double dbw, double phase) {
        RayContribution r;
        r.phase_rad = phase;
        finalize_field(r, dbw);
        return r;
    };

    const int n = 37;
    std::vector<RayContribution> equal;
    for (int i = 0; i < n; ++i) equal.push_back(make_ray(-120.0, 1.234));
    const double combined = combine_rays_dbw(equal);
    c.expect(std::abs(combined - (-120.0 + 20.0 * std::log10(n))) < 1e-9,
             "equal-phase sum not +20 log10(N)");

    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    const int m = 16;
    double mean_power = 0.0;
    const int draws = 100000;
    for (int d = 0; d < draws; ++d) {
        std::complex<double> sum{0.0, 0.0};
        for (int i = 0; i < m; ++i) sum += std::polar(1.0, phase(rng));
        mean_power += std::norm(sum);
    }
    mean_power /= draws;
    const double rel = std::abs(mean_power - m) / m;
    c.expect(rel < 0.02, "random-phase mean off incoherent sum by " + std::to_string(rel));
    detail = c.detail.empty() ? "random-phase deviation " + std::to_string(rel) : c.detail;
    return c.ok;
}

// --------------------------------------------------------------------------
// 9. CLI determinism.
std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string strip_timestamp(std::string text) {
    // Drop the fields expected to differ between re-runs: the wall-clock stamp
    // and the output location itself.
    for (const char* key : {"\"timestamp\"", "\"output_dir\""}) {
        const auto pos = text.find(key);
        if (pos == std::string::npos) continue;
        const auto end = text.find('\n', pos);
        text.erase(pos, end == std::string::npos ? text.size() - pos : end - pos);
    }
    return text;
}

bool criterion_determinism(std::string& detail) {
    Criterion c;
    const std::string cli = RFISIM_CLI_PATH;
    const std::string work = "/tmp/rfisim_determinism";
    std::system(("rm -rf " + work + " && mkdir -p " + work).c_str());

    const std::string cfg_path = work + "/campaign.json";
    {
        std::ofstream cfg(cfg_path);
        cfg << R"({
  "schema_version": 1,
  "scenario_type": "urban",
  "geodata": ")" << RFISIM_DATA_DIR
            << R"(/fixtures/grid_small.json",
  "atmosphere": ")" << RFISIM_DATA_DIR
            << R"(/atmosphere/gamma_100_300.txt",
  "lambda_per_km2": 150,
  "seed": 9,
  "iterations": 60,
  "rho": [0.5, 1.0],
  "satellites": ["tempest-178"],
  "nadir_deg": [35],
  "azimuth_deg": [0, 90]
})";
    }

    auto run = [&](const std::string& cmd) {
        const int rc = std::system(cmd.c_str());
        c.expect(rc == 0, "command failed: " + cmd);
    };
    run(cli + " --seed 5 campaign " + cfg_path + " --output-dir " + work + "/a > /dev/null");
    run(cli + " --seed 5 campaign " + cfg_path + " --output-dir " + work + "/b > /dev/null");
    for (const char* name : {"cells.csv", "summary.json", "iterations_000.csv",
                             "iterations_003.csv"}) {
        c.expect(slurp(work + "/a/" + name) == slurp(work + "/b/" + name) &&
                     !slurp(work + "/a/" + name).empty(),
                 std::string("campaign output differs: ") + name);
    }
    c.expect(strip_timestamp(slurp(work + "/a/manifest.json")) ==
                 strip_timestamp(slurp(work + "/b/manifest.json")),
             "manifests differ beyond the timestamp");

    run(cli + " single-link --atmosphere " + RFISIM_DATA_DIR +
        "/atmosphere/gamma_100_300.txt --f-step-ghz 10 -o " + work + "/sl1.csv");
    run(cli + " single-link --atmosphere " + RFISIM_DATA_DIR +
        "/atmosphere/gamma_100_300.txt --f-step-ghz 10 -o " + work + "/sl2.csv");
    c.expect(slurp(work + "/sl1.csv") == slurp(work + "/sl2.csv") &&
                 !slurp(work + "/sl1.csv").empty(),
             "single-link output differs");

    run(cli + " --seed 3 analytic --oracle --oracle-n 20000 --step-deg 10 -o " + work +
        "/an1.csv");
    run(cli + " --seed 3 analytic --oracle --oracle-n 20000 --step-deg 10 -o " + work +
        "/an2.csv");
    c.expect(slurp(work + "/an1.csv") == slurp(work + "/an2.csv") &&
                 !slurp(work + "/an1.csv").empty(),
             "analytic output differs");

    detail = c.detail;
    return c.ok;
}

struct Entry {
    const char* name;
    bool (*fn)(std::string&);
};

const Entry kCriteria[] = {
    {"geometry golden values", criterion_geometry},
    {"path-difference bounds", criterion_path_difference},
    {"reflection model", criterion_reflection},
    {"analytic CDF vs oracle", criterion_analytic},
    {"blockage oracle equivalence", criterion_blockage},
    {"single-link frequency sweep", criterion_single_link},
    {"campaign trends", criterion_campaign},
    {"coherence sanity", criterion_coherence},
    {"determinism", criterion_determinism},
};

}  // namespace

int main(int argc, char** argv) {
    int failures = 0;
    const int only = argc > 1 ? std::atoi(argv[1]) : 0;
    for (int i = 0; i < 9; ++i) {
        if (only != 0 && only != i + 1) continue;
        std::string detail;
        const bool ok = kCriteria[i].fn(detail);
        std::printf("%s criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", i + 1, kCriteria[i].name,
                    detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    return failures;
}
