// Batch front-end: single-link budgets, analytic amplification curves,
// Monte Carlo campaigns, and geodata validation.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <algorithm>
#include <iostream>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rfisim/analytic.hpp"
#include "rfisim/atmosphere.hpp"
#include "rfisim/config.hpp"
#include "rfisim/geodata.hpp"
#include "rfisim/geometry.hpp"
#include "rfisim/montecarlo.hpp"
#include "rfisim/satellite.hpp"
#include "rfisim/scenario.hpp"
#include "rfisim/units.hpp"

namespace {

constexpr const char* kVersion = "rfisim 0.1.0";

using namespace rfisim;

struct OutputFile {
    std::ofstream file;
    std::ostream* stream = nullptr;

    explicit OutputFile(const std::string& path) {
        if (path.empty() || path == "-") {
            stream = &std::cout;
        } else {
            file.open(path);
            if (!file) throw std::runtime_error("io: cannot write " + path);
            stream = &file;
        }
    }
    std::ostream& out() { return *stream; }
};

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), format, v);
    return buf;
}

double ray_dbw(const RayContribution& ray) {
    const double p = std::norm(ray.field);
    return p > 0.0 ? std::max(kPowerFloorDbw, linear_to_db(p)) : kPowerFloorDbw;
}

// ---------------------------------------------------------------------------
// single-link

struct SingleLinkArgs {
    double tx_height_m = 3.0;
    double nadir_deg = 35.0;
    double alpha_bf_deg = 125.0;
    double tx_power_dbw = 0.0;
    double tx_gain_dbi = 35.0;
    double tx_hpbw_deg = 3.0;
    double sat_altitude_km = 400.0;
    double sat_gain_dbi = 38.5;
    double sat_hpbw_deg = 2.0;
    double f_min_ghz = 100.0;
    double f_max_ghz = 300.0;
    double f_step_ghz = 1.0;
    double sigma_mm = 0.05;
    std::string atmosphere_path;
    std::string output = "-";
};

int cmd_single_link(const SingleLinkArgs& a) {
    const AtmosphereTable table = AtmosphereTable::load(a.atmosphere_path);
    SatelliteConfig sat_cfg;
    sat_cfg.name = "single-link";
    sat_cfg.altitude_m = a.sat_altitude_km * 1e3;
    sat_cfg.hpbw_rad = deg_to_rad(a.sat_hpbw_deg);
    sat_cfg.boresight_gain_dbi = a.sat_gain_dbi;
    sat_cfg.scan_mode = ScanMode::Conical;

    GroundNode node;
    node.position = {0.0, 0.0};
    node.height_m = a.tx_height_m;
    node.kind = NodeKind::Gnb;
    node.tx_power_dbm = a.tx_power_dbw + 30.0;
    node.pattern = {a.tx_gain_dbi, deg_to_rad(a.tx_hpbw_deg), -8.5};
    node.sectors.resize(1);
    node.sectors[0].width_rad = 2.0 * kPi;

    const BuildingSet no_buildings;
    MaterialProperties material;
    material.sigma_rough_m = a.sigma_mm * 1e-3;
    const double nadir = deg_to_rad(a.nadir_deg);

    // Steered in the satellite's azimuth plane at the requested elevation
    // beamforming angle (measured from straight down).
    OutputFile out(a.output);
    out.out() << "f_ghz,i_los_dbw,i_gr_dbw,i_combined_dbw,i_constructive_dbw,i_destructive_dbw\n";
    // Collect sweep points: regular grid plus the tabulated block frequencies
    // (so resonance peaks are always sampled exactly).
    std::vector<double> freqs;
    for (double f = a.f_min_ghz; f <= a.f_max_ghz + 1e-9; f += a.f_step_ghz) freqs.push_back(f);
    for (double resonance : {118.750334, 183.310087}) {
        if (resonance > a.f_min_ghz && resonance < a.f_max_ghz) freqs.push_back(resonance);
    }
    std::sort(freqs.begin(), freqs.end());
    for (double f_ghz : freqs) {
        sat_cfg.frequency_hz = f_ghz * 1e9;
        const SatelliteState sat = make_satellite(sat_cfg, nadir, 0.0, {0.0, 0.0, 0.0});
        const AtmosphereProfile profile = table.profile_for(sat_cfg.frequency_hz);
        const NodeRayGeometry geo =
            precompute_rays(node, sat, no_buildings, material, profile);
        Direction steering;
        steering.azimuth_rad = geo.sat_azimuth_rad;
        steering.elevation_rad = deg_to_rad(a.alpha_bf_deg) - kPi / 2.0;
        const auto rays = node_contribution(node, 0, steering, geo, sat_cfg.frequency_hz, 0.0);
        const auto& [los, gr] = *rays;
        const double amp_los = std::abs(los.field);
        const double amp_gr = std::abs(gr.field);
        const double combined = std::norm(los.field + gr.field);
        const double constructive = (amp_los + amp_gr) * (amp_los + amp_gr);
        const double destructive = (amp_los - amp_gr) * (amp_los - amp_gr);
        auto to_dbw = [](double p) {
            return p > 0.0 ? std::max(kPowerFloorDbw, linear_to_db(p)) : kPowerFloorDbw;
        };
        out.out() << fmt("%.6f", f_ghz) << ',' << fmt("%.6f", ray_dbw(los)) << ','
                  << fmt("%.6f", ray_dbw(gr)) << ',' << fmt("%.6f", to_dbw(combined)) << ','
                  << fmt("%.6f", to_dbw(constructive)) << ',' << fmt("%.6f", to_dbw(destructive))
                  << '\n';
    }
    return 0;
}

// ---------------------------------------------------------------------------
// analytic

struct AnalyticArgs {
    std::vector<double> tx_heights_m = {2.0, 15.0};
    double theta_hb_deg = 3.0;
    double rx_height_min_m = 1.6;
    double rx_height_max_m = 1.8;
    double distance_min_m = 1.0;
    double distance_max_m = 200.0;
    double step_deg = 1.0;
    bool oracle = false;
    int oracle_n = 100000;
    uint64_t seed = 0;
    std::string output = "-";
};

int cmd_analytic(const AnalyticArgs& a) {
    std::vector<LinkDistribution> dists;
    for (double h : a.tx_heights_m) {
        LinkDistribution d;
        d.tx_height_m = h;
        d.rx_height_min_m = a.rx_height_min_m;
        d.rx_height_max_m = a.rx_height_max_m;
        d.distance_min_m = a.distance_min_m;
        d.distance_max_m = a.distance_max_m;
        d.validate();
        dists.push_back(d);
    }
    OutputFile out(a.output);
    out.out() << "alpha_s_deg";
    for (double h : a.tx_heights_m) {
        out.out() << ",p_a_los_h" << fmt("%g", h) << ",p_a_gr_h" << fmt("%g", h);
        if (a.oracle) {
            out.out() << ",p_a_los_h" << fmt("%g", h) << "_mc"
                      << ",p_a_gr_h" << fmt("%g", h) << "_mc";
        }
    }
    out.out() << '\n';
    const double theta_hb = deg_to_rad(a.theta_hb_deg);
    for (double alpha_deg = 0.0; alpha_deg <= 90.0 + 1e-9; alpha_deg += a.step_deg) {
        const double alpha_s = deg_to_rad(alpha_deg);
        out.out() << fmt("%.4f", alpha_deg);
        for (const auto& dist : dists) {
            const auto ev = amplification_probabilities(alpha_s, theta_hb, dist);
            out.out() << ',' << fmt("%.8f", ev.p_a_los) << ',' << fmt("%.8f", ev.p_a_gr);
            if (a.oracle) {
                const auto mc = amplification_probabilities_oracle(alpha_s, theta_hb, dist,
                                                                  a.oracle_n, a.seed);
                out.out() << ',' << fmt("%.8f", mc.p_a_los) << ',' << fmt("%.8f", mc.p_a_gr);
            }
        }
        out.out() << '\n';
    }
    return 0;
}

// ---------------------------------------------------------------------------
// campaign

void write_cell_iterations(const CellResult& cell, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("io: cannot write " + path);
    out << "iteration,aggregate_dbw,gnb_los_dbw,gnb_gr_dbw,ue_los_dbw,ue_gr_dbw,active_links\n";
    for (const auto& it : cell.iterations) {
        out << it.iteration << ',' << fmt("%.6f", it.aggregate_dbw) << ','
            << fmt("%.6f", it.gnb_los_dbw) << ',' << fmt("%.6f", it.gnb_gr_dbw) << ','
            << fmt("%.6f", it.ue_los_dbw) << ',' << fmt("%.6f", it.ue_gr_dbw) << ','
            << it.active_links << '\n';
    }
}

int cmd_campaign(CampaignFileConfig cfg, bool seed_overridden, uint64_t seed_override) {
    if (seed_overridden) cfg.seed = seed_override;
    if (cfg.geodata_path.empty()) throw std::runtime_error("config: geodata path is required");
    if (cfg.atmosphere_path.empty()) throw std::runtime_error("config: atmosphere path is required");

    const GeoScenario scenario = load_geodata(cfg.geodata_path);
    const AtmosphereTable atmosphere = AtmosphereTable::load(cfg.atmosphere_path);

    const bool backhaul = cfg.scenario_type == "backhaul";
    PlacementOptions popts;
    popts.gnb_tx_power_dbm = backhaul ? cfg.backhaul_tx_power_dbm : cfg.gnb_tx_power_dbm;

    Topology topo;
    if (!cfg.node_list_path.empty()) {
        std::vector<GroundNode> gnbs, ues;
        for (auto& n : load_node_list(cfg.node_list_path, popts.gnb_tx_power_dbm)) {
            (n.kind == NodeKind::Gnb ? gnbs : ues).push_back(std::move(n));
        }
        topo = backhaul ? build_backhaul_links(std::move(gnbs), *scenario.buildings, cfg.seed)
                        : attach_ues(std::move(gnbs), std::move(ues), *scenario.buildings,
                                     cfg.d_max_m);
    } else {
        std::vector<GroundNode> gnbs =
            place_gnbs(scenario, cfg.lambda_per_km2, mix_seed(cfg.seed, 1, 0), popts);
        if (backhaul) {
            topo = build_backhaul_links(std::move(gnbs), *scenario.buildings,
                                        mix_seed(cfg.seed, 3, 0));
        } else {
            std::vector<GroundNode> ues = place_ues(scenario, static_cast<int>(gnbs.size()),
                                                    mix_seed(cfg.seed, 2, 0), popts);
            topo = attach_ues(std::move(gnbs), std::move(ues), *scenario.buildings, cfg.d_max_m);
        }
    }

    std::vector<CampaignCell> cells;
    for (const std::string& sat_name : cfg.satellites) {
        const SatelliteConfig sat = satellite_preset(sat_name);
        for (double nadir_deg : cfg.nadir_deg) {
            for (double az_deg : cfg.azimuth_deg) {
                for (double rho : cfg.rho_values) {
                    cells.push_back({sat, deg_to_rad(nadir_deg), deg_to_rad(az_deg), rho});
                }
            }
        }
    }

    CampaignConfig mc;
    mc.iterations = cfg.iterations;
    mc.p_tx_given_active = backhaul ? 1.0 : 0.5;
    mc.seed = cfg.seed;
    mc.workers = cfg.workers;
    mc.material.sigma_rough_m = cfg.roughness_sigma_m;

    const CampaignResult result =
        run_campaign(topo, *scenario.buildings, backhaul ? ScenarioType::Backhaul
                                                         : ScenarioType::UrbanCellular,
                     cells, atmosphere, mc, {0.0, 0.0, 0.0});

    std::filesystem::create_directories(cfg.output_dir);
    const RunManifest manifest = make_manifest(cfg, kVersion);
    write_manifest(manifest, cfg.output_dir);

    std::ofstream summary_csv(cfg.output_dir + "/cells.csv");
    if (!summary_csv) throw std::runtime_error("io: cannot write " + cfg.output_dir + "/cells.csv");
    summary_csv << "cell,satellite,nadir_deg,azimuth_deg,rho,p_exceed,mean_dbw,median_dbw,"
                   "p95_dbw,single_node_mean_dbw,nodes_unblocked,fraction_unblocked\n";

    nlohmann::json summary;
    summary["version"] = kVersion;
    summary["scenario_type"] = cfg.scenario_type;
    summary["gnbs"] = topo.gnbs.size();
    summary["ues"] = topo.ues.size();
    summary["backhaul_links"] = topo.backhaul_links.size();
    summary["cells"] = nlohmann::json::array();

    for (size_t i = 0; i < result.cells.size(); ++i) {
        const CellResult& c = result.cells[i];
        char idx[16];
        std::snprintf(idx, sizeof(idx), "%03zu", i);
        write_cell_iterations(c, cfg.output_dir + "/iterations_" + idx + ".csv");
        summary_csv << i << ',' << c.satellite << ',' << fmt("%.2f", rad_to_deg(c.nadir_rad))
                    << ',' << fmt("%.2f", rad_to_deg(c.azimuth_rad)) << ',' << fmt("%.3f", c.rho)
                    << ',' << fmt("%.6f", c.stats.p_exceed_threshold) << ','
                    << fmt("%.4f", c.stats.mean_dbw) << ',' << fmt("%.4f", c.stats.median_dbw)
                    << ',' << fmt("%.4f", c.stats.p95_dbw) << ','
                    << fmt("%.4f", c.stats.single_node_mean_dbw) << ','
                    << c.stats.nodes_unblocked_los << ','
                    << fmt("%.6f", c.stats.fraction_unblocked_los) << '\n';
        nlohmann::json jc;
        jc["cell"] = i;
        jc["satellite"] = c.satellite;
        jc["nadir_deg"] = rad_to_deg(c.nadir_rad);
        jc["azimuth_deg"] = rad_to_deg(c.azimuth_rad);
        jc["rho"] = c.rho;
        jc["threshold_dbw"] = c.threshold_dbw;
        jc["p_exceed_threshold"] = c.stats.p_exceed_threshold;
        jc["mean_dbw"] = c.stats.mean_dbw;
        jc["median_dbw"] = c.stats.median_dbw;
        jc["p95_dbw"] = c.stats.p95_dbw;
        jc["single_node_mean_dbw"] = c.stats.single_node_mean_dbw;
        jc["nodes_unblocked_los"] = c.stats.nodes_unblocked_los;
        jc["fraction_unblocked_los"] = c.stats.fraction_unblocked_los;
        jc["ecdf_knots"] = c.ecdf_knots();
        summary["cells"].push_back(jc);
    }
    std::ofstream summary_json(cfg.output_dir + "/summary.json");
    summary_json << summary.dump(2) << '\n';
    std::printf("campaign complete: %zu cells, %d iterations each -> %s\n", result.cells.size(),
                cfg.iterations, cfg.output_dir.c_str());
    return 0;
}

// ---------------------------------------------------------------------------
// validate-geodata

int cmd_validate_geodata(const std::string& path) {
    const GeoScenario scenario = load_geodata(path);
    double max_h = 0.0;
    for (const auto& prism : scenario.buildings->prisms()) max_h = std::max(max_h, prism.height_m);
    std::printf("geodata OK: %zu buildings (max height %.1f m), %zu valid-region polygons, "
                "area %.4f km^2\n",
                scenario.buildings->prisms().size(), max_h, scenario.valid_region.size(),
                scenario.area_km2);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Aggregated sub-THz RFI simulator for passive satellite sensors"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    uint64_t global_seed = 0;
    bool seed_set = false;
    app.add_option("--seed", global_seed, "Global RNG seed (overrides config files)")
        ->each([&](const std::string&) { seed_set = true; });

    SingleLinkArgs sl;
    auto* sub_sl = app.add_subcommand("single-link",
                                      "Two-ray link budget frequency sweep for one transmitter");
    sub_sl->add_option("--height", sl.tx_height_m, "Transmitter height [m]");
    sub_sl->add_option("--nadir-deg", sl.nadir_deg, "Satellite nadir angle [deg]");
    sub_sl->add_option("--alpha-bf-deg", sl.alpha_bf_deg,
                       "Elevation beamforming angle, from straight down [deg]");
    sub_sl->add_option("--tx-power-dbw", sl.tx_power_dbw, "Transmit power [dBW]");
    sub_sl->add_option("--tx-gain-dbi", sl.tx_gain_dbi, "Transmitter peak gain [dBi]");
    sub_sl->add_option("--tx-hpbw-deg", sl.tx_hpbw_deg, "Transmitter HPBW [deg]");
    sub_sl->add_option("--sat-altitude-km", sl.sat_altitude_km, "Satellite altitude [km]");
    sub_sl->add_option("--sat-gain-dbi", sl.sat_gain_dbi, "Satellite boresight gain [dBi]");
    sub_sl->add_option("--sat-hpbw-deg", sl.sat_hpbw_deg, "Satellite HPBW [deg]");
    sub_sl->add_option("--f-min-ghz", sl.f_min_ghz, "Sweep start [GHz]");
    sub_sl->add_option("--f-max-ghz", sl.f_max_ghz, "Sweep end [GHz]");
    sub_sl->add_option("--f-step-ghz", sl.f_step_ghz, "Sweep step [GHz]");
    sub_sl->add_option("--sigma-mm", sl.sigma_mm, "Ground roughness sigma [mm]");
    sub_sl->add_option("--atmosphere", sl.atmosphere_path, "Attenuation table path")->required();
    sub_sl->add_option("-o,--output", sl.output, "Output CSV ('-' for stdout)");

    AnalyticArgs an;
    auto* sub_an = app.add_subcommand("analytic",
                                      "Closed-form beam amplification probabilities vs look angle");
    sub_an->add_option("--tx-heights", an.tx_heights_m, "Transmitter heights [m]")->delimiter(',');
    sub_an->add_option("--theta-hb-deg", an.theta_hb_deg, "Transmitter HPBW [deg]");
    sub_an->add_option("--rx-h-min", an.rx_height_min_m, "Receiver height lower bound [m]");
    sub_an->add_option("--rx-h-max", an.rx_height_max_m, "Receiver height upper bound [m]");
    sub_an->add_option("--d-min", an.distance_min_m, "Link distance lower bound [m]");
    sub_an->add_option("--d-max", an.distance_max_m, "Link distance upper bound [m]");
    sub_an->add_option("--step-deg", an.step_deg, "Look-angle grid step [deg]");
    sub_an->add_flag("--oracle", an.oracle, "Append Monte Carlo oracle columns");
    sub_an->add_option("--oracle-n", an.oracle_n, "Oracle sample count");
    sub_an->add_option("-o,--output", an.output, "Output CSV ('-' for stdout)");

    std::string campaign_config_path;
    CampaignFileConfig overrides;
    bool ov_iterations = false, ov_lambda = false, ov_rho = false, ov_outdir = false,
         ov_workers = false;
    auto* sub_cp = app.add_subcommand("campaign", "Run a Monte Carlo interference campaign");
    sub_cp->add_option("config", campaign_config_path, "Campaign config JSON")->required();
    sub_cp->add_option("--iterations", overrides.iterations, "Iterations per cell")
        ->each([&](const std::string&) { ov_iterations = true; });
    sub_cp->add_option("--lambda", overrides.lambda_per_km2, "gNB density per km^2")
        ->each([&](const std::string&) { ov_lambda = true; });
    sub_cp->add_option("--rho", overrides.rho_values, "Load factors")
        ->delimiter(',')
        ->each([&](const std::string&) { ov_rho = true; });
    sub_cp->add_option("--output-dir", overrides.output_dir, "Output directory")
        ->each([&](const std::string&) { ov_outdir = true; });
    sub_cp->add_option("--workers", overrides.workers, "Worker threads (0 = all cores)")
        ->each([&](const std::string&) { ov_workers = true; });

    std::string geodata_path;
    auto* sub_vg = app.add_subcommand("validate-geodata", "Check a geodata file and print stats");
    sub_vg->add_option("input", geodata_path, "Geodata JSON path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sub_sl) return cmd_single_link(sl);
        if (*sub_an) {
            if (seed_set) an.seed = global_seed;
            return cmd_analytic(an);
        }
        if (*sub_cp) {
            CampaignFileConfig cfg = load_campaign_config(campaign_config_path);
            if (ov_iterations) cfg.iterations = overrides.iterations;
            if (ov_lambda) cfg.lambda_per_km2 = overrides.lambda_per_km2;
            if (ov_rho) cfg.rho_values = overrides.rho_values;
            if (ov_outdir) cfg.output_dir = overrides.output_dir;
            if (ov_workers) cfg.workers = overrides.workers;
            return cmd_campaign(std::move(cfg), seed_set, global_seed);
        }
        if (*sub_vg) return cmd_validate_geodata(geodata_path);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
