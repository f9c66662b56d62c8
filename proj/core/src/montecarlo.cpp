#include "rfisim/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <thread>

#include "rfisim/geometry.hpp"
#include "rfisim/units.hpp"

namespace rfisim {
namespace {

double floored_dbw(std::complex<double> field_sum) {
    const double power = std::norm(field_sum);
    if (power <= 0.0) return kPowerFloorDbw;
    return std::max(kPowerFloorDbw, linear_to_db(power));
}

double elevation_to_look_angle(const Direction& d) {
    // Look angle = zenith angle of the ray; clamp inside the validity range of
    // the flat-layer atmosphere (campaigns keep the center below 80 deg).
    const double alpha = kPi / 2.0 - d.elevation_rad;
    return std::clamp(alpha, 0.0, deg_to_rad(80.0));
}

}  // namespace

uint64_t mix_seed(uint64_t seed, uint64_t cell_index, uint64_t iteration) {
    auto splitmix = [](uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    };
    return splitmix(seed ^ splitmix(cell_index ^ splitmix(iteration)));
}

NodeRayGeometry precompute_rays(const GroundNode& node, const SatelliteState& satellite,
                                const BuildingSet& buildings, const MaterialProperties& material,
                                const AtmosphereProfile& atmosphere) {
    NodeRayGeometry g;
    const Vec3 p = node.antenna_position();
    const Vec3 s = satellite.position;
    const Vec3 to_sat = s - p;
    g.sat_azimuth_rad = std::atan2(to_sat.x, to_sat.y);
    g.aod_los = Direction::from_vector(to_sat);
    g.los_path_m = to_sat.norm();
    g.los_blocked = buildings.segment_blocked(p, s);

    // Specular reflection on z=0 via the image of the node below the plane.
    const Vec3 image = {p.x, p.y, -p.z};
    const double t = p.z / (s.z + p.z);
    const Vec3 reflection = image + (s - image) * t;  // lands on z = 0
    g.aod_gr = Direction::from_vector(reflection - p);
    g.gr_path_m = (s - image).norm();
    // Rationalized exact difference: |S-P'|^2 - |S-P|^2 = 4 h s_z.
    g.path_difference_m = 4.0 * p.z * s.z / (g.gr_path_m + g.los_path_m);
    g.gr_blocked = buildings.segment_blocked(p, reflection) ||
                   buildings.segment_blocked(reflection, s);

    const double frequency = satellite.config.frequency_hz;
    g.fs_los_db = free_space_loss_db(g.los_path_m, frequency);
    g.fs_gr_db = free_space_loss_db(g.gr_path_m, frequency);
    const double incidence = std::atan2((reflection - p).xy().norm(), p.z);
    g.reflection_db = reflection_loss_db(incidence, material, frequency);
    g.atm_los_db = atmospheric_loss_db(atmosphere, elevation_to_look_angle(g.aod_los),
                                       satellite.config.altitude_m);
    g.atm_gr_db = atmospheric_loss_db(atmosphere, std::clamp(incidence, 0.0, deg_to_rad(80.0)),
                                      satellite.config.altitude_m);
    g.rx_gain_los_dbi = satellite_gain_dbi(satellite, p);
    g.rx_gain_gr_dbi = satellite_gain_dbi(satellite, reflection);
    return g;
}

std::optional<std::pair<RayContribution, RayContribution>> node_contribution(
    const GroundNode& tx, int sector_index, const Direction& steering,
    const NodeRayGeometry& geometry, double frequency_hz, double carrier_phase_rad) {
    const Sector& sector = tx.sectors.at(static_cast<size_t>(sector_index));
    if (tx.kind == NodeKind::Gnb && !sector.contains_azimuth(geometry.sat_azimuth_rad)) {
        return std::nullopt;  // rays leaking into other sectors are suppressed
    }
    Sector steered = sector;
    steered.steering = steering;

    RayContribution los;
    los.kind = RayKind::LoS;
    los.path_length_m = geometry.los_path_m;
    los.free_space_db = geometry.fs_los_db;
    los.atmospheric_db = geometry.atm_los_db;
    los.blocked = geometry.los_blocked;
    los.phase_rad = carrier_phase_rad;
    los.tx_gain_dbi = gain_toward_dbi(steered, tx.pattern, geometry.aod_los);
    los.rx_gain_dbi = geometry.rx_gain_los_dbi;

    RayContribution gr;
    gr.kind = RayKind::GroundReflection;
    gr.path_length_m = geometry.gr_path_m;
    gr.free_space_db = geometry.fs_gr_db;
    gr.reflection_db = geometry.reflection_db;
    gr.atmospheric_db = geometry.atm_gr_db;
    gr.blocked = geometry.gr_blocked;
    gr.phase_rad = carrier_phase_rad +
                   2.0 * kPi * geometry.path_difference_m / wavelength(frequency_hz) +
                   MaterialProperties::kPhaseShiftRad;
    gr.tx_gain_dbi = gain_toward_dbi(steered, tx.pattern, geometry.aod_gr);
    gr.rx_gain_dbi = geometry.rx_gain_gr_dbi;

    const double tx_power_dbw = dbm_to_dbw(tx.tx_power_dbm);
    finalize_field(los, tx_power_dbw);
    finalize_field(gr, tx_power_dbw);
    return std::make_pair(los, gr);
}

std::vector<ActiveLink> sample_activity(const Topology& topology, ScenarioType type,
                                        const CampaignConfig& cfg, std::mt19937_64& rng) {
    std::vector<ActiveLink> links;
    std::bernoulli_distribution activate(cfg.rho);
    std::bernoulli_distribution gnb_transmits(cfg.p_tx_given_active);
    if (type == ScenarioType::UrbanCellular) {
        for (size_t g = 0; g < topology.gnbs.size(); ++g) {
            for (size_t s = 0; s < topology.servable_ues[g].size(); ++s) {
                const auto& servable = topology.servable_ues[g][s];
                if (servable.empty()) continue;  // sectors without assigned users stay silent
                if (!activate(rng)) continue;
                std::uniform_int_distribution<size_t> pick(0, servable.size() - 1);
                ActiveLink link;
                link.gnb_index = static_cast<int>(g);
                link.gnb_sector = static_cast<int>(s);
                link.ue_index = servable[pick(rng)];
                link.gnb_transmits = gnb_transmits(rng);
                links.push_back(link);
            }
        }
        return links;
    }
    // Backhaul: random-permutation order with at most one active link per sector.
    std::vector<size_t> order(topology.backhaul_links.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<uint8_t> busy(topology.gnbs.size() * 3, 0);
    auto slot = [](int gnb, int sector) { return static_cast<size_t>(gnb) * 3 + sector; };
    for (size_t idx : order) {
        const BackhaulLink& bl = topology.backhaul_links[idx];
        if (busy[slot(bl.tx_index, bl.tx_sector)] || busy[slot(bl.rx_index, bl.rx_sector)]) {
            continue;
        }
        if (!activate(rng)) continue;
        busy[slot(bl.tx_index, bl.tx_sector)] = 1;
        busy[slot(bl.rx_index, bl.rx_sector)] = 1;
        ActiveLink link;
        link.gnb_index = bl.tx_index;
        link.gnb_sector = bl.tx_sector;
        link.peer_gnb_index = bl.rx_index;
        link.gnb_transmits = true;
        links.push_back(link);
    }
    return links;
}

IterationResult run_iteration(const Topology& topology, ScenarioType type,
                              const std::vector<NodeRayGeometry>& gnb_rays,
                              const std::vector<NodeRayGeometry>& ue_rays,
                              const CampaignConfig& cfg, double frequency_hz, uint64_t cell_index,
                              int iteration) {
    std::mt19937_64 rng(mix_seed(cfg.seed, cell_index, static_cast<uint64_t>(iteration)));
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    const std::vector<ActiveLink> active = sample_activity(topology, type, cfg, rng);

    std::complex<double> total{0.0, 0.0};
    std::complex<double> cat_gnb_los{0.0, 0.0};
    std::complex<double> cat_gnb_gr{0.0, 0.0};
    std::complex<double> cat_ue_los{0.0, 0.0};
    std::complex<double> cat_ue_gr{0.0, 0.0};
    double single_sum_w = 0.0;
    int contributing = 0;

    for (const ActiveLink& link : active) {
        const double carrier_phase = phase(rng);
        const GroundNode* tx = nullptr;
        const NodeRayGeometry* pre = nullptr;
        Vec3 peer;
        int sector = 0;
        if (type == ScenarioType::Backhaul) {
            tx = &topology.gnbs[link.gnb_index];
            pre = &gnb_rays[link.gnb_index];
            peer = topology.gnbs[link.peer_gnb_index].antenna_position();
            sector = link.gnb_sector;
        } else if (link.gnb_transmits) {
            tx = &topology.gnbs[link.gnb_index];
            pre = &gnb_rays[link.gnb_index];
            peer = topology.ues[link.ue_index].antenna_position();
            sector = link.gnb_sector;
        } else {
            tx = &topology.ues[link.ue_index];
            pre = &ue_rays[link.ue_index];
            peer = topology.gnbs[link.gnb_index].antenna_position();
            sector = 0;
        }
        const Direction steering = geometric_beamform(tx->antenna_position(), peer);
        const auto rays = node_contribution(*tx, sector, steering, *pre, frequency_hz,
                                            carrier_phase);
        if (!rays) continue;
        const auto& [los, gr] = *rays;
        const std::complex<double> pair_sum = los.field + gr.field;
        total += pair_sum;
        if (tx->kind == NodeKind::Gnb) {
            cat_gnb_los += los.field;
            cat_gnb_gr += gr.field;
        } else {
            cat_ue_los += los.field;
            cat_ue_gr += gr.field;
        }
        const double pair_power = std::norm(pair_sum);
        if (pair_power > 0.0) {
            single_sum_w += pair_power;
            ++contributing;
        }
    }

    IterationResult result;
    result.iteration = iteration;
    result.aggregate_dbw = floored_dbw(total);
    result.gnb_los_dbw = floored_dbw(cat_gnb_los);
    result.gnb_gr_dbw = floored_dbw(cat_gnb_gr);
    result.ue_los_dbw = floored_dbw(cat_ue_los);
    result.ue_gr_dbw = floored_dbw(cat_ue_gr);
    result.active_links = static_cast<int>(active.size());
    result.sum_single_linear_w = single_sum_w;
    result.contributing_transmitters = contributing;
    return result;
}

std::vector<double> CellResult::ecdf_knots() const {
    std::vector<double> knots;
    knots.reserve(iterations.size());
    for (const auto& it : iterations) knots.push_back(it.aggregate_dbw);
    std::sort(knots.begin(), knots.end());
    return knots;
}

CellResult run_cell(const Topology& topology, const BuildingSet& buildings, ScenarioType type,
                    const SatelliteState& satellite, const AtmosphereProfile& atmosphere,
                    const CampaignConfig& cfg, uint64_t cell_index) {
    CellResult cell;
    cell.satellite = satellite.config.name;
    cell.nadir_rad = satellite.nadir_rad;
    cell.azimuth_rad = satellite.azimuth_rad;
    cell.rho = cfg.rho;
    cell.frequency_hz = satellite.config.frequency_hz;
    cell.threshold_dbw = satellite.config.interference_threshold_dbw;

    std::vector<NodeRayGeometry> gnb_rays(topology.gnbs.size());
    std::vector<NodeRayGeometry> ue_rays(topology.ues.size());
    for (size_t i = 0; i < topology.gnbs.size(); ++i) {
        gnb_rays[i] = precompute_rays(topology.gnbs[i], satellite, buildings, cfg.material,
                                      atmosphere);
    }
    for (size_t i = 0; i < topology.ues.size(); ++i) {
        ue_rays[i] = precompute_rays(topology.ues[i], satellite, buildings, cfg.material,
                                     atmosphere);
    }

    int unblocked = 0;
    for (const auto& g : gnb_rays) unblocked += g.los_blocked ? 0 : 1;
    for (const auto& g : ue_rays) unblocked += g.los_blocked ? 0 : 1;
    const size_t n_nodes = topology.gnbs.size() + topology.ues.size();

    cell.iterations.resize(cfg.iterations);
    const int workers = cfg.workers > 0
                            ? cfg.workers
                            : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const auto worker = [&](int begin, int end) {
        for (int i = begin; i < end; ++i) {
            cell.iterations[i] = run_iteration(topology, type, gnb_rays, ue_rays, cfg,
                                               satellite.config.frequency_hz, cell_index, i);
        }
    };
    if (workers <= 1 || cfg.iterations < 4) {
        worker(0, cfg.iterations);
    } else {
        std::vector<std::thread> threads;
        const int chunk = (cfg.iterations + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const int begin = w * chunk;
            const int end = std::min(cfg.iterations, begin + chunk);
            if (begin >= end) break;
            threads.emplace_back(worker, begin, end);
        }
        for (auto& t : threads) t.join();
    }

    // Statistics over the iteration aggregates.
    std::vector<double> values;
    values.reserve(cell.iterations.size());
    double linear_sum = 0.0;
    int exceed = 0;
    double single_sum = 0.0;
    long single_count = 0;
    for (const auto& it : cell.iterations) {
        values.push_back(it.aggregate_dbw);
        linear_sum += db_to_linear(it.aggregate_dbw);
        if (it.aggregate_dbw > cell.threshold_dbw) ++exceed;
        single_sum += it.sum_single_linear_w;
        single_count += it.contributing_transmitters;
    }
    std::sort(values.begin(), values.end());
    CellStats& st = cell.stats;
    if (!values.empty()) {
        st.p_exceed_threshold = static_cast<double>(exceed) / values.size();
        st.mean_dbw = std::max(kPowerFloorDbw, linear_to_db(linear_sum / values.size()));
        st.median_dbw = values[values.size() / 2];
        const size_t p95_idx = std::min(values.size() - 1,
                                        static_cast<size_t>(std::ceil(0.95 * values.size())) - 1);
        st.p95_dbw = values[p95_idx];
    }
    if (single_count > 0) {
        st.single_node_mean_dbw =
            std::max(kPowerFloorDbw, linear_to_db(single_sum / single_count));
    }
    st.nodes_unblocked_los = unblocked;
    st.fraction_unblocked_los = n_nodes > 0 ? static_cast<double>(unblocked) / n_nodes : 0.0;
    return cell;
}

CampaignResult run_campaign(const Topology& topology, const BuildingSet& buildings,
                            ScenarioType type, const std::vector<CampaignCell>& cells,
                            const AtmosphereTable& atmosphere, const CampaignConfig& cfg,
                            const Vec3& center) {
    CampaignResult result;
    result.cells.reserve(cells.size());
    for (size_t i = 0; i < cells.size(); ++i) {
        const CampaignCell& c = cells[i];
        const SatelliteState sat = make_satellite(c.satellite, c.nadir_rad, c.azimuth_rad, center);
        const AtmosphereProfile profile = atmosphere.profile_for(c.satellite.frequency_hz);
        CampaignConfig cell_cfg = cfg;
        cell_cfg.rho = c.rho;
        result.cells.push_back(run_cell(topology, buildings, type, sat, profile, cell_cfg, i));
    }
    return result;
}

}  // namespace rfisim
