#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "rfisim/atmosphere.hpp"
#include "rfisim/propagation.hpp"
#include "rfisim/satellite.hpp"
#include "rfisim/scenario.hpp"

namespace rfisim {

enum class ScenarioType { UrbanCellular, Backhaul };

struct CampaignConfig {
    int iterations = 1000;
    double rho = 1.0;                // sector / link activation probability
    double p_tx_given_active = 0.5;  // P(the gNB end transmits); otherwise its peer does
    uint64_t seed = 0;
    int workers = 0;  // 0 = hardware concurrency
    MaterialProperties material;
};

// Activity-independent per-node ray geometry toward one satellite position:
// blockage, losses, departure directions, and satellite receive gains.
struct NodeRayGeometry {
    double sat_azimuth_rad = 0.0;  // azimuth of the satellite as seen from the node
    Direction aod_los;
    Direction aod_gr;
    bool los_blocked = false;
    bool gr_blocked = false;
    double los_path_m = 0.0;
    double gr_path_m = 0.0;
    double path_difference_m = 0.0;
    double fs_los_db = 0.0;
    double fs_gr_db = 0.0;
    double atm_los_db = 0.0;
    double atm_gr_db = 0.0;
    double reflection_db = 0.0;
    double rx_gain_los_dbi = 0.0;
    double rx_gain_gr_dbi = 0.0;
};

NodeRayGeometry precompute_rays(const GroundNode& node, const SatelliteState& satellite,
                                const BuildingSet& buildings, const MaterialProperties& material,
                                const AtmosphereProfile& atmosphere);

// LoS + ground-reflection contributions of one steered transmitter. Returns
// nullopt when the transmitting gNB sector does not contain the satellite
// azimuth (inter-sector leakage is fully suppressed). The reflected ray's
// phase is carrier_phase + 2 pi delta_d / lambda + pi.
std::optional<std::pair<RayContribution, RayContribution>> node_contribution(
    const GroundNode& tx, int sector_index, const Direction& steering,
    const NodeRayGeometry& geometry, double frequency_hz, double carrier_phase_rad);

// One sampled transmission: the transmitter node (gNB or UE) steered toward a peer.
struct ActiveLink {
    bool gnb_transmits = true;
    int gnb_index = -1;
    int gnb_sector = -1;
    int ue_index = -1;  // -1 in the backhaul scenario
    int peer_gnb_index = -1;  // backhaul receiver
};

std::vector<ActiveLink> sample_activity(const Topology& topology, ScenarioType type,
                                        const CampaignConfig& cfg, std::mt19937_64& rng);

struct IterationResult {
    int iteration = 0;
    double aggregate_dbw = 0.0;  // coherent field sum of every contribution
    double gnb_los_dbw = 0.0;
    double gnb_gr_dbw = 0.0;
    double ue_los_dbw = 0.0;
    double ue_gr_dbw = 0.0;
    int active_links = 0;
    double sum_single_linear_w = 0.0;  // per-transmitter two-ray powers, for the single-node mean
    int contributing_transmitters = 0;
};

struct CellStats {
    double p_exceed_threshold = 0.0;  // strictly-greater comparison against i_th
    double mean_dbw = kPowerFloorDbw;  // mean of linear power, in dBW
    double p95_dbw = kPowerFloorDbw;
    double median_dbw = kPowerFloorDbw;
    double single_node_mean_dbw = kPowerFloorDbw;
    int nodes_unblocked_los = 0;
    double fraction_unblocked_los = 0.0;
};

struct CellResult {
    std::string satellite;
    double nadir_rad = 0.0;
    double azimuth_rad = 0.0;
    double rho = 1.0;
    double frequency_hz = 0.0;
    double threshold_dbw = 0.0;
    std::vector<IterationResult> iterations;
    CellStats stats;

    // Sorted aggregate values (floored), i.e. the ECDF knots.
    std::vector<double> ecdf_knots() const;
};

struct CampaignCell {
    SatelliteConfig satellite;
    double nadir_rad = 0.0;
    double azimuth_rad = 0.0;
    double rho = 1.0;
};

struct CampaignResult {
    std::vector<CellResult> cells;
};

// Single Monte Carlo iteration over one prepared cell; RNG state is derived
// from (seed, cell_index, iteration) so results do not depend on scheduling.
IterationResult run_iteration(const Topology& topology, ScenarioType type,
                              const std::vector<NodeRayGeometry>& gnb_rays,
                              const std::vector<NodeRayGeometry>& ue_rays,
                              const CampaignConfig& cfg, double frequency_hz, uint64_t cell_index,
                              int iteration);

CellResult run_cell(const Topology& topology, const BuildingSet& buildings, ScenarioType type,
                    const SatelliteState& satellite, const AtmosphereProfile& atmosphere,
                    const CampaignConfig& cfg, uint64_t cell_index);

CampaignResult run_campaign(const Topology& topology, const BuildingSet& buildings,
                            ScenarioType type, const std::vector<CampaignCell>& cells,
                            const AtmosphereTable& atmosphere, const CampaignConfig& cfg,
                            const Vec3& center);

// Deterministic per-iteration seed mixing.
uint64_t mix_seed(uint64_t seed, uint64_t cell_index, uint64_t iteration);

}  // namespace rfisim
