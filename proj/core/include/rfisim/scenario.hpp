#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rfisim/antenna.hpp"
#include "rfisim/geodata.hpp"
#include "rfisim/vec.hpp"

namespace rfisim {

enum class NodeKind { Gnb, Ue };

struct GroundNode {
    int id = 0;
    Vec2 position;
    double height_m = 0.0;
    NodeKind kind = NodeKind::Gnb;
    double tx_power_dbm = 10.0;
    BeamPattern pattern;
    std::vector<Sector> sectors;

    Vec3 antenna_position() const { return {position.x, position.y, height_m}; }
};

// Directed backhaul link: the node at tx_index transmits to rx_index, handled
// by the named sector on each side.
struct BackhaulLink {
    int tx_index = 0;
    int rx_index = 0;
    int tx_sector = 0;
    int rx_sector = 0;
};

struct Topology {
    std::vector<GroundNode> gnbs;
    std::vector<GroundNode> ues;
    // attachment[ue_index] = gNB index, or -1 when unattached
    std::vector<int> attachment;
    // servable_ues[gnb_index][sector] = indices of attached UEs in that sector
    std::vector<std::vector<std::vector<int>>> servable_ues;
    std::vector<BackhaulLink> backhaul_links;
};

struct PlacementOptions {
    double projection_radius_m = 50.0;  // beyond this, the tentative point is rejected
    double min_spacing_m = 0.5;
    int max_rounds = 100;
    double gnb_tx_power_dbm = 10.0;  // 30 dBm in the backhaul scenario
};

// Poisson(lambda * area) tentative points, projected into the valid region and
// redrawn on failure; heights uniform over the discrete gNB set {3,5,8,10,15} m.
// Each gNB gets 3 sectors of 120 deg at a seeded random orientation.
std::vector<GroundNode> place_gnbs(const GeoScenario& scenario, double lambda_per_km2,
                                   uint64_t seed, const PlacementOptions& opts = {});

// Exactly n_gnb * 3 * 10 UEs, same rejection/projection procedure, heights
// uniform in [1.6, 1.8] m, one 360 deg sector.
std::vector<GroundNode> place_ues(const GeoScenario& scenario, int n_gnb, uint64_t seed,
                                  const PlacementOptions& opts = {});

// Fixed node list from a CSV `id,x_m,y_m,height_m,kind` (kind: gnb|ue).
std::vector<GroundNode> load_node_list(const std::string& path,
                                       double gnb_tx_power_dbm = 10.0);

// Nearest-first attachment with a distance cap and an unobstructed-LoS check;
// populates per-sector servable lists by azimuth.
Topology attach_ues(std::vector<GroundNode> gnbs, std::vector<GroundNode> ues,
                    const BuildingSet& buildings, double d_max_m = 200.0);

// All unobstructed gNB-gNB pairs, one sampled flow direction per pair.
Topology build_backhaul_links(std::vector<GroundNode> gnbs, const BuildingSet& buildings,
                              uint64_t seed);

}  // namespace rfisim
