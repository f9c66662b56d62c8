#pragma once

// Shared test scenery: synthetic Manhattan-grid cities (C++ twin of
// tools/scripts/make_grid_fixture.py) and small hand-rolled topologies.

#include <cstdint>
#include <vector>

#include "rfisim/geodata.hpp"
#include "rfisim/scenario.hpp"

namespace rfisim::testing {

inline GeoScenario grid_city(double extent_m, double pitch_m, double street_m, uint32_t seed) {
    const double half = extent_m / 2.0;
    const double side = pitch_m - street_m;
    const double heights[] = {8.0, 12.0, 18.0, 25.0, 35.0, 50.0};
    uint32_t state = seed;
    auto next = [&]() {
        state = (1103515245u * state + 12345u) & 0x7fffffffu;
        return static_cast<double>(state) / 0x7fffffffu;
    };

    std::vector<Prism> prisms;
    const int n = static_cast<int>(extent_m / pitch_m);
    const double offset = -half + (extent_m - n * pitch_m + street_m) / 2.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double x0 = offset + i * pitch_m;
            const double y0 = offset + j * pitch_m;
            Polygon2D footprint;
            footprint.points = {{x0, y0}, {x0 + side, y0}, {x0 + side, y0 + side}, {x0, y0 + side}};
            prisms.push_back({std::move(footprint), heights[static_cast<int>(next() * 6) % 6]});
        }
    }
    Polygon2D region;
    region.points = {{-half, -half}, {half, -half}, {half, half}, {-half, half}};
    return geoscenario_from_parts(std::move(prisms), {region},
                                  (extent_m / 1000.0) * (extent_m / 1000.0));
}

// One gNB at the origin with one attached UE due north, open ground.
inline Topology single_link_topology(double gnb_height_m = 10.0, double ue_distance_m = 50.0) {
    GroundNode gnb;
    gnb.id = 0;
    gnb.position = {0.0, 0.0};
    gnb.height_m = gnb_height_m;
    gnb.kind = NodeKind::Gnb;
    gnb.tx_power_dbm = 10.0;
    gnb.pattern = BeamPattern::gnb();
    gnb.sectors.resize(3);
    for (int i = 0; i < 3; ++i) {
        gnb.sectors[i].boresight_azimuth_rad = i * 2.0 * kPi / 3.0;
        gnb.sectors[i].width_rad = 2.0 * kPi / 3.0;
    }

    GroundNode ue;
    ue.id = 0;
    ue.position = {0.0, ue_distance_m};
    ue.height_m = 1.7;
    ue.kind = NodeKind::Ue;
    ue.tx_power_dbm = 10.0;
    ue.pattern = BeamPattern::ue();
    ue.sectors.resize(1);
    ue.sectors[0].width_rad = 2.0 * kPi;

    Topology topo;
    topo.gnbs = {gnb};
    topo.ues = {ue};
    topo.attachment = {0};
    topo.servable_ues = {{{0}, {}, {}}};
    return topo;
}

}  // namespace rfisim::testing
