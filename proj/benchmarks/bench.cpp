#include <benchmark/benchmark.h>

#include <random>

#include "../tests/fixtures.hpp"
#include "rfisim/atmosphere.hpp"
#include "rfisim/montecarlo.hpp"
#include "rfisim/satellite.hpp"
#include "rfisim/units.hpp"

using namespace rfisim;

namespace {

const GeoScenario& city() {
    static const GeoScenario c = testing::grid_city(2000.0, 80.0, 18.0, 42);
    return c;
}

AtmosphereProfile profile() {
    static const AtmosphereTable table =
        AtmosphereTable::load(RFISIM_DATA_DIR "/atmosphere/gamma_100_300.txt");
    return table.profile_for(178e9);
}

void bm_blockage_query(benchmark::State& state) {
    const BuildingSet& set = *city().buildings;
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> xy(-1000.0, 1000.0);
    for (auto _ : state) {
        const Vec3 a{xy(rng), xy(rng), 1.7};
        const Vec3 b{xy(rng) * 200.0, xy(rng) * 200.0, 400e3};
        benchmark::DoNotOptimize(set.segment_blocked(a, b));
    }
}
BENCHMARK(bm_blockage_query);

void bm_precompute_rays(benchmark::State& state) {
    const SatelliteState sat =
        make_satellite(satellite_preset("tempest-178"), deg_to_rad(35.0), 0.0, {0, 0, 0});
    const AtmosphereProfile air = profile();
    GroundNode node;
    node.position = {11.0, -42.0};
    node.height_m = 10.0;
    node.pattern = BeamPattern::gnb();
    node.sectors.resize(3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(precompute_rays(node, sat, *city().buildings, {}, air));
    }
}
BENCHMARK(bm_precompute_rays);

void bm_run_iteration(benchmark::State& state) {
    const SatelliteState sat =
        make_satellite(satellite_preset("tempest-178"), deg_to_rad(35.0), 0.0, {0, 0, 0});
    const AtmosphereProfile air = profile();
    auto gnbs = place_gnbs(city(), 45.0, 3);
    auto ues = place_ues(city(), static_cast<int>(gnbs.size()), 4);
    const Topology topo = attach_ues(std::move(gnbs), std::move(ues), *city().buildings, 200.0);

    CampaignConfig cfg;
    cfg.seed = 7;
    std::vector<NodeRayGeometry> gnb_rays, ue_rays;
    for (const auto& n : topo.gnbs) {
        gnb_rays.push_back(precompute_rays(n, sat, *city().buildings, cfg.material, air));
    }
    for (const auto& n : topo.ues) {
        ue_rays.push_back(precompute_rays(n, sat, *city().buildings, cfg.material, air));
    }
    int iter = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_iteration(topo, ScenarioType::UrbanCellular, gnb_rays,
                                               ue_rays, cfg, 178e9, 0, iter++));
    }
}
BENCHMARK(bm_run_iteration);

}  // namespace

BENCHMARK_MAIN();
