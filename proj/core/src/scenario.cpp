#include "rfisim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "rfisim/units.hpp"

namespace rfisim {
namespace {

constexpr double kGnbHeights[] = {3.0, 5.0, 8.0, 10.0, 15.0};

std::vector<Sector> make_gnb_sectors(double orientation_rad) {
    std::vector<Sector> sectors(3);
    for (int i = 0; i < 3; ++i) {
        sectors[i].boresight_azimuth_rad = orientation_rad + i * 2.0 * kPi / 3.0;
        sectors[i].width_rad = 2.0 * kPi / 3.0;
    }
    return sectors;
}

std::vector<Sector> make_ue_sector() {
    std::vector<Sector> sectors(1);
    sectors[0].width_rad = 2.0 * kPi;
    return sectors;
}

// Shared rejection/projection placement: draws tentative points uniformly over
// the scenario bounding box, projects invalid ones to the nearest valid-region
// point (capped), rejects failures and duplicates, and redraws until `count`
// nodes are placed.
std::vector<Vec2> place_points(const GeoScenario& scenario, int count, std::mt19937_64& rng,
                               const PlacementOptions& opts) {
    if (count == 0) return {};
    Vec2 lo, hi;
    scenario.bounding_box(lo, hi);
    std::uniform_real_distribution<double> ux(lo.x, hi.x);
    std::uniform_real_distribution<double> uy(lo.y, hi.y);
    std::vector<Vec2> placed;
    placed.reserve(count);
    const double spacing2 = opts.min_spacing_m * opts.min_spacing_m;
    // Coarse hash grid for the duplicate-spacing check.
    const double cell = std::max(opts.min_spacing_m, 1e-6);
    auto key = [&](const Vec2& p) {
        const auto ix = static_cast<int64_t>(std::floor(p.x / cell));
        const auto iy = static_cast<int64_t>(std::floor(p.y / cell));
        return (ix << 32) ^ (iy & 0xffffffff);
    };
    std::unordered_multimap<int64_t, size_t> occupied;
    auto too_close = [&](const Vec2& p) {
        const auto ix = static_cast<int64_t>(std::floor(p.x / cell));
        const auto iy = static_cast<int64_t>(std::floor(p.y / cell));
        for (int64_t dy = -1; dy <= 1; ++dy) {
            for (int64_t dx = -1; dx <= 1; ++dx) {
                const int64_t k = ((ix + dx) << 32) ^ ((iy + dy) & 0xffffffff);
                auto range = occupied.equal_range(k);
                for (auto it = range.first; it != range.second; ++it) {
                    const Vec2 d = placed[it->second] - p;
                    if (d.dot(d) < spacing2) return true;
                }
            }
        }
        return false;
    };

    int round = 0;
    int remaining = count;
    while (remaining > 0) {
        if (++round > opts.max_rounds) {
            throw std::runtime_error(
                "placement did not converge after " + std::to_string(opts.max_rounds) +
                " rounds (" + std::to_string(remaining) + " of " + std::to_string(count) +
                " nodes unplaced); check the valid region and density");
        }
        int accepted_this_round = 0;
        for (int i = 0; i < remaining; ++i) {
            Vec2 p = {ux(rng), uy(rng)};
            if (!scenario.in_valid_region(p) || scenario.buildings->point_in_footprint(p)) {
                double dist = 0.0;
                p = scenario.project_to_valid_region(p, &dist);
                if (dist > opts.projection_radius_m) continue;  // reject, redraw next round
                if (scenario.buildings->point_in_footprint(p)) continue;
            }
            if (too_close(p)) continue;
            occupied.emplace(key(p), placed.size());
            placed.push_back(p);
            ++accepted_this_round;
        }
        remaining = count - static_cast<int>(placed.size());
        (void)accepted_this_round;
    }
    return placed;
}

}  // namespace

std::vector<GroundNode> place_gnbs(const GeoScenario& scenario, double lambda_per_km2,
                                   uint64_t seed, const PlacementOptions& opts) {
    if (lambda_per_km2 <= 0.0) throw std::invalid_argument("place_gnbs: lambda must be > 0");
    std::mt19937_64 rng(seed);
    std::poisson_distribution<int> count_dist(lambda_per_km2 * scenario.area_km2);
    const int count = count_dist(rng);
    const std::vector<Vec2> points = place_points(scenario, count, rng, opts);
    std::uniform_int_distribution<size_t> height_dist(0, std::size(kGnbHeights) - 1);
    std::uniform_real_distribution<double> orient_dist(0.0, 2.0 * kPi);
    std::vector<GroundNode> nodes;
    nodes.reserve(points.size());
    for (size_t i = 0; i < points.size(); ++i) {
        GroundNode n;
        n.id = static_cast<int>(i);
        n.position = points[i];
        n.height_m = kGnbHeights[height_dist(rng)];
        n.kind = NodeKind::Gnb;
        n.tx_power_dbm = opts.gnb_tx_power_dbm;
        n.pattern = BeamPattern::gnb();
        n.sectors = make_gnb_sectors(orient_dist(rng));
        nodes.push_back(std::move(n));
    }
    return nodes;
}

std::vector<GroundNode> place_ues(const GeoScenario& scenario, int n_gnb, uint64_t seed,
                                  const PlacementOptions& opts) {
    if (n_gnb < 0) throw std::invalid_argument("place_ues: negative gNB count");
    const int count = n_gnb * 3 * 10;
    std::mt19937_64 rng(seed);
    const std::vector<Vec2> points = place_points(scenario, count, rng, opts);
    std::uniform_real_distribution<double> height_dist(1.6, 1.8);
    std::vector<GroundNode> nodes;
    nodes.reserve(points.size());
    for (size_t i = 0; i < points.size(); ++i) {
        GroundNode n;
        n.id = static_cast<int>(i);
        n.position = points[i];
        n.height_m = height_dist(rng);
        n.kind = NodeKind::Ue;
        n.tx_power_dbm = 10.0;
        n.pattern = BeamPattern::ue();
        n.sectors = make_ue_sector();
        nodes.push_back(std::move(n));
    }
    return nodes;
}

std::vector<GroundNode> load_node_list(const std::string& path, double gnb_tx_power_dbm) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("node list: cannot open " + path);
    std::vector<GroundNode> nodes;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        if (lineno == 1 && line.rfind("id,", 0) == 0) continue;  // header
        std::istringstream ls(line);
        std::string field;
        GroundNode n;
        try {
            std::getline(ls, field, ',');
            n.id = std::stoi(field);
            std::getline(ls, field, ',');
            n.position.x = std::stod(field);
            std::getline(ls, field, ',');
            n.position.y = std::stod(field);
            std::getline(ls, field, ',');
            n.height_m = std::stod(field);
            std::getline(ls, field, ',');
        } catch (const std::exception&) {
            throw std::runtime_error("node list: parse error at line " + std::to_string(lineno));
        }
        if (field == "gnb") {
            n.kind = NodeKind::Gnb;
            n.tx_power_dbm = gnb_tx_power_dbm;
            n.pattern = BeamPattern::gnb();
            n.sectors = make_gnb_sectors(0.0);
        } else if (field == "ue") {
            n.kind = NodeKind::Ue;
            n.tx_power_dbm = 10.0;
            n.pattern = BeamPattern::ue();
            n.sectors = make_ue_sector();
        } else {
            throw std::runtime_error("node list: unknown kind '" + field + "' at line " +
                                     std::to_string(lineno));
        }
        nodes.push_back(std::move(n));
    }
    return nodes;
}

Topology attach_ues(std::vector<GroundNode> gnbs, std::vector<GroundNode> ues,
                    const BuildingSet& buildings, double d_max_m) {
    if (d_max_m <= 0.0) throw std::invalid_argument("attach_ues: d_max must be > 0");
    Topology topo;
    topo.gnbs = std::move(gnbs);
    topo.ues = std::move(ues);
    topo.attachment.assign(topo.ues.size(), -1);
    topo.servable_ues.resize(topo.gnbs.size());
    for (size_t g = 0; g < topo.gnbs.size(); ++g) {
        topo.servable_ues[g].resize(topo.gnbs[g].sectors.size());
    }

    std::vector<int> order(topo.gnbs.size());
    for (size_t u = 0; u < topo.ues.size(); ++u) {
        const GroundNode& ue = topo.ues[u];
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return distance2d(ue.antenna_position(), topo.gnbs[a].antenna_position()) <
                   distance2d(ue.antenna_position(), topo.gnbs[b].antenna_position());
        });
        for (int g : order) {
            const GroundNode& gnb = topo.gnbs[g];
            const double d = distance2d(ue.antenna_position(), gnb.antenna_position());
            if (d > d_max_m) break;  // next-closest is even farther: stays unattached
            if (buildings.segment_blocked(ue.antenna_position(), gnb.antenna_position())) continue;
            topo.attachment[u] = g;
            const Vec2 delta = ue.position - gnb.position;
            const double azimuth = std::atan2(delta.x, delta.y);
            for (size_t s = 0; s < gnb.sectors.size(); ++s) {
                if (gnb.sectors[s].contains_azimuth(azimuth)) {
                    topo.servable_ues[g][s].push_back(static_cast<int>(u));
                    break;
                }
            }
            break;
        }
    }
    return topo;
}

Topology build_backhaul_links(std::vector<GroundNode> gnbs, const BuildingSet& buildings,
                              uint64_t seed) {
    Topology topo;
    topo.gnbs = std::move(gnbs);
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution direction(0.5);
    auto sector_toward = [&](const GroundNode& from, const GroundNode& to) {
        const Vec2 delta = to.position - from.position;
        const double azimuth = std::atan2(delta.x, delta.y);
        for (size_t s = 0; s < from.sectors.size(); ++s) {
            if (from.sectors[s].contains_azimuth(azimuth)) return static_cast<int>(s);
        }
        return 0;
    };
    for (size_t a = 0; a < topo.gnbs.size(); ++a) {
        for (size_t b = a + 1; b < topo.gnbs.size(); ++b) {
            if (buildings.segment_blocked(topo.gnbs[a].antenna_position(),
                                          topo.gnbs[b].antenna_position())) {
                continue;
            }
            BackhaulLink link;
            const bool a_transmits = direction(rng);
            const int tx = a_transmits ? static_cast<int>(a) : static_cast<int>(b);
            const int rx = a_transmits ? static_cast<int>(b) : static_cast<int>(a);
            link.tx_index = tx;
            link.rx_index = rx;
            link.tx_sector = sector_toward(topo.gnbs[tx], topo.gnbs[rx]);
            link.rx_sector = sector_toward(topo.gnbs[rx], topo.gnbs[tx]);
            topo.backhaul_links.push_back(link);
        }
    }
    return topo;
}

}  // namespace rfisim
