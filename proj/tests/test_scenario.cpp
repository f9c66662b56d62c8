#include <doctest.h>

#include <fstream>
#include <set>

#include "fixtures.hpp"
#include "rfisim/scenario.hpp"
#include "rfisim/units.hpp"

using namespace rfisim;

namespace {

GeoScenario small_city() { return testing::grid_city(400.0, 50.0, 14.0, 3); }

}  // namespace

TEST_CASE("gNB placement respects the map") {
    const GeoScenario city = small_city();
    const std::vector<GroundNode> gnbs = place_gnbs(city, 100.0, 7);
    REQUIRE(!gnbs.empty());
    const std::set<double> allowed = {3.0, 5.0, 8.0, 10.0, 15.0};
    for (const auto& g : gnbs) {
        CHECK(city.in_valid_region(g.position));
        CHECK(!city.buildings->point_in_footprint(g.position));
        CHECK(allowed.count(g.height_m) == 1);
        CHECK(g.kind == NodeKind::Gnb);
        REQUIRE(g.sectors.size() == 3);
        CHECK(g.sectors[0].width_rad == doctest::Approx(2.0 * kPi / 3.0));
    }
    // Minimum spacing.
    for (size_t i = 0; i < gnbs.size(); ++i) {
        for (size_t j = i + 1; j < gnbs.size(); ++j) {
            CHECK((gnbs[i].position - gnbs[j].position).norm() >= 0.5);
        }
    }
}

TEST_CASE("placement is deterministic in the seed") {
    const GeoScenario city = small_city();
    const auto a = place_gnbs(city, 60.0, 123);
    const auto b = place_gnbs(city, 60.0, 123);
    const auto c = place_gnbs(city, 60.0, 124);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].position.x == b[i].position.x);
        CHECK(a[i].height_m == b[i].height_m);
    }
    bool differs = a.size() != c.size();
    for (size_t i = 0; !differs && i < a.size(); ++i) {
        differs = a[i].position.x != c[i].position.x;
    }
    CHECK(differs);
}

TEST_CASE("UE population is 30 per gNB") {
    const GeoScenario city = small_city();
    const auto ues = place_ues(city, 4, 9);
    CHECK(ues.size() == 4u * 30u);
    for (const auto& u : ues) {
        CHECK(u.height_m >= 1.6);
        CHECK(u.height_m <= 1.8);
        CHECK(u.kind == NodeKind::Ue);
        CHECK(u.sectors.size() == 1);
    }
    CHECK(place_ues(city, 0, 9).empty());
}

TEST_CASE("placement failure reports diagnostics") {
    // A valid region fully covered by one building: projection always lands
    // inside a footprint, so nothing can ever be placed.
    Polygon2D region;
    region.points = {{-10, -10}, {10, -10}, {10, 10}, {-10, 10}};
    Polygon2D big = region;
    const GeoScenario impossible = geoscenario_from_parts({{big, 20.0}}, {region});
    CHECK_THROWS_WITH_AS(place_gnbs(impossible, 100000.0, 3, {}),
                         doctest::Contains("did not converge"), std::runtime_error);
}

TEST_CASE("attachment picks the nearest reachable gNB") {
    const BuildingSet open;  // no obstructions
    std::vector<GroundNode> gnbs(2);
    for (int i = 0; i < 2; ++i) {
        gnbs[i].id = i;
        gnbs[i].height_m = 10.0;
        gnbs[i].kind = NodeKind::Gnb;
        gnbs[i].pattern = BeamPattern::gnb();
        gnbs[i].sectors.resize(3);
        for (int s = 0; s < 3; ++s) {
            gnbs[i].sectors[s].boresight_azimuth_rad = s * 2.0 * kPi / 3.0;
            gnbs[i].sectors[s].width_rad = 2.0 * kPi / 3.0;
        }
    }
    gnbs[0].position = {0.0, 0.0};
    gnbs[1].position = {300.0, 0.0};

    std::vector<GroundNode> ues(3);
    for (auto& u : ues) {
        u.height_m = 1.7;
        u.kind = NodeKind::Ue;
        u.pattern = BeamPattern::ue();
        u.sectors.resize(1);
        u.sectors[0].width_rad = 2.0 * kPi;
    }
    ues[0].position = {0.0, 50.0};    // north of gNB 0 -> sector 0
    ues[1].position = {290.0, 0.0};   // closer to gNB 1
    ues[2].position = {150.0, 900.0};  // out of range of both

    const Topology topo = attach_ues(gnbs, ues, open, 200.0);
    CHECK(topo.attachment[0] == 0);
    CHECK(topo.attachment[1] == 1);
    CHECK(topo.attachment[2] == -1);
    CHECK(topo.servable_ues[0][0] == std::vector<int>{0});

    // A wall between UE 1 and gNB 1 forces the fallback to stay unattached
    // (gNB 0 is beyond d_max).
    BuildingSet wall({{Polygon2D{{{295.0, -5.0}, {296.0, -5.0}, {296.0, 5.0}, {295.0, 5.0}}}, 30.0}});
    const Topology blocked = attach_ues(gnbs, ues, wall, 200.0);
    CHECK(blocked.attachment[1] == -1);
}

TEST_CASE("node list round-trip") {
    const char* path = "/tmp/rfisim_nodes.csv";
    {
        std::ofstream out(path);
        out << "id,x_m,y_m,height_m,kind\n";
        out << "0,1.5,-2.5,10,gnb\n";
        out << "# comment\n";
        out << "1,3,4,1.7,ue\n";
    }
    const auto nodes = load_node_list(path, 30.0);
    REQUIRE(nodes.size() == 2);
    CHECK(nodes[0].kind == NodeKind::Gnb);
    CHECK(nodes[0].tx_power_dbm == doctest::Approx(30.0));
    CHECK(nodes[0].position.x == doctest::Approx(1.5));
    CHECK(nodes[1].kind == NodeKind::Ue);
    CHECK(nodes[1].height_m == doctest::Approx(1.7));

    {
        std::ofstream out(path);
        out << "0,1,2,3,windmill\n";
    }
    CHECK_THROWS_WITH_AS(load_node_list(path, 30.0), doctest::Contains("line 1"),
                         std::runtime_error);
}

TEST_CASE("backhaul links connect unobstructed pairs only") {
    std::vector<GroundNode> gnbs(3);
    for (int i = 0; i < 3; ++i) {
        gnbs[i].id = i;
        gnbs[i].height_m = 10.0;
        gnbs[i].kind = NodeKind::Gnb;
        gnbs[i].pattern = BeamPattern::gnb();
        gnbs[i].sectors.resize(3);
        for (int s = 0; s < 3; ++s) {
            gnbs[i].sectors[s].boresight_azimuth_rad = s * 2.0 * kPi / 3.0;
            gnbs[i].sectors[s].width_rad = 2.0 * kPi / 3.0;
        }
    }
    gnbs[0].position = {0.0, 0.0};
    gnbs[1].position = {100.0, 0.0};
    gnbs[2].position = {200.0, 0.0};

    const BuildingSet open;
    const Topology all = build_backhaul_links(gnbs, open, 5);
    CHECK(all.backhaul_links.size() == 3);  // all pairs

    // A wall between 0 and 1 also cuts 0-2 (collinear).
    BuildingSet wall({{Polygon2D{{{50.0, -5.0}, {51.0, -5.0}, {51.0, 5.0}, {50.0, 5.0}}}, 30.0}});
    const Topology cut = build_backhaul_links(gnbs, wall, 5);
    CHECK(cut.backhaul_links.size() == 1);
    CHECK(cut.backhaul_links[0].tx_index + cut.backhaul_links[0].rx_index == 3);  // pair {1,2}

    // Direction choice is deterministic per seed.
    const Topology again = build_backhaul_links(gnbs, open, 5);
    for (size_t i = 0; i < all.backhaul_links.size(); ++i) {
        CHECK(all.backhaul_links[i].tx_index == again.backhaul_links[i].tx_index);
    }
}
