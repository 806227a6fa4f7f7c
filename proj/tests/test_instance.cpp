#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>

#include "luxlink/errors.hpp"
#include "luxlink/instance.hpp"
#include "luxlink/photometry.hpp"
#include "support/close.hpp"

using namespace luxlink;
using testsupport::abs_close;
using testsupport::rel_close;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const Room* room_by_id(const Scenario& sc, int id) {
    for (const Room& r : sc.rooms)
        if (r.id == id) return &r;
    return nullptr;
}

std::string write_temp(const std::string& name, const std::string& text) {
    std::string path = (std::filesystem::temp_directory_path() / name).string();
    std::ofstream out(path);
    out << text;
    return path;
}

}  // namespace

TEST_CASE("reference floorplan has the published room mix") {
    Scenario sc = Scenario::reference();
    sc.validate();
    CHECK(sc.rooms.size() == 36);

    int internal = 0, external = 0, corridor = 0, stairway = 0;
    for (const Room& r : sc.rooms) {
        switch (r.kind) {
            case RoomKind::Internal: ++internal; break;
            case RoomKind::External: ++external; break;
            case RoomKind::Corridor: ++corridor; break;
            case RoomKind::Stairway: ++stairway; break;
        }
    }
    CHECK(internal == 4);
    CHECK(external == 16);
    CHECK(corridor == 12);
    CHECK(stairway == 4);

    for (const Room& r : sc.rooms) {
        CHECK(r.size_x == 3.0);
        CHECK(r.size_y == 3.0);
        if (r.kind == RoomKind::External) CHECK(r.daylight_factor_pct == 3.0);
        else CHECK(r.daylight_factor_pct == 0.0);
    }

    CHECK(sc.vlc_radios().size() == 80);
    CHECK(sc.wifi_aps().size() == 4);
    CHECK(sc.sample_grid().size() == 180);
    CHECK(sc.rsun_at_hour(12) == 110.0);
    CHECK(sc.rsun_at_hour(3) == 0.0);
    CHECK(sc.rsun_at_hour(6) == 110.0);
    CHECK(sc.rsun_at_hour(18) == 110.0);
    CHECK(sc.rsun_at_hour(19) == 0.0);
    CHECK_THROWS_AS((void)sc.rsun_at_hour(24), ConfigError);
    CHECK_THROWS_AS((void)sc.rsun_at_hour(-1), ConfigError);
}

TEST_CASE("emitters aim at desk quadrants and carry the optical efficacy") {
    Scenario sc = Scenario::reference();
    auto radios = sc.vlc_radios();
    REQUIRE(radios.size() == 80);

    // electrical basis: 150 lm per electrical watt over eta_dc 0.1 gives
    // 1500 lm per optical watt, i.e. 2250 lm out of a 15 W fixture share
    for (const VlcApRadio& r : radios) {
        CHECK(rel_close(r.emitter.efficacy_lm_per_w, 1500.0, 1e-12));
        CHECK(rel_close(luminous_flux(r.emitter), 2250.0, 1e-12));
        CHECK(r.emitter.position.z == 3.0);
        CHECK(r.eta_ac == 0.06);
    }

    sc.vlc.efficacy_basis = "optical";
    CHECK(rel_close(sc.vlc_radios()[0].emitter.efficacy_lm_per_w, 150.0, 1e-12));

    // four distinct channels per room, beams crossing the quadrant centers
    const VlcApRadio& first = radios[0];
    const Room* room = room_by_id(sc, first.emitter.room_id);
    REQUIRE(room != nullptr);
    std::set<int> channels;
    for (int k = 0; k < 4; ++k) {
        const VlcApRadio& r = radios[static_cast<size_t>(k)];
        CHECK(r.emitter.room_id == first.emitter.room_id);
        channels.insert(r.channel_id);
        Vec3 axis = r.emitter.beam_axis;
        double scale = (sc.desk_height_m - r.emitter.position.z) / axis.z;
        double hit_x = r.emitter.position.x + scale * axis.x;
        double hit_y = r.emitter.position.y + scale * axis.y;
        CHECK((abs_close(hit_x, room->min_x + 0.75, 1e-12) ||
               abs_close(hit_x, room->min_x + 2.25, 1e-12)));
        CHECK((abs_close(hit_y, room->min_y + 0.75, 1e-12) ||
               abs_close(hit_y, room->min_y + 2.25, 1e-12)));
    }
    CHECK(channels == std::set<int>{0, 1, 2, 3});
}

TEST_CASE("every desk grid point clears the lux target with all four lights on") {
    Scenario sc = Scenario::reference();
    auto radios = sc.vlc_radios();
    auto grid = sc.sample_grid();
    std::vector<Luminaire> emitters;
    for (const auto& r : radios) emitters.push_back(r.emitter);
    for (const SamplePoint& pt : grid) {
        double lux = horizontal_illuminance(emitters, pt.position, pt.room_id);
        CHECK(lux >= 300.0);
    }
}

TEST_CASE("instance shape and budgets for the reference floorplan") {
    Scenario sc = Scenario::reference();
    ProblemInstance inst = build_instance(sc, 0.0, 42);

    REQUIRE(inst.aps.size() == 84);
    REQUIRE(inst.users.size() == 100);
    REQUIRE(inst.points.size() == 180);
    REQUIRE(inst.cost.size() == 84);
    REQUIRE(inst.cost[0].size() == 100);
    REQUIRE(inst.illum_gain.size() == 84);
    REQUIRE(inst.illum_gain[0].size() == 180);

    for (size_t m = 0; m < inst.aps.size(); ++m) {
        CHECK(inst.aps[m].id == static_cast<int>(m));
        if (m < 80) {
            CHECK(inst.aps[m].kind == ApKind::Vlc);
            CHECK(inst.aps[m].p_on_watts == 15.0);
            CHECK(rel_close(inst.aps[m].p_max_watts, 10.0, 1e-12));
            CHECK(inst.aps[m].room_id >= 0);
        } else {
            CHECK(inst.aps[m].kind == ApKind::Wifi);
            CHECK(inst.aps[m].p_on_watts == 10.0);
            CHECK(inst.aps[m].p_max_watts == 14.0);
            CHECK(inst.aps[m].room_id == -1);
        }
    }
    CHECK(inst.unservable_users().empty());
}

TEST_CASE("optical links stop at the room walls, RF links do not") {
    Scenario sc = Scenario::reference();
    ProblemInstance inst = build_instance(sc, 0.0, 7);
    auto radios = sc.vlc_radios();

    for (size_t m = 0; m < 80; ++m) {
        for (size_t n = 0; n < inst.users.size(); ++n) {
            bool same_room = inst.users[n].room_id == radios[m].emitter.room_id;
            if (same_room) {
                CHECK(inst.cost[m][n] < kInf);
                CHECK(inst.cost[m][n] > 0.0);
            } else {
                CHECK(inst.cost[m][n] == kInf);
            }
        }
        for (size_t w = 0; w < inst.points.size(); ++w) {
            bool same_room = inst.points[w].room_id == radios[m].emitter.room_id;
            if (same_room) CHECK(inst.illum_gain[m][w] > 0.0);
            else CHECK(inst.illum_gain[m][w] == 0.0);
        }
    }
    for (size_t m = 80; m < 84; ++m) {
        for (size_t n = 0; n < inst.users.size(); ++n) {
            CHECK(inst.cost[m][n] < kInf);
            CHECK(inst.cost[m][n] > 0.0);
        }
        for (size_t w = 0; w < inst.points.size(); ++w) CHECK(inst.illum_gain[m][w] == 0.0);
    }
}

TEST_CASE("daylight wipes out the residual in window rooms only") {
    Scenario sc = Scenario::reference();
    auto grid = sc.sample_grid();

    ProblemInstance night = build_instance(sc, 0.0, 1);
    for (const IllumPoint& pt : night.points) CHECK(pt.required_lux == 300.0);

    ProblemInstance day = build_instance(sc, 110.0, 1);
    REQUIRE(day.points.size() == grid.size());
    for (size_t w = 0; w < day.points.size(); ++w) {
        // 3% daylight factor at 110 W/m^2: 3 * 93 * 110 / 100 = 306.9 lux
        double ambient = grid[w].daylight_factor_pct * 93.0 * 110.0 * 0.01;
        double expect = std::max(0.0, 300.0 - ambient);
        CHECK(abs_close(day.points[w].required_lux, expect, 1e-12));
        if (grid[w].daylight_factor_pct == 3.0) CHECK(day.points[w].required_lux == 0.0);
        else CHECK(day.points[w].required_lux == 300.0);
    }
}

TEST_CASE("user placement is deterministic, in-bounds and seed-sensitive") {
    Scenario sc = Scenario::reference();
    ProblemInstance a = build_instance(sc, 110.0, 2026);
    ProblemInstance b = build_instance(sc, 110.0, 2026);
    ProblemInstance c = build_instance(sc, 110.0, 2027);

    REQUIRE(a.users.size() == b.users.size());
    bool all_equal = true;
    for (size_t n = 0; n < a.users.size(); ++n) {
        CHECK(a.users[n].position.x == b.users[n].position.x);
        CHECK(a.users[n].position.y == b.users[n].position.y);
        CHECK(a.users[n].room_id == b.users[n].room_id);
        if (a.users[n].position.x != c.users[n].position.x) all_equal = false;
    }
    CHECK_FALSE(all_equal);

    for (const UserTerminal& u : a.users) {
        const Room* room = room_by_id(sc, u.room_id);
        REQUIRE(room != nullptr);
        CHECK(room->lit());
        CHECK(u.position.x >= room->min_x);
        CHECK(u.position.x <= room->min_x + room->size_x);
        CHECK(u.position.y >= room->min_y);
        CHECK(u.position.y <= room->min_y + room->size_y);
        CHECK(u.position.z == sc.desk_height_m);
        CHECK(u.rate_bps == 6e6);
    }

    for (size_t m = 0; m < a.cost.size(); ++m)
        for (size_t n = 0; n < a.cost[m].size(); ++n)
            CHECK(a.cost[m][n] == b.cost[m][n]);
}

TEST_CASE("facility location round-trips into an instance") {
    std::vector<double> opening = {3.0, 5.0};
    std::vector<double> capacity = {10.0, 4.0};
    std::vector<std::vector<double>> service = {{1.0, 2.0, 7.0}, {4.0, 0.5, 1.0}};
    ProblemInstance inst = from_facility_location(opening, capacity, service);

    REQUIRE(inst.aps.size() == 2);
    REQUIRE(inst.users.size() == 3);
    CHECK(inst.points.empty());
    CHECK(inst.aps[0].p_on_watts == 3.0);
    CHECK(inst.aps[1].p_max_watts == 4.0);
    CHECK(inst.cost == service);
    CHECK(inst.unservable_users().empty());

    CHECK_THROWS_AS((void)from_facility_location({1.0}, {}, {{1.0}}), ConfigError);
    CHECK_THROWS_AS((void)from_facility_location({1.0, 2.0}, {1.0, 2.0}, {{1.0}, {1.0, 2.0}}),
                    ConfigError);
}

TEST_CASE("worst-case family nests its reachable sets by halving") {
    ProblemInstance inst = lower_bound_instance(16, 2.5);
    REQUIRE(inst.aps.size() == 16);
    REQUIRE(inst.users.size() == 4);
    for (const AccessPoint& ap : inst.aps) {
        CHECK(ap.p_on_watts == 2.5);
        CHECK(ap.p_max_watts == kInf);
    }
    for (int n = 0; n < 4; ++n) {
        int reach = 16 >> n;
        for (int m = 0; m < 16; ++m) {
            double c = inst.cost[static_cast<size_t>(m)][static_cast<size_t>(n)];
            if (m < reach) CHECK(c == 0.0);
            else CHECK(c == kInf);
        }
    }
    CHECK(inst.unservable_users().empty());

    CHECK_THROWS_AS((void)lower_bound_instance(12, 1.0), ConfigError);
    CHECK_THROWS_AS((void)lower_bound_instance(1, 1.0), ConfigError);
    CHECK_THROWS_AS((void)lower_bound_instance(4, 0.0), ConfigError);
}

TEST_CASE("scheme masking silences the other radio family but keeps the lights") {
    Scenario sc = Scenario::office_grid(2, 1);
    ProblemInstance inst = build_instance(sc, 0.0, 5);
    REQUIRE(inst.aps.size() == 12);

    ProblemInstance vlc = restrict_to_scheme(inst, Scheme::VlcOnly);
    ProblemInstance wifi = restrict_to_scheme(inst, Scheme::WifiOnly);
    ProblemInstance hybrid = restrict_to_scheme(inst, Scheme::Hybrid);

    for (size_t m = 0; m < inst.aps.size(); ++m)
        for (size_t n = 0; n < inst.users.size(); ++n) {
            CHECK(hybrid.cost[m][n] == inst.cost[m][n]);
            if (inst.aps[m].kind == ApKind::Wifi) {
                CHECK(vlc.cost[m][n] == kInf);
                CHECK(wifi.cost[m][n] == inst.cost[m][n]);
            } else {
                CHECK(wifi.cost[m][n] == kInf);
                CHECK(vlc.cost[m][n] == inst.cost[m][n]);
            }
        }
    CHECK(vlc.illum_gain == inst.illum_gain);
    CHECK(wifi.illum_gain == inst.illum_gain);

    CHECK(parse_scheme("hybrid") == Scheme::Hybrid);
    CHECK(parse_scheme("vlc") == Scheme::VlcOnly);
    CHECK(parse_scheme("wifi") == Scheme::WifiOnly);
    CHECK(to_string(Scheme::VlcOnly) == "vlc");
    CHECK_THROWS_AS((void)parse_scheme("both"), ConfigError);
}

TEST_CASE("office grid strips are sized by their cell counts") {
    Scenario sc = Scenario::office_grid(2, 1, 3, 9.0);
    sc.validate();
    CHECK(sc.floor_w_m == 6.0);
    CHECK(sc.floor_d_m == 3.0);
    CHECK(sc.rooms.size() == 2);
    CHECK(sc.vlc_radios().size() == 8);
    auto wifi = sc.wifi_aps();
    REQUIRE(wifi.size() == 3);
    for (const WifiAp& ap : wifi) CHECK(ap.position.z == 9.0);

    CHECK_THROWS_AS((void)Scenario::office_grid(0, 1), ConfigError);
    CHECK_THROWS_AS((void)Scenario::office_grid(1, 1, 5), ConfigError);
}

TEST_CASE("scenario json accepts full, partial and empty documents") {
    Scenario sc = parse_scenario("{}");
    CHECK(sc.rooms.size() == 36);
    CHECK(sc.floor_w_m == 18.0);
    CHECK(sc.users.count == 100);
    CHECK(sc.vlc.eta_ac == 0.06);

    sc = parse_scenario(R"({
        "users": {"count": 12, "rate_bps": 2e6},
        "vlc_aps": {"eta_ac": 0.09},
        "illumination": {"target_lux": 250}
    })");
    CHECK(sc.users.count == 12);
    CHECK(sc.users.rate_bps == 2e6);
    CHECK(sc.vlc.eta_ac == 0.09);
    CHECK(sc.illumination.target_lux == 250.0);
    CHECK(sc.rooms.size() == 36);

    sc = parse_scenario(R"({
        "rooms": {"layout": "grid", "cells_x": 3, "cells_y": 2},
        "wifi_aps": {"positions": [[0, 0, 12], [9, 6, 12]]},
        "users": {"count": 4}
    })");
    CHECK(sc.floor_w_m == 9.0);
    CHECK(sc.floor_d_m == 6.0);
    CHECK(sc.rooms.size() == 6);
    CHECK(sc.wifi_aps().size() == 2);

    sc = parse_scenario(R"({
        "floor": {"width_m": 7, "depth_m": 4},
        "rooms": {"layout": "explicit", "list": [
            {"kind": "external", "min_x": 0, "min_y": 0, "size_x": 4, "size_y": 4,
             "daylight_factor_pct": 2.0},
            {"kind": "internal", "min_x": 4, "min_y": 0, "size_x": 3, "size_y": 4}
        ]},
        "users": {"count": 2}
    })");
    CHECK(sc.rooms.size() == 2);
    CHECK(sc.rooms[0].daylight_factor_pct == 2.0);
    CHECK(sc.rooms[1].kind == RoomKind::Internal);
}

TEST_CASE("scenario json rejects typos, bad types and bad values") {
    CHECK_THROWS_AS((void)parse_scenario("{"), ConfigError);
    CHECK_THROWS_AS((void)parse_scenario("[]"), ConfigError);
    CHECK_THROWS_AS((void)parse_scenario(R"({"florr": {}})"), ConfigError);
    CHECK_THROWS_AS((void)parse_scenario(R"({"vlc_aps": {"pon_watts": 15}})"), ConfigError);
    CHECK_THROWS_AS((void)parse_scenario(R"({"users": {"count": "many"}})"), ConfigError);
    CHECK_THROWS_AS((void)parse_scenario(R"({"users": {"count": 1.5}})"), ConfigError);
    CHECK_THROWS_AS((void)parse_scenario(R"({"rooms": {"layout": "hexagonal"}})"), ConfigError);
    CHECK_THROWS_AS((void)parse_scenario(R"({"rooms": {"layout": "reference", "cells_x": 2}})"),
                    ConfigError);
    CHECK_THROWS_AS((void)parse_scenario(R"({"floor": {"width_m": 12}})"), ConfigError);
    CHECK_THROWS_AS((void)parse_scenario(R"({"wifi_aps": {"positions": [[1, 2]]}})"), ConfigError);
    CHECK_THROWS_AS((void)parse_scenario(R"({"vlc_aps": {"eta_ac": 0.2}})"), ConfigError);
    CHECK_THROWS_AS((void)parse_scenario(R"({"vlc_aps": {"aps_per_fixture": 3}})"), ConfigError);
    CHECK_THROWS_AS((void)parse_scenario(R"({"receiver": {"fov_deg": 120}})"), ConfigError);
    CHECK_THROWS_AS((void)parse_scenario(R"({"wifi_aps": {"floor_attenuation_db": 30}})"),
                    ConfigError);
    CHECK_THROWS_AS((void)parse_scenario(R"({"illumination": {"df_near_window_pct": 4}})"),
                    ConfigError);
    CHECK_THROWS_AS(
        (void)parse_scenario(R"({"solar_profile": {"day_wm2": 1, "hourly_wm2": []}})"),
        ConfigError);
    CHECK_THROWS_AS((void)parse_scenario(R"({"solar_profile": {"hourly_wm2": [1, 2]}})"),
                    ConfigError);
}

TEST_CASE("solar profiles come in day-night, hourly and csv forms") {
    Scenario sc = parse_scenario(R"({"solar_profile": {"day_wm2": 80, "night_wm2": 5}})");
    CHECK(sc.rsun_at_hour(5) == 5.0);
    CHECK(sc.rsun_at_hour(6) == 80.0);
    CHECK(sc.rsun_at_hour(18) == 80.0);
    CHECK(sc.rsun_at_hour(19) == 5.0);

    std::string hourly = "{\"solar_profile\": {\"hourly_wm2\": [";
    for (int h = 0; h < 24; ++h) hourly += (h ? "," : "") + std::to_string(h * 2);
    hourly += "]}}";
    sc = parse_scenario(hourly);
    CHECK(sc.rsun_at_hour(0) == 0.0);
    CHECK(sc.rsun_at_hour(13) == 26.0);

    std::string csv = "hour,rsun_wm2\n";
    for (int h = 0; h < 24; ++h) csv += std::to_string(h) + "," + std::to_string(h * 1.5) + "\n";
    std::string path = write_temp("luxlink_solar_ok.csv", csv);
    auto profile = load_solar_csv(path);
    CHECK(profile[0] == 0.0);
    CHECK(rel_close(profile[10], 15.0, 1e-12));

    std::string doc = R"({"solar_profile": {"csv": ")" + path + R"("}})";
    sc = parse_scenario(doc);
    CHECK(rel_close(sc.rsun_at_hour(10), 15.0, 1e-12));

    // relative paths resolve against the config file's directory
    std::string rel_doc = R"({"solar_profile": {"csv": "luxlink_solar_ok.csv"}})";
    std::string cfg = write_temp("luxlink_scenario_rel.json", rel_doc);
    sc = load_scenario(cfg);
    CHECK(rel_close(sc.rsun_at_hour(10), 15.0, 1e-12));
    std::remove(cfg.c_str());

    CHECK_THROWS_AS((void)load_solar_csv(write_temp("luxlink_solar_h.csv", "hour,sun\n")),
                    ConfigError);
    CHECK_THROWS_AS((void)load_solar_csv(write_temp("luxlink_solar_s.csv",
                                                    "hour,rsun_wm2\n0,1\n1,2\n")),
                    ConfigError);
    CHECK_THROWS_AS((void)load_solar_csv(write_temp("luxlink_solar_o.csv",
                                                    "hour,rsun_wm2\n1,1\n" )),
                    ConfigError);
    CHECK_THROWS_AS((void)load_solar_csv(write_temp("luxlink_solar_b.csv",
                                                    "hour,rsun_wm2\n0,abc\n")),
                    ConfigError);
    CHECK_THROWS_AS((void)load_solar_csv("/nonexistent/solar.csv"), ConfigError);
    std::remove(path.c_str());
}

TEST_CASE("daylight gradient falls off linearly from the window wall") {
    Scenario sc = parse_scenario(R"({
        "floor": {"width_m": 3, "depth_m": 3},
        "rooms": {"layout": "grid", "cells_x": 1, "cells_y": 1},
        "illumination": {"df_near_window_pct": 4.0, "df_far_wall_pct": 1.0},
        "users": {"count": 1}
    })");
    auto grid = sc.sample_grid();
    REQUIRE(grid.size() == 9);
    for (const SamplePoint& pt : grid) {
        double tx = std::min(pt.position.x, 3.0 - pt.position.x) / 3.0;
        double ty = std::min(pt.position.y, 3.0 - pt.position.y) / 3.0;
        double t = std::min(tx, ty);
        CHECK(abs_close(pt.daylight_factor_pct, 4.0 - 3.0 * t, 1e-12));
    }

    // a room with no outside wall keeps its flat factor even under a profile
    Scenario inner = parse_scenario(R"({
        "rooms": {"layout": "grid", "cells_x": 3, "cells_y": 3},
        "illumination": {"df_near_window_pct": 4.0, "df_far_wall_pct": 1.0},
        "users": {"count": 1}
    })");
    auto inner_grid = inner.sample_grid();
    for (const SamplePoint& pt : inner_grid)
        if (pt.room_id == 4)  // center cell of the 3x3 block
            CHECK(pt.daylight_factor_pct == 3.0);
}

TEST_CASE("instance builder rejects broken inputs") {
    Scenario sc = Scenario::reference();
    CHECK_THROWS_AS((void)build_instance(sc, -1.0, 0), ConfigError);
    sc.vlc.eta_ac = 0.5;
    CHECK_THROWS_AS((void)build_instance(sc, 0.0, 0), ConfigError);
}
