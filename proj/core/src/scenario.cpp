#include "luxlink/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "luxlink/errors.hpp"

namespace luxlink {

using nlohmann::json;

namespace {

constexpr double kEdgeEps = 1e-9;

void reject_unknown_keys(const json& j, const std::string& where,
                         std::initializer_list<const char*> allowed) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) {
                known = true;
                break;
            }
        if (!known) throw ConfigError(where + ": unknown key '" + it.key() + "'");
    }
}

const json* find(const json& j, const char* key) {
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

double as_number(const json& j, const std::string& where) {
    if (!j.is_number()) throw ConfigError(where + ": expected a number");
    return j.get<double>();
}

double num_or(const json& j, const std::string& where, const char* key, double def) {
    const json* v = find(j, key);
    return v ? as_number(*v, where + "." + key) : def;
}

int int_or(const json& j, const std::string& where, const char* key, int def) {
    const json* v = find(j, key);
    if (!v) return def;
    if (!v->is_number_integer()) throw ConfigError(where + "." + key + ": expected an integer");
    return v->get<int>();
}

std::string str_or(const json& j, const std::string& where, const char* key,
                   const std::string& def) {
    const json* v = find(j, key);
    if (!v) return def;
    if (!v->is_string()) throw ConfigError(where + "." + key + ": expected a string");
    return v->get<std::string>();
}

RoomKind parse_room_kind(const std::string& s, const std::string& where) {
    if (s == "internal") return RoomKind::Internal;
    if (s == "external") return RoomKind::External;
    if (s == "corridor") return RoomKind::Corridor;
    if (s == "stairway") return RoomKind::Stairway;
    throw ConfigError(where + ": unknown room kind '" + s + "'");
}

}  // namespace

std::string to_string(RoomKind kind) {
    switch (kind) {
        case RoomKind::Internal: return "internal";
        case RoomKind::External: return "external";
        case RoomKind::Corridor: return "corridor";
        case RoomKind::Stairway: return "stairway";
    }
    return "?";
}

Scenario Scenario::reference() {
    Scenario s;
    const double cell = 3.0;
    int id = 0;
    for (int cy = 0; cy < 6; ++cy)
        for (int cx = 0; cx < 6; ++cx) {
            Room r;
            r.id = id++;
            r.min_x = cx * cell;
            r.min_y = cy * cell;
            r.size_x = cell;
            r.size_y = cell;
            bool corner = (cx == 0 || cx == 5) && (cy == 0 || cy == 5);
            bool perimeter = cx == 0 || cx == 5 || cy == 0 || cy == 5;
            bool center = (cx == 2 || cx == 3) && (cy == 2 || cy == 3);
            if (corner) {
                r.kind = RoomKind::Stairway;
            } else if (perimeter) {
                r.kind = RoomKind::External;
                r.daylight_factor_pct = 3.0;
            } else if (center) {
                r.kind = RoomKind::Internal;
            } else {
                r.kind = RoomKind::Corridor;
            }
            s.rooms.push_back(r);
        }
    for (int h = 6; h <= 18; ++h) s.solar_hourly_wm2[h] = 110.0;

    s.receiver.detector_area_m2 = 1e-4;
    s.receiver.responsivity_a_per_w = 0.54;
    s.receiver.filter_gain = 1.0;
    s.receiver.lens_index = 1.5;
    s.receiver.fov_deg = 90.0;
    s.receiver.noise_power_a2 = 4.7e-14;
    return s;
}

Scenario Scenario::office_grid(int cells_x, int cells_y, int wifi_count, double wifi_height_m) {
    if (cells_x < 1 || cells_y < 1)
        throw ConfigError("office_grid: need at least one room in each direction");
    if (wifi_count < 0 || wifi_count > 4)
        throw ConfigError("office_grid: wifi_count must be between 0 and 4");
    Scenario s = reference();
    s.rooms.clear();
    const double cell = 3.0;
    s.floor_w_m = cells_x * cell;
    s.floor_d_m = cells_y * cell;
    int id = 0;
    for (int cy = 0; cy < cells_y; ++cy)
        for (int cx = 0; cx < cells_x; ++cx) {
            Room r;
            r.id = id++;
            r.kind = RoomKind::External;
            r.min_x = cx * cell;
            r.min_y = cy * cell;
            r.size_x = cell;
            r.size_y = cell;
            r.daylight_factor_pct = 3.0;
            s.rooms.push_back(r);
        }
    s.wifi.access_height_m = wifi_height_m;
    const Vec3 corners[4] = {{0, 0, wifi_height_m},
                             {s.floor_w_m, 0, wifi_height_m},
                             {0, s.floor_d_m, wifi_height_m},
                             {s.floor_w_m, s.floor_d_m, wifi_height_m}};
    for (int i = 0; i < wifi_count; ++i) s.wifi.positions.push_back(corners[i]);
    return s;
}

double Scenario::rsun_at_hour(int hour) const {
    if (hour < 0 || hour > 23) throw ConfigError("hour must be in 0..23");
    return solar_hourly_wm2[static_cast<size_t>(hour)];
}

std::vector<VlcApRadio> Scenario::vlc_radios() const {
    std::vector<VlcApRadio> out;
    double g_optical = vlc.efficacy_basis == "electrical" ? vlc.efficacy_lm_per_w / vlc.eta_dc
                                                          : vlc.efficacy_lm_per_w;
    for (const Room& room : rooms) {
        if (!room.lit()) continue;
        double cx = room.min_x + room.size_x / 2.0;
        double cy = room.min_y + room.size_y / 2.0;
        Vec3 fixture{cx, cy, floor_h_m};
        int channel = 0;
        for (double tx : {cx - room.size_x / 4.0, cx + room.size_x / 4.0})
            for (double ty : {cy - room.size_y / 4.0, cy + room.size_y / 4.0}) {
                VlcApRadio ap;
                ap.emitter.position = fixture;
                ap.emitter.beam_axis = Vec3{tx, ty, desk_height_m} - fixture;
                ap.emitter.semi_angle_deg = vlc.semi_angle_deg;
                ap.emitter.p_on_watts = vlc.p_on_watts;
                ap.emitter.eta_dc = vlc.eta_dc;
                ap.emitter.efficacy_lm_per_w = g_optical;
                ap.emitter.room_id = room.id;
                ap.eta_ac = vlc.eta_ac;
                ap.bandwidth_hz = vlc.bandwidth_hz;
                ap.channel_id = channel++;
                out.push_back(ap);
            }
    }
    return out;
}

std::vector<WifiAp> Scenario::wifi_aps() const {
    std::vector<Vec3> where = wifi.positions;
    if (where.empty()) {
        double h = wifi.access_height_m;
        where = {{0, 0, h}, {floor_w_m, 0, h}, {0, floor_d_m, h}, {floor_w_m, floor_d_m, h}};
    }
    std::vector<WifiAp> out;
    for (const Vec3& pos : where) {
        WifiAp ap;
        ap.position = pos;
        ap.p_on_watts = wifi.p_on_watts;
        ap.p_max_watts = wifi.p_max_watts;
        ap.bandwidth_per_user_hz = wifi.bandwidth_per_user_hz;
        ap.wavelength_m = wifi.wavelength_m;
        ap.floor_attenuation_db = wifi.floor_attenuation_db;
        ap.noise_floor_w = wifi.noise_floor_w;
        ap.eta = wifi.eta;
        out.push_back(ap);
    }
    return out;
}

std::vector<SamplePoint> Scenario::sample_grid() const {
    std::vector<SamplePoint> out;
    int n = illumination.grid_points_per_side;
    bool profiled = illumination.df_near_window_pct.has_value();
    for (const Room& room : rooms) {
        if (!room.lit()) continue;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                SamplePoint pt;
                pt.position = {room.min_x + (i + 0.5) * room.size_x / n,
                               room.min_y + (j + 0.5) * room.size_y / n, desk_height_m};
                pt.room_id = room.id;
                if (room.kind == RoomKind::Internal) {
                    pt.daylight_factor_pct = 0.0;
                } else if (!profiled) {
                    pt.daylight_factor_pct = room.daylight_factor_pct;
                } else {
                    // inward distance to the nearest outside wall, 0 at the
                    // window, 1 at the far side of the room
                    double t = 1.0;
                    if (room.min_x < kEdgeEps)
                        t = std::min(t, (pt.position.x - room.min_x) / room.size_x);
                    if (std::fabs(room.min_x + room.size_x - floor_w_m) < kEdgeEps)
                        t = std::min(t, (room.min_x + room.size_x - pt.position.x) / room.size_x);
                    if (room.min_y < kEdgeEps)
                        t = std::min(t, (pt.position.y - room.min_y) / room.size_y);
                    if (std::fabs(room.min_y + room.size_y - floor_d_m) < kEdgeEps)
                        t = std::min(t, (room.min_y + room.size_y - pt.position.y) / room.size_y);
                    double near = *illumination.df_near_window_pct;
                    double far = *illumination.df_far_wall_pct;
                    pt.daylight_factor_pct = t >= 1.0 ? room.daylight_factor_pct
                                                      : near + (far - near) * t;
                }
                out.push_back(pt);
            }
    }
    return out;
}

void Scenario::validate() const {
    if (!(floor_w_m > 0) || !(floor_d_m > 0) || !(floor_h_m > 0))
        throw ConfigError("floor: dimensions must be positive");
    if (!(desk_height_m >= 0) || desk_height_m >= floor_h_m)
        throw ConfigError("floor.desk_height_m: must lie inside the floor height");

    int lit = 0;
    for (const Room& r : rooms) {
        std::string where = "rooms[" + std::to_string(r.id) + "]";
        if (!(r.size_x > 0) || !(r.size_y > 0)) throw ConfigError(where + ": empty footprint");
        if (r.min_x < -kEdgeEps || r.min_y < -kEdgeEps ||
            r.min_x + r.size_x > floor_w_m + kEdgeEps ||
            r.min_y + r.size_y > floor_d_m + kEdgeEps)
            throw ConfigError(where + ": outside the floor footprint");
        if (r.daylight_factor_pct < 0) throw ConfigError(where + ": negative daylight factor");
        if (r.lit()) ++lit;
    }
    if (users.count > 0 && lit == 0)
        throw ConfigError("users: cannot place users without internal or external rooms");

    if (!(vlc.p_on_watts > 0)) throw ConfigError("vlc_aps.p_on_watts: must be positive");
    if (!(vlc.semi_angle_deg > 0) || vlc.semi_angle_deg >= 90)
        throw ConfigError("vlc_aps.semi_angle_deg: must be in (0, 90)");
    if (!(vlc.efficacy_lm_per_w > 0)) throw ConfigError("vlc_aps.efficacy_lm_per_w: must be positive");
    if (vlc.efficacy_basis != "electrical" && vlc.efficacy_basis != "optical")
        throw ConfigError("vlc_aps.efficacy_basis: expected 'electrical' or 'optical'");
    if (!(vlc.eta_dc > 0) || vlc.eta_dc > 1) throw ConfigError("vlc_aps.eta_dc: must be in (0, 1]");
    if (!(vlc.eta_ac > 0) || vlc.eta_ac > vlc.eta_dc)
        throw ConfigError("vlc_aps.eta_ac: must be in (0, eta_dc]");
    if (!(vlc.bandwidth_hz > 0)) throw ConfigError("vlc_aps.bandwidth_hz: must be positive");
    if (vlc.aps_per_fixture != 4)
        throw ConfigError("vlc_aps.aps_per_fixture: the quadrant aiming pattern needs exactly 4");

    if (!(wifi.p_on_watts > 0)) throw ConfigError("wifi_aps.p_on_watts: must be positive");
    if (!(wifi.p_max_watts > 0)) throw ConfigError("wifi_aps.p_max_watts: must be positive");
    if (!(wifi.bandwidth_per_user_hz > 0))
        throw ConfigError("wifi_aps.bandwidth_per_user_hz: must be positive");
    if (!(wifi.wavelength_m > 0)) throw ConfigError("wifi_aps.wavelength_m: must be positive");
    if (wifi.floor_attenuation_db > 0)
        throw ConfigError("wifi_aps.floor_attenuation_db: losses are non-positive dB");
    if (!(wifi.noise_floor_w > 0)) throw ConfigError("wifi_aps.noise_floor_w: must be positive");
    if (!(wifi.eta > 0) || wifi.eta > 1) throw ConfigError("wifi_aps.eta: must be in (0, 1]");

    if (!(receiver.detector_area_m2 > 0)) throw ConfigError("receiver.detector_area_m2: must be positive");
    if (!(receiver.responsivity_a_per_w > 0))
        throw ConfigError("receiver.responsivity_a_per_w: must be positive");
    if (!(receiver.filter_gain > 0)) throw ConfigError("receiver.filter_gain: must be positive");
    if (!(receiver.lens_index > 0)) throw ConfigError("receiver.lens_index: must be positive");
    if (!(receiver.fov_deg > 0) || receiver.fov_deg > 90)
        throw ConfigError("receiver.fov_deg: must be in (0, 90]");
    if (!(receiver.noise_power_a2 > 0)) throw ConfigError("receiver.noise_power_a2: must be positive");

    if (illumination.target_lux < 0) throw ConfigError("illumination.target_lux: must be non-negative");
    if (illumination.grid_points_per_side < 1)
        throw ConfigError("illumination.grid_points_per_side: must be at least 1");
    if (illumination.df_near_window_pct.has_value() != illumination.df_far_wall_pct.has_value())
        throw ConfigError("illumination: daylight profile needs both near and far factors");
    if (illumination.df_near_window_pct &&
        (*illumination.df_near_window_pct < 0 || *illumination.df_far_wall_pct < 0))
        throw ConfigError("illumination: daylight profile factors must be non-negative");

    if (users.count < 0) throw ConfigError("users.count: must be non-negative");
    if (users.rate_bps < 0) throw ConfigError("users.rate_bps: must be non-negative");

    for (double v : solar_hourly_wm2)
        if (v < 0) throw ConfigError("solar_profile: irradiance must be non-negative");
}

namespace {

void parse_floor(const json& j, Scenario& s) {
    reject_unknown_keys(j, "floor", {"width_m", "depth_m", "height_m", "desk_height_m"});
    s.floor_w_m = num_or(j, "floor", "width_m", s.floor_w_m);
    s.floor_d_m = num_or(j, "floor", "depth_m", s.floor_d_m);
    s.floor_h_m = num_or(j, "floor", "height_m", s.floor_h_m);
    s.desk_height_m = num_or(j, "floor", "desk_height_m", s.desk_height_m);
}

void parse_rooms(const json& j, Scenario& s, bool floor_given) {
    std::string layout = str_or(j, "rooms", "layout", "reference");
    if (layout == "reference") {
        reject_unknown_keys(j, "rooms", {"layout"});
        Scenario ref = Scenario::reference();
        if (floor_given &&
            (s.floor_w_m != ref.floor_w_m || s.floor_d_m != ref.floor_d_m))
            throw ConfigError("rooms: the reference layout needs an 18 x 18 m floor");
        s.floor_w_m = ref.floor_w_m;
        s.floor_d_m = ref.floor_d_m;
        s.rooms = ref.rooms;
    } else if (layout == "grid") {
        reject_unknown_keys(j, "rooms",
                            {"layout", "cells_x", "cells_y", "cell_size_m", "kind",
                             "daylight_factor_pct"});
        int nx = int_or(j, "rooms", "cells_x", 1);
        int ny = int_or(j, "rooms", "cells_y", 1);
        double cell = num_or(j, "rooms", "cell_size_m", 3.0);
        RoomKind kind = parse_room_kind(str_or(j, "rooms", "kind", "external"), "rooms.kind");
        double df = num_or(j, "rooms", "daylight_factor_pct", 3.0);
        if (nx < 1 || ny < 1 || !(cell > 0)) throw ConfigError("rooms: bad grid shape");
        if (!floor_given) {
            s.floor_w_m = nx * cell;
            s.floor_d_m = ny * cell;
        }
        s.rooms.clear();
        int id = 0;
        for (int cy = 0; cy < ny; ++cy)
            for (int cx = 0; cx < nx; ++cx) {
                Room r;
                r.id = id++;
                r.kind = kind;
                r.min_x = cx * cell;
                r.min_y = cy * cell;
                r.size_x = cell;
                r.size_y = cell;
                r.daylight_factor_pct = kind == RoomKind::External ? df : 0.0;
                s.rooms.push_back(r);
            }
    } else if (layout == "explicit") {
        reject_unknown_keys(j, "rooms", {"layout", "list"});
        const json* list = find(j, "list");
        if (!list || !list->is_array()) throw ConfigError("rooms.list: expected an array");
        s.rooms.clear();
        int id = 0;
        for (const json& rj : *list) {
            std::string where = "rooms.list[" + std::to_string(id) + "]";
            reject_unknown_keys(rj, where,
                                {"kind", "min_x", "min_y", "size_x", "size_y",
                                 "daylight_factor_pct"});
            Room r;
            r.id = id++;
            r.kind = parse_room_kind(str_or(rj, where, "kind", "external"), where + ".kind");
            r.min_x = num_or(rj, where, "min_x", 0.0);
            r.min_y = num_or(rj, where, "min_y", 0.0);
            r.size_x = num_or(rj, where, "size_x", 3.0);
            r.size_y = num_or(rj, where, "size_y", 3.0);
            r.daylight_factor_pct = num_or(rj, where, "daylight_factor_pct",
                                           r.kind == RoomKind::External ? 3.0 : 0.0);
            s.rooms.push_back(r);
        }
    } else {
        throw ConfigError("rooms.layout: expected 'reference', 'grid' or 'explicit'");
    }
}

void parse_vlc(const json& j, Scenario& s) {
    reject_unknown_keys(j, "vlc_aps",
                        {"p_on_watts", "semi_angle_deg", "efficacy_lm_per_w", "efficacy_basis",
                         "eta_dc", "eta_ac", "bandwidth_hz", "aps_per_fixture"});
    VlcConfig& v = s.vlc;
    v.p_on_watts = num_or(j, "vlc_aps", "p_on_watts", v.p_on_watts);
    v.semi_angle_deg = num_or(j, "vlc_aps", "semi_angle_deg", v.semi_angle_deg);
    v.efficacy_lm_per_w = num_or(j, "vlc_aps", "efficacy_lm_per_w", v.efficacy_lm_per_w);
    v.efficacy_basis = str_or(j, "vlc_aps", "efficacy_basis", v.efficacy_basis);
    v.eta_dc = num_or(j, "vlc_aps", "eta_dc", v.eta_dc);
    v.eta_ac = num_or(j, "vlc_aps", "eta_ac", v.eta_ac);
    v.bandwidth_hz = num_or(j, "vlc_aps", "bandwidth_hz", v.bandwidth_hz);
    v.aps_per_fixture = int_or(j, "vlc_aps", "aps_per_fixture", v.aps_per_fixture);
}

void parse_wifi(const json& j, Scenario& s) {
    reject_unknown_keys(j, "wifi_aps",
                        {"p_on_watts", "p_max_watts", "bandwidth_per_user_hz", "wavelength_m",
                         "floor_attenuation_db", "noise_floor_w", "eta", "positions",
                         "access_height_m"});
    WifiConfig& w = s.wifi;
    w.p_on_watts = num_or(j, "wifi_aps", "p_on_watts", w.p_on_watts);
    w.p_max_watts = num_or(j, "wifi_aps", "p_max_watts", w.p_max_watts);
    w.bandwidth_per_user_hz = num_or(j, "wifi_aps", "bandwidth_per_user_hz", w.bandwidth_per_user_hz);
    w.wavelength_m = num_or(j, "wifi_aps", "wavelength_m", w.wavelength_m);
    w.floor_attenuation_db = num_or(j, "wifi_aps", "floor_attenuation_db", w.floor_attenuation_db);
    w.noise_floor_w = num_or(j, "wifi_aps", "noise_floor_w", w.noise_floor_w);
    w.eta = num_or(j, "wifi_aps", "eta", w.eta);
    w.access_height_m = num_or(j, "wifi_aps", "access_height_m", w.access_height_m);
    if (const json* pos = find(j, "positions")) {
        if (!pos->is_array()) throw ConfigError("wifi_aps.positions: expected an array");
        w.positions.clear();
        for (const json& p : *pos) {
            if (!p.is_array() || p.size() != 3)
                throw ConfigError("wifi_aps.positions: expected [x, y, z] triples");
            w.positions.push_back({as_number(p[0], "wifi_aps.positions.x"),
                                   as_number(p[1], "wifi_aps.positions.y"),
                                   as_number(p[2], "wifi_aps.positions.z")});
        }
    }
}

void parse_receiver(const json& j, Scenario& s) {
    reject_unknown_keys(j, "receiver",
                        {"detector_area_m2", "responsivity_a_per_w", "filter_gain", "lens_index",
                         "fov_deg", "noise_power_a2"});
    VlcReceiver& r = s.receiver;
    r.detector_area_m2 = num_or(j, "receiver", "detector_area_m2", r.detector_area_m2);
    r.responsivity_a_per_w = num_or(j, "receiver", "responsivity_a_per_w", r.responsivity_a_per_w);
    r.filter_gain = num_or(j, "receiver", "filter_gain", r.filter_gain);
    r.lens_index = num_or(j, "receiver", "lens_index", r.lens_index);
    r.fov_deg = num_or(j, "receiver", "fov_deg", r.fov_deg);
    r.noise_power_a2 = num_or(j, "receiver", "noise_power_a2", r.noise_power_a2);
}

void parse_illumination(const json& j, Scenario& s) {
    reject_unknown_keys(j, "illumination",
                        {"target_lux", "grid_points_per_side", "df_near_window_pct",
                         "df_far_wall_pct"});
    IlluminationConfig& c = s.illumination;
    c.target_lux = num_or(j, "illumination", "target_lux", c.target_lux);
    c.grid_points_per_side = int_or(j, "illumination", "grid_points_per_side", c.grid_points_per_side);
    if (const json* v = find(j, "df_near_window_pct"))
        c.df_near_window_pct = as_number(*v, "illumination.df_near_window_pct");
    if (const json* v = find(j, "df_far_wall_pct"))
        c.df_far_wall_pct = as_number(*v, "illumination.df_far_wall_pct");
}

void parse_solar(const json& j, Scenario& s, const std::string& base_dir) {
    reject_unknown_keys(j, "solar_profile", {"day_wm2", "night_wm2", "hourly_wm2", "csv"});
    bool two_point = find(j, "day_wm2") || find(j, "night_wm2");
    const json* hourly = find(j, "hourly_wm2");
    const json* csv = find(j, "csv");
    if ((two_point ? 1 : 0) + (hourly ? 1 : 0) + (csv ? 1 : 0) > 1)
        throw ConfigError("solar_profile: give day/night, hourly_wm2 or csv, not a mix");
    if (hourly) {
        if (!hourly->is_array() || hourly->size() != 24)
            throw ConfigError("solar_profile.hourly_wm2: expected 24 values");
        for (size_t h = 0; h < 24; ++h)
            s.solar_hourly_wm2[h] = as_number((*hourly)[h], "solar_profile.hourly_wm2");
    } else if (csv) {
        if (!csv->is_string()) throw ConfigError("solar_profile.csv: expected a path");
        std::string path = csv->get<std::string>();
        if (!base_dir.empty() && !path.empty() && path[0] != '/') path = base_dir + "/" + path;
        s.solar_hourly_wm2 = load_solar_csv(path);
    } else {
        double day = num_or(j, "solar_profile", "day_wm2", 110.0);
        double night = num_or(j, "solar_profile", "night_wm2", 0.0);
        for (int h = 0; h < 24; ++h)
            s.solar_hourly_wm2[static_cast<size_t>(h)] = (h >= 6 && h <= 18) ? day : night;
    }
}

void parse_users(const json& j, Scenario& s) {
    reject_unknown_keys(j, "users", {"count", "rate_bps"});
    s.users.count = int_or(j, "users", "count", s.users.count);
    s.users.rate_bps = num_or(j, "users", "rate_bps", s.users.rate_bps);
}

}  // namespace

Scenario parse_scenario(const std::string& json_text, const std::string& base_dir) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("scenario: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("scenario: expected a JSON object");
    reject_unknown_keys(j, "scenario",
                        {"floor", "rooms", "vlc_aps", "wifi_aps", "receiver", "illumination",
                         "solar_profile", "users"});

    Scenario s = Scenario::reference();
    bool floor_given = false;
    if (const json* v = find(j, "floor")) {
        parse_floor(*v, s);
        floor_given = true;
    }
    if (const json* v = find(j, "rooms"))
        parse_rooms(*v, s, floor_given);
    else if (floor_given && (s.floor_w_m != 18.0 || s.floor_d_m != 18.0))
        throw ConfigError("rooms: the default reference layout needs an 18 x 18 m floor");
    if (const json* v = find(j, "vlc_aps")) parse_vlc(*v, s);
    if (const json* v = find(j, "wifi_aps")) parse_wifi(*v, s);
    if (const json* v = find(j, "receiver")) parse_receiver(*v, s);
    if (const json* v = find(j, "illumination")) parse_illumination(*v, s);
    if (const json* v = find(j, "solar_profile")) parse_solar(*v, s, base_dir);
    if (const json* v = find(j, "users")) parse_users(*v, s);

    s.validate();
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("scenario: cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    std::string dir;
    if (auto slash = path.find_last_of('/'); slash != std::string::npos)
        dir = path.substr(0, slash);
    return parse_scenario(buf.str(), dir);
}

std::array<double, 24> load_solar_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("solar csv: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("solar csv: empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "hour,rsun_wm2")
        throw ConfigError("solar csv: expected header 'hour,rsun_wm2', got '" + line + "'");

    std::array<double, 24> out{};
    int rows = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (rows >= 24) throw ConfigError("solar csv: more than 24 data rows");
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ConfigError("solar csv: malformed row '" + line + "'");
        try {
            size_t used = 0;
            int hour = std::stoi(line.substr(0, comma), &used);
            if (used != comma) throw std::invalid_argument("hour");
            double val = std::stod(line.substr(comma + 1), &used);
            if (used != line.size() - comma - 1) throw std::invalid_argument("value");
            if (hour != rows)
                throw ConfigError("solar csv: expected hour " + std::to_string(rows) +
                                  ", got " + std::to_string(hour));
            if (val < 0) throw ConfigError("solar csv: negative irradiance");
            out[static_cast<size_t>(hour)] = val;
        } catch (const std::invalid_argument&) {
            throw ConfigError("solar csv: malformed row '" + line + "'");
        } catch (const std::out_of_range&) {
            throw ConfigError("solar csv: malformed row '" + line + "'");
        }
        ++rows;
    }
    if (rows != 24) throw ConfigError("solar csv: expected 24 data rows, got " + std::to_string(rows));
    return out;
}

}  // namespace luxlink
