#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "luxlink/linkmodel.hpp"

// Deployment description: the floor geometry, the lighting and radio
// hardware, the daylight profile and the user population. A Scenario is pure
// configuration; expanding it into radios, sample points and link costs is
// the instance builder's job.

namespace luxlink {

enum class RoomKind { Internal, External, Corridor, Stairway };

struct Room {
    int id = -1;
    RoomKind kind = RoomKind::External;
    double min_x = 0, min_y = 0;
    double size_x = 0, size_y = 0;
    double daylight_factor_pct = 0;  // flat per-room daylight factor

    bool lit() const { return kind == RoomKind::Internal || kind == RoomKind::External; }
};

struct VlcConfig {
    double p_on_watts = 15.0;
    double semi_angle_deg = 30.0;
    // Table value 150 lm/W. The "electrical" basis divides by eta_dc when
    // building emitters, since the luminaire flux model works per optical watt.
    double efficacy_lm_per_w = 150.0;
    std::string efficacy_basis = "electrical";  // "electrical" | "optical"
    double eta_dc = 0.1;
    double eta_ac = 0.06;
    double bandwidth_hz = 1e8;
    int aps_per_fixture = 4;
};

struct WifiConfig {
    double p_on_watts = 10.0;
    double p_max_watts = 14.0;
    double bandwidth_per_user_hz = 2e6;
    double wavelength_m = 0.125;  // 2.4 GHz carrier
    double floor_attenuation_db = -30.0;
    double noise_floor_w = 1e-12;  // -90 dBm
    double eta = 0.1;
    std::vector<Vec3> positions;  // empty: the four floor corners at access_height_m
    double access_height_m = 12.0;
};

struct IlluminationConfig {
    double target_lux = 300.0;
    int grid_points_per_side = 3;
    // Optional linear daylight gradient across external rooms, from the
    // outward-facing wall to the innermost wall. Unset: flat per-room factor.
    std::optional<double> df_near_window_pct;
    std::optional<double> df_far_wall_pct;
};

struct UsersConfig {
    int count = 100;
    double rate_bps = 6e6;
};

struct Scenario {
    double floor_w_m = 18.0, floor_d_m = 18.0, floor_h_m = 3.0;
    double desk_height_m = 0.85;
    std::vector<Room> rooms;
    VlcConfig vlc;
    WifiConfig wifi;
    VlcReceiver receiver;
    IlluminationConfig illumination;
    UsersConfig users;
    std::array<double, 24> solar_hourly_wm2{};  // daylight irradiance per hour

    // The evaluation floor: 6x6 cells of 3 m. Stairways in the corners,
    // a 2x2 block of internal rooms in the middle, 16 window rooms along the
    // perimeter and a corridor ring between them. 20 lit rooms, 80 optical
    // APs, one RF AP per floor corner three floors up.
    static Scenario reference();

    // Small all-window office strip, handy for exact-solver-sized setups.
    static Scenario office_grid(int cells_x, int cells_y, int wifi_count = 4,
                                double wifi_height_m = 12.0);

    double rsun_at_hour(int hour) const;

    // Hardware expansion, deterministic order: rooms by id, four emitters per
    // lit room aimed at the quadrant centers of the desk plane.
    std::vector<VlcApRadio> vlc_radios() const;
    std::vector<WifiAp> wifi_aps() const;
    // Cell-centered illumination grid over every lit room's desk plane.
    std::vector<SamplePoint> sample_grid() const;

    void validate() const;  // throws ConfigError
};

// JSON front end. Unknown keys anywhere are a hard error so typos cannot
// silently fall back to defaults. Missing sections take the reference-floor defaults.
Scenario parse_scenario(const std::string& json_text, const std::string& base_dir = "");
Scenario load_scenario(const std::string& path);

// Hourly solar profile in "hour,rsun_wm2" form, exactly 24 data rows.
std::array<double, 24> load_solar_csv(const std::string& path);

std::string to_string(RoomKind kind);

}  // namespace luxlink
