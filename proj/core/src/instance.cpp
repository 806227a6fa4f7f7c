#include "luxlink/instance.hpp"

#include <bit>
#include <limits>

#include "luxlink/errors.hpp"
#include "luxlink/photometry.hpp"
#include "luxlink/rng.hpp"

namespace luxlink {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::string to_string(ApKind kind) { return kind == ApKind::Vlc ? "vlc" : "wifi"; }

std::string to_string(Scheme scheme) {
    switch (scheme) {
        case Scheme::Hybrid: return "hybrid";
        case Scheme::VlcOnly: return "vlc";
        case Scheme::WifiOnly: return "wifi";
    }
    return "?";
}

Scheme parse_scheme(const std::string& name) {
    if (name == "hybrid") return Scheme::Hybrid;
    if (name == "vlc") return Scheme::VlcOnly;
    if (name == "wifi") return Scheme::WifiOnly;
    throw ConfigError("scheme: expected 'hybrid', 'vlc' or 'wifi', got '" + name + "'");
}

std::vector<int> ProblemInstance::unservable_users() const {
    std::vector<int> out;
    for (size_t n = 0; n < users.size(); ++n) {
        bool reachable = false;
        for (size_t m = 0; m < aps.size() && !reachable; ++m)
            reachable = cost[m][n] < kInf;
        if (!reachable) out.push_back(static_cast<int>(n));
    }
    return out;
}

ProblemInstance build_instance(const Scenario& scenario, double r_sun_wm2, uint64_t seed) {
    scenario.validate();
    if (r_sun_wm2 < 0) throw ConfigError("r_sun_wm2: must be non-negative");

    ProblemInstance inst;
    std::vector<VlcApRadio> radios = scenario.vlc_radios();
    std::vector<WifiAp> rf = scenario.wifi_aps();

    for (const VlcApRadio& radio : radios) {
        AccessPoint ap;
        ap.id = static_cast<int>(inst.aps.size());
        ap.kind = ApKind::Vlc;
        ap.p_on_watts = radio.emitter.p_on_watts;
        // serving budget is the headroom above the standby draw, so that the
        // load cap and the unit TDM duty-cycle budget are the same constraint
        ap.p_max_watts = vlc_max_total_power(radio) - radio.emitter.p_on_watts;
        ap.room_id = radio.emitter.room_id;
        inst.aps.push_back(ap);
    }
    for (const WifiAp& wap : rf) {
        AccessPoint ap;
        ap.id = static_cast<int>(inst.aps.size());
        ap.kind = ApKind::Wifi;
        ap.p_on_watts = wap.p_on_watts;
        ap.p_max_watts = wap.p_max_watts;
        inst.aps.push_back(ap);
    }

    // Area-weighted room choice, then a uniform point in the room. Exactly
    // three draws per user keeps the stream layout stable when the user
    // count changes.
    std::vector<const Room*> lit;
    double total_area = 0;
    for (const Room& r : scenario.rooms)
        if (r.lit()) {
            lit.push_back(&r);
            total_area += r.size_x * r.size_y;
        }
    SplitMix64 rng{seed};
    for (int n = 0; n < scenario.users.count; ++n) {
        double pick = rng.uniform01() * total_area;
        const Room* room = lit.back();
        for (const Room* r : lit) {
            pick -= r->size_x * r->size_y;
            if (pick < 0) {
                room = r;
                break;
            }
        }
        UserTerminal user;
        user.id = n;
        user.position = {rng.uniform(room->min_x, room->min_x + room->size_x),
                         rng.uniform(room->min_y, room->min_y + room->size_y),
                         scenario.desk_height_m};
        user.rate_bps = scenario.users.rate_bps;
        user.room_id = room->id;
        inst.users.push_back(user);
    }

    std::vector<SamplePoint> grid = scenario.sample_grid();
    for (const SamplePoint& sp : grid) {
        IllumPoint pt;
        pt.position = sp.position;
        pt.room_id = sp.room_id;
        double ambient = ambient_illuminance(sp.daylight_factor_pct, r_sun_wm2);
        pt.required_lux = residual_requirement(scenario.illumination.target_lux, ambient);
        inst.points.push_back(pt);
    }

    size_t m_count = inst.aps.size();
    inst.cost.assign(m_count, std::vector<double>(inst.users.size(), kInf));
    inst.illum_gain.assign(m_count, std::vector<double>(inst.points.size(), 0.0));
    for (size_t m = 0; m < radios.size(); ++m) {
        const VlcApRadio& radio = radios[m];
        for (size_t n = 0; n < inst.users.size(); ++n) {
            if (inst.users[n].room_id != radio.emitter.room_id) continue;  // walls are opaque
            inst.cost[m][n] = vlc_additive_power(radio, scenario.receiver,
                                                 inst.users[n].position,
                                                 inst.users[n].rate_bps);
        }
        for (size_t w = 0; w < inst.points.size(); ++w) {
            if (inst.points[w].room_id != radio.emitter.room_id) continue;
            inst.illum_gain[m][w] = illuminance_from(radio.emitter, inst.points[w].position);
        }
    }
    for (size_t i = 0; i < rf.size(); ++i) {
        size_t m = radios.size() + i;
        for (size_t n = 0; n < inst.users.size(); ++n)
            inst.cost[m][n] = wifi_additive_power(inst.users[n].rate_bps, rf[i],
                                                  inst.users[n].position);
    }
    return inst;
}

ProblemInstance from_facility_location(const std::vector<double>& opening_costs,
                                       const std::vector<double>& capacities,
                                       const std::vector<std::vector<double>>& service_costs) {
    size_t m_count = opening_costs.size();
    if (capacities.size() != m_count || service_costs.size() != m_count)
        throw ConfigError("facility location: opening, capacity and service shapes disagree");
    size_t n_count = m_count ? service_costs[0].size() : 0;

    ProblemInstance inst;
    for (size_t m = 0; m < m_count; ++m) {
        if (service_costs[m].size() != n_count)
            throw ConfigError("facility location: ragged service cost matrix");
        AccessPoint ap;
        ap.id = static_cast<int>(m);
        ap.kind = ApKind::Wifi;
        ap.p_on_watts = opening_costs[m];
        ap.p_max_watts = capacities[m];
        inst.aps.push_back(ap);
    }
    for (size_t n = 0; n < n_count; ++n) {
        UserTerminal user;
        user.id = static_cast<int>(n);
        inst.users.push_back(user);
    }
    inst.cost = service_costs;
    inst.illum_gain.assign(m_count, std::vector<double>(0));
    return inst;
}

ProblemInstance lower_bound_instance(int num_aps, double standby_watts) {
    if (num_aps < 2 || !std::has_single_bit(static_cast<unsigned>(num_aps)))
        throw ConfigError("lower bound: AP count must be a power of two, at least 2");
    if (!(standby_watts > 0)) throw ConfigError("lower bound: standby power must be positive");

    int n_count = std::countr_zero(static_cast<unsigned>(num_aps));
    ProblemInstance inst;
    for (int m = 0; m < num_aps; ++m) {
        AccessPoint ap;
        ap.id = m;
        ap.kind = ApKind::Wifi;
        ap.p_on_watts = standby_watts;
        ap.p_max_watts = kInf;
        inst.aps.push_back(ap);
    }
    for (int n = 0; n < n_count; ++n) {
        UserTerminal user;
        user.id = n;
        inst.users.push_back(user);
    }
    inst.cost.assign(static_cast<size_t>(num_aps), std::vector<double>(n_count, kInf));
    for (int n = 0; n < n_count; ++n)
        for (int m = 0; m < (num_aps >> n); ++m)
            inst.cost[static_cast<size_t>(m)][static_cast<size_t>(n)] = 0.0;
    inst.illum_gain.assign(static_cast<size_t>(num_aps), std::vector<double>(0));
    return inst;
}

ProblemInstance restrict_to_scheme(const ProblemInstance& inst, Scheme scheme) {
    ProblemInstance out = inst;
    if (scheme == Scheme::Hybrid) return out;
    ApKind banned = scheme == Scheme::VlcOnly ? ApKind::Wifi : ApKind::Vlc;
    for (size_t m = 0; m < out.aps.size(); ++m)
        if (out.aps[m].kind == banned)
            for (double& c : out.cost[m]) c = kInf;
    return out;
}

}  // namespace luxlink
