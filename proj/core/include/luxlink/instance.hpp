#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "luxlink/scenario.hpp"

// A ProblemInstance is the solver-facing view of one deployment snapshot:
// every candidate AP with its standby power and load budget, every user with
// the additive power each AP would pay to serve them, and the residual
// illumination each sample point still needs after daylight. All the
// photometry and link physics happen while building it; the solvers only ever
// see the resulting numbers.

namespace luxlink {

enum class ApKind { Vlc, Wifi };
enum class Scheme { Hybrid, VlcOnly, WifiOnly };

std::string to_string(ApKind kind);
std::string to_string(Scheme scheme);
Scheme parse_scheme(const std::string& name);  // throws ConfigError

struct AccessPoint {
    int id = -1;
    ApKind kind = ApKind::Wifi;
    double p_on_watts = 0;   // standby draw while switched on
    double p_max_watts = 0;  // ceiling on the summed serving power
    int room_id = -1;        // -1 when coverage is not room-bound
};

struct UserTerminal {
    int id = -1;
    Vec3 position;
    double rate_bps = 0;
    int room_id = -1;
};

struct IllumPoint {
    Vec3 position;
    int room_id = -1;
    double required_lux = 0;  // residual after subtracting daylight
};

struct ProblemInstance {
    std::vector<AccessPoint> aps;
    std::vector<UserTerminal> users;
    std::vector<IllumPoint> points;

    // cost[m][n]: watts AP m adds to serve user n, +infinity when there is
    // no usable link. illum_gain[m][w]: lux AP m contributes at point w while
    // on (zero for RF APs and across room boundaries).
    std::vector<std::vector<double>> cost;
    std::vector<std::vector<double>> illum_gain;

    // Users with no finite-cost AP at all; no assignment can serve them.
    std::vector<int> unservable_users() const;
};

// Expands a scenario at a given solar irradiance. User positions are drawn
// area-uniformly over the lit rooms from a single deterministic stream, so
// equal seeds give bit-identical instances.
ProblemInstance build_instance(const Scenario& scenario, double r_sun_wm2, uint64_t seed);

// Classic capacitated facility location dressed up as an instance: opening
// costs become standby power, service costs become link power. No
// illumination side, so the optimizer reduces to the textbook problem.
ProblemInstance from_facility_location(const std::vector<double>& opening_costs,
                                       const std::vector<double>& capacities,
                                       const std::vector<std::vector<double>>& service_costs);

// Worst-case family for the online algorithm: num_aps must be a power of
// two, user n reaches the first num_aps >> n APs free of charge, and every
// AP costs standby_watts to switch on. Offline, one AP covers everyone.
ProblemInstance lower_bound_instance(int num_aps, double standby_watts);

// Copy with the serving costs of out-of-scheme APs masked to +infinity.
// Illumination columns are kept: lights answer to the lux target no matter
// which radio scheme is being scored.
ProblemInstance restrict_to_scheme(const ProblemInstance& inst, Scheme scheme);

}  // namespace luxlink
