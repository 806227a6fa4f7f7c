#include "luxlink/sweep.hpp"

#include <bit>
#include <charconv>
#include <chrono>
#include <climits>
#include <cmath>
#include <limits>
#include <ostream>

#include "luxlink/errors.hpp"
#include "luxlink/instance.hpp"
#include "luxlink/rng.hpp"

namespace luxlink {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

bool is_online(RunScheme scheme) {
    return scheme == RunScheme::Online || scheme == RunScheme::OnlineVlc ||
           scheme == RunScheme::OnlineWifi;
}

Scheme radio_mask(RunScheme scheme) {
    switch (scheme) {
        case RunScheme::Vlc:
        case RunScheme::OnlineVlc:
            return Scheme::VlcOnly;
        case RunScheme::Wifi:
        case RunScheme::OnlineWifi:
            return Scheme::WifiOnly;
        default:
            return Scheme::Hybrid;
    }
}

// Shortest round-trip form, so equal doubles always print the same bytes.
std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

bool whole(double v) { return std::isfinite(v) && v == std::floor(v); }

void check_spec(const SweepSpec& spec) {
    if (spec.values.empty()) throw ConfigError("sweep: no values to sweep over");
    if (spec.schemes.empty()) throw ConfigError("sweep: no schemes selected");
    if (spec.runs < 1) throw ConfigError("sweep: runs must be at least 1");
    for (double v : spec.values) {
        switch (spec.kind) {
            case SweepKind::Throughput:
                if (!(v > 0)) throw ConfigError("sweep: rates must be positive Mbps");
                break;
            case SweepKind::NumUsers:
                if (!whole(v) || v < 0)
                    throw ConfigError("sweep: user counts must be whole and non-negative");
                break;
            case SweepKind::Hour:
                if (!whole(v) || v < 0 || v > 23) throw ConfigError("sweep: hours run 0..23");
                break;
        }
    }
    for (double e : spec.eta_ac)
        if (!(e > 0)) throw ConfigError("sweep: eta_ac values must be positive");
}

// Everything that can fail per row happens in here; the caller turns the
// typed exceptions into the row's error code.
void fill_row(const Scenario& base, const SweepSpec& spec, SweepRow& row) {
    Scenario sc = base;
    sc.vlc.eta_ac = row.eta_ac;
    double r_sun = spec.ambient_rsun_wm2;
    switch (spec.kind) {
        case SweepKind::Throughput:
            sc.users.rate_bps = row.sweep_value * 1e6;
            break;
        case SweepKind::NumUsers:
            sc.users.count = static_cast<int>(row.sweep_value);
            break;
        case SweepKind::Hour:
            r_sun = sc.rsun_at_hour(static_cast<int>(row.sweep_value));
            break;
    }
    sc.validate();

    ProblemInstance inst = build_instance(sc, r_sun, row.seed);
    LightingPlan lights = solve_lighting(inst);
    ProblemInstance restricted = restrict_to_scheme(inst, radio_mask(row.scheme));

    double marginal = 0;
    std::vector<uint8_t> on;
    if (is_online(row.scheme)) {
        OnlineSession session(restricted, lights.ap_on, row.seed);
        for (size_t u = 0; u < restricted.users.size(); ++u) session.arrive(static_cast<int>(u));
        marginal = session.real_power();
        on = session.aps_on();
        row.repairs = session.repair_count();
    } else {
        const SolveLimits limits;
        const bool exact =
            spec.solver == SolverMode::Exact ||
            (spec.solver == SolverMode::Auto &&
             static_cast<int>(inst.aps.size()) <= limits.max_exact_aps &&
             static_cast<int>(inst.users.size()) <= limits.max_exact_users);
        if (exact) {
            Assignment asg = solve_exact(restricted, limits);
            marginal = asg.power_watts - lights.power_watts;
            on = asg.ap_on;
        } else {
            Assignment asg = greedy_assignment(restricted, lights.ap_on);
            marginal = asg.power_watts;
            on = asg.ap_on;
        }
    }

    row.power_watts = spec.absolute_power ? marginal + lights.power_watts : marginal;
    for (size_t m = 0; m < on.size(); ++m) {
        if (!on[m]) continue;
        if (inst.aps[m].kind == ApKind::Vlc)
            ++row.aps_on_vlc;
        else
            ++row.aps_on_wifi;
    }
}

}  // namespace

std::string to_string(SweepKind kind) {
    switch (kind) {
        case SweepKind::Throughput: return "throughput";
        case SweepKind::NumUsers: return "num_users";
        case SweepKind::Hour: return "hour";
    }
    return "?";
}

std::string to_string(SolverMode mode) {
    switch (mode) {
        case SolverMode::Exact: return "exact";
        case SolverMode::Heuristic: return "heuristic";
        case SolverMode::Auto: return "auto";
    }
    return "?";
}

std::string to_string(RunScheme scheme) {
    switch (scheme) {
        case RunScheme::Hybrid: return "hybrid";
        case RunScheme::Vlc: return "vlc";
        case RunScheme::Wifi: return "wifi";
        case RunScheme::Online: return "online";
        case RunScheme::OnlineVlc: return "online_vlc";
        case RunScheme::OnlineWifi: return "online_wifi";
    }
    return "?";
}

SweepKind parse_sweep_kind(const std::string& name) {
    if (name == "throughput") return SweepKind::Throughput;
    if (name == "num_users") return SweepKind::NumUsers;
    if (name == "hour") return SweepKind::Hour;
    throw ConfigError("unknown sweep kind: " + name);
}

SolverMode parse_solver_mode(const std::string& name) {
    if (name == "exact") return SolverMode::Exact;
    if (name == "heuristic") return SolverMode::Heuristic;
    if (name == "auto") return SolverMode::Auto;
    throw ConfigError("unknown solver mode: " + name);
}

RunScheme parse_run_scheme(const std::string& name) {
    if (name == "hybrid") return RunScheme::Hybrid;
    if (name == "vlc") return RunScheme::Vlc;
    if (name == "wifi") return RunScheme::Wifi;
    if (name == "online") return RunScheme::Online;
    if (name == "online_vlc") return RunScheme::OnlineVlc;
    if (name == "online_wifi") return RunScheme::OnlineWifi;
    throw ConfigError("unknown scheme: " + name);
}

SweepResult run_sweep(const Scenario& base, const SweepSpec& spec) {
    check_spec(spec);
    const std::vector<double> etas =
        spec.eta_ac.empty() ? std::vector<double>{base.vlc.eta_ac} : spec.eta_ac;

    SweepResult result;
    for (RunScheme scheme : spec.schemes) {
        for (double eta : etas) {
            for (double value : spec.values) {
                for (int run = 0; run < spec.runs; ++run) {
                    SweepRow row;
                    row.scheme = scheme;
                    row.eta_ac = eta;
                    row.sweep_value = value;
                    row.run_index = run;
                    // One independent stream per row; every knob feeds the
                    // chain so no two rows can share draws.
                    row.seed = seed_mix(
                        seed_mix(seed_mix(seed_mix(spec.base_seed,
                                                   static_cast<uint64_t>(scheme)),
                                          std::bit_cast<uint64_t>(value)),
                                 std::bit_cast<uint64_t>(eta)),
                        static_cast<uint64_t>(run));

                    const auto start = std::chrono::steady_clock::now();
                    try {
                        fill_row(base, spec, row);
                    } catch (const ConfigError&) {
                        row.error_code = 2;
                    } catch (const InfeasibleError&) {
                        row.error_code = 3;
                    } catch (const SizeLimitError&) {
                        row.error_code = 4;
                    }
                    if (!row.ok()) {
                        row.power_watts = kNan;
                        row.aps_on_vlc = row.aps_on_wifi = 0;
                        row.repairs = 0;
                    }
                    if (spec.timing)
                        row.wall_time_ms =
                            std::chrono::duration<double, std::milli>(
                                std::chrono::steady_clock::now() - start)
                                .count();
                    result.rows.push_back(std::move(row));
                }
            }
        }
    }
    return result;
}

void write_csv(const SweepResult& result, std::ostream& out) {
    out << "scheme,eta_ac,sweep_value,run_index,seed,power_watts,aps_on_vlc,"
           "aps_on_wifi,feasible,repairs,wall_time_ms\n";
    for (const SweepRow& row : result.rows) {
        out << to_string(row.scheme) << ',' << format_double(row.eta_ac) << ','
            << format_double(row.sweep_value) << ',' << row.run_index << ',' << row.seed << ','
            << format_double(row.power_watts) << ',' << row.aps_on_vlc << ',' << row.aps_on_wifi
            << ',';
        if (row.ok())
            out << '1';
        else
            out << "0:E" << row.error_code;
        out << ',' << row.repairs << ',' << format_double(row.wall_time_ms) << '\n';
    }
}

std::vector<LowerBoundRow> run_lower_bound(const std::vector<int>& ap_counts,
                                           double standby_watts, int trials,
                                           uint64_t base_seed) {
    if (ap_counts.empty()) throw ConfigError("lower bound: no AP counts given");
    if (trials < 1) throw ConfigError("lower bound: trials must be at least 1");

    std::vector<LowerBoundRow> rows;
    for (int m_count : ap_counts) {
        ProblemInstance inst = lower_bound_instance(m_count, standby_watts);
        const int n = static_cast<int>(inst.users.size());

        // Links are free, so offline optimality is plain unweighted set
        // cover over the users; small universe, exact DP.
        const uint32_t full = (uint32_t{1} << n) - 1;
        std::vector<uint32_t> cover(static_cast<size_t>(m_count), 0);
        for (int m = 0; m < m_count; ++m)
            for (int u = 0; u < n; ++u)
                if (inst.cost[static_cast<size_t>(m)][static_cast<size_t>(u)] == 0)
                    cover[static_cast<size_t>(m)] |= uint32_t{1} << u;
        std::vector<int> dp(full + 1, INT_MAX);
        dp[0] = 0;
        for (uint32_t mask = 0; mask <= full; ++mask) {
            if (dp[mask] == INT_MAX) continue;
            for (int m = 0; m < m_count; ++m) {
                const uint32_t next = mask | cover[static_cast<size_t>(m)];
                dp[next] = std::min(dp[next], dp[mask] + 1);
            }
        }
        if (dp[full] == INT_MAX)
            throw InfeasibleError("lower bound: some user has no covering AP");

        LowerBoundRow row;
        row.ap_count = m_count;
        row.offline_watts = dp[full] * standby_watts;

        double sum = 0, sum_sq = 0;
        for (int t = 0; t < trials; ++t) {
            const uint64_t seed =
                seed_mix(seed_mix(base_seed, static_cast<uint64_t>(m_count)),
                         static_cast<uint64_t>(t));
            OnlineSession session(inst, {}, seed);
            for (int u = 0; u < n; ++u) session.arrive(u);
            const double cost = session.real_power();
            sum += cost;
            sum_sq += cost * cost;
        }
        row.online_mean_watts = sum / trials;
        if (trials > 1) {
            const double var =
                std::max(0.0, (sum_sq - sum * sum / trials) / (trials - 1));
            row.online_stderr_watts = std::sqrt(var / trials);
        }
        row.ratio = row.online_mean_watts / row.offline_watts;
        rows.push_back(row);
    }
    return rows;
}

void write_csv(const std::vector<LowerBoundRow>& rows, std::ostream& out) {
    out << "ap_count,offline_watts,online_mean_watts,online_stderr_watts,ratio\n";
    for (const LowerBoundRow& row : rows)
        out << row.ap_count << ',' << format_double(row.offline_watts) << ','
            << format_double(row.online_mean_watts) << ','
            << format_double(row.online_stderr_watts) << ',' << format_double(row.ratio)
            << '\n';
}

VerifyOutcome verify_run(const Scenario& scenario, double r_sun_wm2, uint64_t seed) {
    scenario.validate();
    ProblemInstance inst = build_instance(scenario, r_sun_wm2, seed);
    LightingPlan lights = solve_lighting(inst);

    OnlineSession session(inst, lights.ap_on, seed);
    for (size_t u = 0; u < inst.users.size(); ++u) session.arrive(static_cast<int>(u));

    ProblemInstance relaxed = inst;
    for (AccessPoint& ap : relaxed.aps) ap.p_max_watts = kInf;
    Assignment reference = solve_association(relaxed, lights.ap_on);

    VerifyOutcome out;
    out.report = verify_potential(session, reference);
    out.repairs = session.repair_count();
    out.online_watts = session.real_power();
    out.reference_watts = reference.power_watts;
    out.all_served = true;
    for (size_t u = 0; u < inst.users.size(); ++u)
        out.all_served = out.all_served && session.served_by_rounding(static_cast<int>(u));
    if (out.reference_watts > 0)
        out.ratio = out.online_watts / out.reference_watts;
    else
        out.ratio = out.online_watts > 0 ? kInf : 1.0;
    return out;
}

}  // namespace luxlink
