#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "luxlink/offline_solver.hpp"
#include "luxlink/online_mcc.hpp"
#include "luxlink/scenario.hpp"

// Batch evaluation over a scenario: sweep one knob (per-user rate, user
// count, or hour of day) across a grid of schemes and AC efficiencies, and
// emit one CSV row per run. Rows are generated in a fixed nested order and
// every random draw is derived from the request's base seed, so the same
// request always produces the same bytes.

namespace luxlink {

enum class SweepKind { Throughput, NumUsers, Hour };
enum class SolverMode { Exact, Heuristic, Auto };

// What serves the traffic in a row. The offline schemes get the full solver
// treatment; the online ones replay the arrival sequence through the
// admission controller, optionally with one radio technology masked out.
enum class RunScheme { Hybrid, Vlc, Wifi, Online, OnlineVlc, OnlineWifi };

std::string to_string(SweepKind kind);
std::string to_string(SolverMode mode);
std::string to_string(RunScheme scheme);
SweepKind parse_sweep_kind(const std::string& name);    // throws ConfigError
SolverMode parse_solver_mode(const std::string& name);  // throws ConfigError
RunScheme parse_run_scheme(const std::string& name);    // throws ConfigError

struct SweepSpec {
    SweepKind kind = SweepKind::Throughput;
    // Interpreted per kind: Mbps per user, user head count, or hour 0..23.
    std::vector<double> values;
    std::vector<RunScheme> schemes = {RunScheme::Hybrid, RunScheme::Vlc, RunScheme::Wifi,
                                      RunScheme::Online};
    std::vector<double> eta_ac;  // empty: keep the scenario's value
    int runs = 1;                // seeded repetitions per grid cell
    uint64_t base_seed = 1;
    SolverMode solver = SolverMode::Auto;

    // Daylight for Throughput and NumUsers sweeps (Hour brings its own).
    double ambient_rsun_wm2 = 0;

    // Rows report power beyond the lighting minimum by default, so schemes
    // are compared on what the traffic actually costs. Absolute adds the
    // lighting bill back in.
    bool absolute_power = false;

    // Fill wall_time_ms with measured times. Off by default: timestamps vary
    // run to run and would break byte-for-byte reproducibility.
    bool timing = false;
};

struct SweepRow {
    RunScheme scheme = RunScheme::Hybrid;
    double eta_ac = 0;
    double sweep_value = 0;
    int run_index = 0;
    uint64_t seed = 0;
    double power_watts = 0;
    int aps_on_vlc = 0;
    int aps_on_wifi = 0;
    int error_code = 0;  // 0 fine, else the matching CLI exit code 2/3/4
    int repairs = 0;
    double wall_time_ms = 0;

    bool ok() const { return error_code == 0; }
};

struct SweepResult {
    std::vector<SweepRow> rows;
};

// Runs the whole grid. Throws ConfigError on a malformed spec; per-row solver
// failures land in the row's error_code instead of aborting the sweep.
SweepResult run_sweep(const Scenario& base, const SweepSpec& spec);

// Fixed column order:
//   scheme,eta_ac,sweep_value,run_index,seed,power_watts,aps_on_vlc,
//   aps_on_wifi,feasible,repairs,wall_time_ms
// feasible is "1", or "0:E<code>" for failed rows (whose power is nan).
// Doubles print in shortest round-trip form.
void write_csv(const SweepResult& result, std::ostream& out);

struct LowerBoundRow {
    int ap_count = 0;
    double offline_watts = 0;      // exact set-cover optimum, free links
    double online_mean_watts = 0;  // over the seeded trials
    double online_stderr_watts = 0;
    double ratio = 0;  // mean online over offline
};

// Measures the online controller against the worst-case halving family:
// ap_count APs at standby_watts each, user n reachable by the first
// ap_count >> n of them at zero link cost. Offline one AP suffices; the
// online mean is expected to grow with log(ap_count).
std::vector<LowerBoundRow> run_lower_bound(const std::vector<int>& ap_counts,
                                           double standby_watts, int trials,
                                           uint64_t base_seed);

// Columns: ap_count,offline_watts,online_mean_watts,online_stderr_watts,ratio
void write_csv(const std::vector<LowerBoundRow>& rows, std::ostream& out);

struct VerifyOutcome {
    PotentialReport report;
    bool all_served = false;  // every user rounded-in, repairs included
    int repairs = 0;
    double online_watts = 0;
    double reference_watts = 0;  // association optimum, load caps dropped
    double ratio = 0;

    bool passed() const { return report.passed() && all_served; }
};

// Single diagnostic run: lighting plan, then every user through the online
// controller, then the potential audit against the offline reference on the
// same forced set. The reference solve is exact, so scenario sizes are bound
// by the association solver's limits.
VerifyOutcome verify_run(const Scenario& scenario, double r_sun_wm2, uint64_t seed);

}  // namespace luxlink
