// Command line front end. Subcommands:
//   solve            one scenario, one scheme, one seed
//   sweep            grid evaluation to CSV (stdout or --out)
//   lowerbound       online controller vs the worst-case halving family
//   verify           online run plus the potential-function audit
//   validate-config  parse and validate a scenario file
//
// Exit codes: 0 fine, 2 bad configuration or usage, 3 infeasible,
// 4 instance too large for the exact solver.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "luxlink/errors.hpp"
#include "luxlink/instance.hpp"
#include "luxlink/offline_solver.hpp"
#include "luxlink/online_mcc.hpp"
#include "luxlink/scenario.hpp"
#include "luxlink/sweep.hpp"

using namespace luxlink;

namespace {

Scenario load_base(const std::string& path) {
    if (path.empty() || path == "reference") return Scenario::reference();
    return load_scenario(path);
}

// --hour wins over --rsun when both make sense; the default is night.
double ambient_of(const Scenario& sc, double rsun, int hour) {
    return hour >= 0 ? sc.rsun_at_hour(hour) : rsun;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + path);
    return out;
}

struct SolveArgs {
    std::string scenario, scheme = "hybrid", solver = "auto", trace_path;
    double rsun = 0;
    int hour = -1;
    uint64_t seed = 1;
    bool absolute = false;
};

int run_solve(const SolveArgs& args) {
    const Scenario sc = load_base(args.scenario);
    sc.validate();
    const RunScheme scheme = parse_run_scheme(args.scheme);
    const SolverMode mode = parse_solver_mode(args.solver);
    const double r_sun = ambient_of(sc, args.rsun, args.hour);

    ProblemInstance inst = build_instance(sc, r_sun, args.seed);
    LightingPlan lights = solve_lighting(inst);

    Scheme mask = Scheme::Hybrid;
    if (scheme == RunScheme::Vlc || scheme == RunScheme::OnlineVlc) mask = Scheme::VlcOnly;
    if (scheme == RunScheme::Wifi || scheme == RunScheme::OnlineWifi) mask = Scheme::WifiOnly;
    ProblemInstance restricted = restrict_to_scheme(inst, mask);

    double marginal = 0;
    std::vector<uint8_t> on;
    int repairs = 0;
    const bool online = scheme == RunScheme::Online || scheme == RunScheme::OnlineVlc ||
                        scheme == RunScheme::OnlineWifi;
    if (online) {
        OnlineSession session(restricted, lights.ap_on, args.seed);
        for (size_t u = 0; u < restricted.users.size(); ++u) session.arrive(static_cast<int>(u));
        marginal = session.real_power();
        on = session.aps_on();
        repairs = session.repair_count();
        if (!args.trace_path.empty()) {
            std::ofstream trace = open_out(args.trace_path);
            session.write_trace_jsonl(trace);
        }
    } else {
        const SolveLimits limits;
        const bool exact = mode == SolverMode::Exact ||
                           (mode == SolverMode::Auto &&
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

    int vlc_on = 0, wifi_on = 0;
    for (size_t m = 0; m < on.size(); ++m) {
        if (!on[m]) continue;
        if (inst.aps[m].kind == ApKind::Vlc)
            ++vlc_on;
        else
            ++wifi_on;
    }

    std::cout << "scheme " << to_string(scheme) << '\n'
              << "ambient_rsun_wm2 " << r_sun << '\n'
              << "users " << inst.users.size() << '\n'
              << "lighting_watts " << lights.power_watts << '\n'
              << "power_watts " << (args.absolute ? marginal + lights.power_watts : marginal)
              << '\n'
              << "aps_on_vlc " << vlc_on << '\n'
              << "aps_on_wifi " << wifi_on << '\n'
              << "repairs " << repairs << '\n';
    return 0;
}

struct SweepArgs {
    std::string scenario, sweep = "throughput", solver = "auto", out_path;
    std::vector<std::string> schemes = {"hybrid", "vlc", "wifi", "online"};
    std::vector<double> values, eta_ac;
    int runs = 1;
    int hour = -1;
    double rsun = 0;
    uint64_t seed = 1;
    bool absolute = false, timing = false;
};

int run_sweep_cmd(const SweepArgs& args) {
    const Scenario sc = load_base(args.scenario);

    SweepSpec spec;
    spec.kind = parse_sweep_kind(args.sweep);
    spec.values = args.values;
    spec.schemes.clear();
    for (const std::string& name : args.schemes) spec.schemes.push_back(parse_run_scheme(name));
    spec.eta_ac = args.eta_ac;
    spec.runs = args.runs;
    spec.base_seed = args.seed;
    spec.solver = parse_solver_mode(args.solver);
    spec.ambient_rsun_wm2 = ambient_of(sc, args.rsun, args.hour);
    spec.absolute_power = args.absolute;
    spec.timing = args.timing;

    SweepResult result = run_sweep(sc, spec);
    if (args.out_path.empty()) {
        write_csv(result, std::cout);
    } else {
        std::ofstream out = open_out(args.out_path);
        write_csv(result, out);
    }
    return 0;
}

struct LowerBoundArgs {
    std::vector<double> values = {4, 16, 64};
    double standby = 1.0;
    int runs = 100;
    uint64_t seed = 1;
    std::string out_path;
};

int run_lowerbound_cmd(const LowerBoundArgs& args) {
    std::vector<int> counts;
    for (double v : args.values) {
        if (v < 2 || v != static_cast<int>(v))
            throw ConfigError("lowerbound: AP counts must be whole numbers of at least 2");
        counts.push_back(static_cast<int>(v));
    }
    std::vector<LowerBoundRow> rows = run_lower_bound(counts, args.standby, args.runs, args.seed);
    if (args.out_path.empty()) {
        write_csv(rows, std::cout);
    } else {
        std::ofstream out = open_out(args.out_path);
        write_csv(rows, out);
    }
    return 0;
}

struct VerifyArgs {
    std::string scenario;
    double rsun = 0;
    int hour = -1;
    uint64_t seed = 1;
};

int run_verify(const VerifyArgs& args) {
    const Scenario sc = load_base(args.scenario);
    const double r_sun = ambient_of(sc, args.rsun, args.hour);
    VerifyOutcome outcome = verify_run(sc, r_sun, args.seed);

    const PotentialReport& rep = outcome.report;
    std::cout << "alpha_final " << rep.alpha_final << '\n'
              << "alpha_hat " << rep.alpha_hat << '\n'
              << "augmentations_final_epoch " << rep.augmentations_final_epoch << '\n'
              << "count_budget " << rep.count_budget << '\n'
              << "min_delta_beta " << rep.min_delta_beta << '\n'
              << "max_cost_increase " << rep.max_cost_increase << '\n'
              << "delta_beta_violations " << rep.delta_beta_violations << '\n'
              << "cost_increase_violations " << rep.cost_increase_violations << '\n'
              << "count_ok " << (rep.count_ok ? 1 : 0) << '\n'
              << "all_served " << (outcome.all_served ? 1 : 0) << '\n'
              << "repairs " << outcome.repairs << '\n'
              << "online_watts " << outcome.online_watts << '\n'
              << "reference_watts " << outcome.reference_watts << '\n'
              << "ratio " << outcome.ratio << '\n'
              << "result " << (outcome.passed() ? "PASS" : "FAIL") << '\n';
    return outcome.passed() ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"power minimization toolkit for hybrid RF/VLC indoor access networks"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    CLI::App* solve = app.add_subcommand("solve", "solve one scenario end to end");
    solve->add_option("--scenario", solve_args.scenario, "scenario JSON path, or 'reference'");
    solve->add_option("--scheme", solve_args.scheme,
                      "hybrid|vlc|wifi|online|online_vlc|online_wifi");
    solve->add_option("--solver", solve_args.solver, "exact|heuristic|auto");
    solve->add_option("--rsun", solve_args.rsun, "ambient solar irradiance, W/m^2");
    solve->add_option("--hour", solve_args.hour, "hour of day 0..23, overrides --rsun")
        ->check(CLI::Range(0, 23));
    solve->add_option("--seed", solve_args.seed, "RNG seed");
    solve->add_option("--trace", solve_args.trace_path, "JSONL event trace (online schemes)");
    solve->add_flag("--absolute", solve_args.absolute, "include the lighting bill");

    SweepArgs sweep_args;
    CLI::App* sweep = app.add_subcommand("sweep", "evaluate a grid and emit CSV");
    sweep->add_option("--scenario", sweep_args.scenario, "scenario JSON path, or 'reference'");
    sweep->add_option("--sweep", sweep_args.sweep, "throughput|num_users|hour");
    sweep->add_option("--values", sweep_args.values, "swept values, comma separated")
        ->required()
        ->delimiter(',');
    sweep->add_option("--scheme", sweep_args.schemes, "schemes to run, comma separated")
        ->delimiter(',');
    sweep->add_option("--eta-ac", sweep_args.eta_ac, "AC efficiency values, comma separated")
        ->delimiter(',');
    sweep->add_option("--runs", sweep_args.runs, "seeded repetitions per cell");
    sweep->add_option("--seed", sweep_args.seed, "base seed");
    sweep->add_option("--solver", sweep_args.solver, "exact|heuristic|auto");
    sweep->add_option("--rsun", sweep_args.rsun, "ambient irradiance for non-hour sweeps");
    sweep->add_option("--hour", sweep_args.hour, "ambient hour for non-hour sweeps")
        ->check(CLI::Range(0, 23));
    sweep->add_option("--out", sweep_args.out_path, "CSV output path (default stdout)");
    sweep->add_flag("--absolute", sweep_args.absolute, "include the lighting bill");
    sweep->add_flag("--timing", sweep_args.timing,
                    "measure wall_time_ms (breaks byte-for-byte reproducibility)");

    LowerBoundArgs lb_args;
    CLI::App* lowerbound =
        app.add_subcommand("lowerbound", "online controller vs the halving family");
    lowerbound->add_option("--values", lb_args.values, "AP counts, powers of two")
        ->delimiter(',');
    lowerbound->add_option("--standby", lb_args.standby, "per-AP standby watts");
    lowerbound->add_option("--runs", lb_args.runs, "trials per AP count");
    lowerbound->add_option("--seed", lb_args.seed, "base seed");
    lowerbound->add_option("--out", lb_args.out_path, "CSV output path (default stdout)");

    VerifyArgs verify_args;
    CLI::App* verify = app.add_subcommand("verify", "audit one online run");
    verify->add_option("--scenario", verify_args.scenario, "scenario JSON path, or 'reference'");
    verify->add_option("--rsun", verify_args.rsun, "ambient solar irradiance, W/m^2");
    verify->add_option("--hour", verify_args.hour, "hour of day 0..23, overrides --rsun")
        ->check(CLI::Range(0, 23));
    verify->add_option("--seed", verify_args.seed, "RNG seed");

    std::string validate_path;
    CLI::App* validate = app.add_subcommand("validate-config", "check a scenario file");
    validate->add_option("--scenario", validate_path, "scenario JSON path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // usage problems are configuration problems
    }

    try {
        if (solve->parsed()) return run_solve(solve_args);
        if (sweep->parsed()) return run_sweep_cmd(sweep_args);
        if (lowerbound->parsed()) return run_lowerbound_cmd(lb_args);
        if (verify->parsed()) return run_verify(verify_args);
        if (validate->parsed()) {
            load_scenario(validate_path).validate();
            std::cout << "ok\n";
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const InfeasibleError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const SizeLimitError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
