#include <benchmark/benchmark.h>

#include "luxlink/instance.hpp"
#include "luxlink/maxflow.hpp"
#include "luxlink/offline_solver.hpp"
#include "luxlink/online_mcc.hpp"
#include "luxlink/scenario.hpp"

using namespace luxlink;

namespace {

ProblemInstance desk_instance(double r_sun) {
    Scenario sc = Scenario::office_grid(2, 1, 4);
    sc.users.count = 20;
    return build_instance(sc, r_sun, 7);
}

void BM_build_instance_reference(benchmark::State& state) {
    const Scenario sc = Scenario::reference();
    for (auto _ : state) {
        ProblemInstance inst = build_instance(sc, 110.0, 7);
        benchmark::DoNotOptimize(inst.cost.data());
    }
}
BENCHMARK(BM_build_instance_reference);

void BM_solve_lighting_reference(benchmark::State& state) {
    const ProblemInstance inst = build_instance(Scenario::reference(), 0.0, 7);
    for (auto _ : state) benchmark::DoNotOptimize(solve_lighting(inst).power_watts);
}
BENCHMARK(BM_solve_lighting_reference);

void BM_solve_exact_desk_day(benchmark::State& state) {
    const ProblemInstance inst = desk_instance(110.0);
    for (auto _ : state) benchmark::DoNotOptimize(solve_exact(inst).power_watts);
}
BENCHMARK(BM_solve_exact_desk_day);

void BM_greedy_reference_floor(benchmark::State& state) {
    const ProblemInstance inst = build_instance(Scenario::reference(), 110.0, 7);
    const LightingPlan lights = solve_lighting(inst);
    for (auto _ : state)
        benchmark::DoNotOptimize(greedy_assignment(inst, lights.ap_on).power_watts);
}
BENCHMARK(BM_greedy_reference_floor);

// Twenty day arrivals, the regime where the controller actually augments.
void BM_online_session_desk_day(benchmark::State& state) {
    const ProblemInstance inst = desk_instance(110.0);
    uint64_t seed = 0;
    for (auto _ : state) {
        OnlineSession session(inst, {}, ++seed);
        for (int u = 0; u < 20; ++u) session.arrive(u);
        benchmark::DoNotOptimize(session.real_power());
    }
}
BENCHMARK(BM_online_session_desk_day);

void BM_maxflow_bipartite(benchmark::State& state) {
    const int aps = static_cast<int>(state.range(0));
    const int users = 2 * aps;
    for (auto _ : state) {
        FlowNetwork net(2 + aps + users);
        for (int m = 0; m < aps; ++m) net.add_edge(0, 1 + m, 1.0);
        for (int u = 0; u < users; ++u) {
            net.add_edge(1 + u % aps, 1 + aps + u, 0.5);
            net.add_edge(1 + (u + 1) % aps, 1 + aps + u, 0.5);
            net.add_edge(1 + aps + u, 1 + aps + users, 1.0);
        }
        benchmark::DoNotOptimize(net.max_flow(0, 1 + aps + users));
    }
}
BENCHMARK(BM_maxflow_bipartite)->Arg(12)->Arg(84);

}  // namespace

BENCHMARK_MAIN();
