#include "luxlink/offline_solver.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "luxlink/errors.hpp"

namespace luxlink {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// solutions within this many watts of each other count as equal and are
// ranked by AP count, then by earliest switched-on index, so reruns and
// platform changes cannot flip the reported optimum between cost ties
constexpr double kPowerTie = 1e-9;
constexpr double kLuxTol = 1e-9;
constexpr double kLoadSlack = 1e-12;

std::vector<uint8_t> normalized_forced(const ProblemInstance& inst,
                                       const std::vector<uint8_t>& forced_on) {
    if (forced_on.empty()) return std::vector<uint8_t>(inst.aps.size(), 0);
    if (forced_on.size() != inst.aps.size())
        throw ConfigError("forced_on: size does not match the AP list");
    return forced_on;
}

void check_limits(const ProblemInstance& inst, const SolveLimits& limits) {
    if (static_cast<int>(inst.aps.size()) > limits.max_exact_aps)
        throw SizeLimitError("exact solver: " + std::to_string(inst.aps.size()) +
                             " APs exceeds the limit of " + std::to_string(limits.max_exact_aps));
    if (static_cast<int>(inst.users.size()) > limits.max_exact_users)
        throw SizeLimitError("exact solver: " + std::to_string(inst.users.size()) +
                             " users exceeds the limit of " +
                             std::to_string(limits.max_exact_users));
}

void check_servable(const ProblemInstance& inst) {
    std::vector<int> lost = inst.unservable_users();
    if (!lost.empty())
        throw InfeasibleError("user " + std::to_string(lost.front()) + " has no usable link");
}

// every sample point must be reachable even with all fixtures on, otherwise
// no on/off pattern can work and the caller deserves a named culprit
void check_lightable(const ProblemInstance& inst) {
    for (size_t w = 0; w < inst.points.size(); ++w) {
        if (inst.points[w].required_lux <= 0) continue;
        double reachable = 0;
        for (size_t m = 0; m < inst.aps.size(); ++m) reachable += inst.illum_gain[m][w];
        if (reachable < inst.points[w].required_lux - kLuxTol)
            throw InfeasibleError("illumination: point " + std::to_string(w) + " in room " +
                                  std::to_string(inst.points[w].room_id) + " needs " +
                                  std::to_string(inst.points[w].required_lux) +
                                  " lux but every fixture together delivers " +
                                  std::to_string(reachable));
    }
}

// Exact min-cost assignment of all users over a fixed open set, respecting
// the per-AP load budgets. The uncapacitated per-user minimum is optimal
// whenever it happens to fit, which is the dominant case; otherwise a DFS
// over (cost, ap)-sorted candidates with a suffix-minimum bound finishes
// the job exactly.
struct ExactAssigner {
    const ProblemInstance* inst = nullptr;
    std::vector<std::vector<std::pair<double, int>>> cand;
    std::vector<double> suffix_min;
    std::vector<double> remaining;
    std::vector<int> serving, best_serving;
    double best = kInf;

    void dfs(size_t n, double acc) {
        if (n == inst->users.size()) {
            best = acc;
            best_serving = serving;
            return;
        }
        if (acc + suffix_min[n] >= best) return;
        for (const auto& [c, m] : cand[n]) {
            if (acc + c + suffix_min[n + 1] >= best) break;
            if (c > remaining[static_cast<size_t>(m)] + kLoadSlack) continue;
            remaining[static_cast<size_t>(m)] -= c;
            serving[n] = m;
            dfs(n + 1, acc + c);
            remaining[static_cast<size_t>(m)] += c;
        }
    }

    // returns the optimal cost or +inf; fills serving_out on success
    double run(const ProblemInstance& instance, const std::vector<uint8_t>& open,
               std::vector<int>& serving_out) {
        inst = &instance;
        size_t n_users = instance.users.size();
        cand.assign(n_users, {});
        for (size_t n = 0; n < n_users; ++n) {
            for (size_t m = 0; m < instance.aps.size(); ++m) {
                double c = instance.cost[m][n];
                if (open[m] && c < kInf) cand[n].emplace_back(c, static_cast<int>(m));
            }
            if (cand[n].empty()) return kInf;
            std::sort(cand[n].begin(), cand[n].end());
        }
        suffix_min.assign(n_users + 1, 0.0);
        for (size_t n = n_users; n-- > 0;)
            suffix_min[n] = suffix_min[n + 1] + cand[n].front().first;

        remaining.resize(instance.aps.size());
        for (size_t m = 0; m < instance.aps.size(); ++m)
            remaining[m] = instance.aps[m].p_max_watts;

        serving.assign(n_users, -1);
        bool fits = true;
        std::vector<double> load(instance.aps.size(), 0.0);
        for (size_t n = 0; n < n_users; ++n) {
            const auto& [c, m] = cand[n].front();
            serving[n] = m;
            load[static_cast<size_t>(m)] += c;
        }
        for (size_t m = 0; m < load.size() && fits; ++m)
            fits = load[m] <= instance.aps[m].p_max_watts + kLoadSlack;
        if (fits) {
            serving_out = serving;
            return suffix_min[0];
        }

        best = kInf;
        dfs(0, 0.0);
        if (best < kInf) serving_out = best_serving;
        return best;
    }
};

struct BranchAndBound {
    const ProblemInstance* inst = nullptr;
    std::vector<uint8_t> forced;
    bool enforce_illum = true;

    std::vector<uint8_t> x;
    ExactAssigner assigner;

    bool found = false;
    double best_power = kInf;
    int best_count = INT_MAX;
    std::vector<uint8_t> best_x;
    std::vector<int> best_serving;

    int count_on(const std::vector<uint8_t>& v) const {
        int c = 0;
        for (uint8_t b : v) c += b;
        return c;
    }

    void offer(const std::vector<uint8_t>& candidate_x, const std::vector<int>& serving) {
        double power = assignment_power(*inst, candidate_x, serving, forced);
        int count = count_on(candidate_x);
        bool better;
        if (!found) better = true;
        else if (power < best_power - kPowerTie) better = true;
        else if (power <= best_power + kPowerTie)
            better = count < best_count || (count == best_count && candidate_x > best_x);
        else better = false;
        if (better) {
            found = true;
            best_power = power;
            best_count = count;
            best_x = candidate_x;
            best_serving = serving;
        }
    }

    // admissible bound over open-so-far plus everything still undecided
    bool hopeless(size_t idx, double charged) const {
        size_t m_count = inst->aps.size();
        double lb = charged;
        for (size_t n = 0; n < inst->users.size(); ++n) {
            double lo = kInf;
            for (size_t m = 0; m < m_count; ++m) {
                if (m < idx && !x[m]) continue;
                lo = std::min(lo, inst->cost[m][n]);
            }
            if (!(lo < kInf)) return true;
            lb += lo;
        }
        if (found && lb > best_power + kPowerTie) return true;
        if (enforce_illum) {
            for (size_t w = 0; w < inst->points.size(); ++w) {
                if (inst->points[w].required_lux <= 0) continue;
                double lux = 0;
                for (size_t m = 0; m < m_count; ++m) {
                    if (m < idx && !x[m]) continue;
                    lux += inst->illum_gain[m][w];
                }
                if (lux < inst->points[w].required_lux - kLuxTol) return true;
            }
        }
        return false;
    }

    void recurse(size_t idx, double charged) {
        if (hopeless(idx, charged)) return;
        if (idx == inst->aps.size()) {
            std::vector<int> serving;
            if (!(assigner.run(*inst, x, serving) < kInf)) return;
            offer(x, serving);
            return;
        }
        if (forced[idx]) {
            x[idx] = 1;
            recurse(idx + 1, charged);  // standby already paid elsewhere
            x[idx] = 0;
            return;
        }
        x[idx] = 0;
        recurse(idx + 1, charged);
        x[idx] = 1;
        recurse(idx + 1, charged + inst->aps[idx].p_on_watts);
        x[idx] = 0;
    }

    Assignment solve(const ProblemInstance& instance) {
        inst = &instance;
        x.assign(instance.aps.size(), 0);

        // a feasible incumbent up front makes the bound bite immediately
        std::vector<uint8_t> warm = forced;
        if (enforce_illum) {
            LightingPlan lights = solve_lighting(instance);
            for (size_t m = 0; m < warm.size(); ++m) warm[m] |= lights.ap_on[m];
        }
        try {
            Assignment greedy = greedy_assignment(instance, warm);
            offer(greedy.ap_on, greedy.serving_ap);
        } catch (const InfeasibleError&) {
            // greedy dead ends are not proof of infeasibility; search anyway
        }

        recurse(0, 0.0);
        if (!found)
            throw InfeasibleError(
                "no switch pattern satisfies the lux floors and load budgets together");
        Assignment out;
        out.ap_on = best_x;
        out.serving_ap = best_serving;
        out.power_watts = best_power;
        return out;
    }
};

}  // namespace

double assignment_power(const ProblemInstance& inst, const std::vector<uint8_t>& ap_on,
                        const std::vector<int>& serving_ap,
                        const std::vector<uint8_t>& forced_on) {
    double power = 0;
    for (size_t m = 0; m < inst.aps.size(); ++m)
        if (ap_on[m] && (forced_on.empty() || !forced_on[m]))
            power += inst.aps[m].p_on_watts;
    for (size_t n = 0; n < serving_ap.size(); ++n)
        power += inst.cost[static_cast<size_t>(serving_ap[n])][n];
    return power;
}

LightingPlan solve_lighting(const ProblemInstance& inst) {
    check_lightable(inst);
    LightingPlan plan;
    plan.ap_on.assign(inst.aps.size(), 0);

    std::vector<int> room_ids;
    for (size_t w = 0; w < inst.points.size(); ++w)
        if (inst.points[w].required_lux > 0 &&
            std::find(room_ids.begin(), room_ids.end(), inst.points[w].room_id) ==
                room_ids.end())
            room_ids.push_back(inst.points[w].room_id);
    std::sort(room_ids.begin(), room_ids.end());

    for (int room : room_ids) {
        std::vector<size_t> aps, pts;
        for (size_t m = 0; m < inst.aps.size(); ++m)
            if (inst.aps[m].kind == ApKind::Vlc && inst.aps[m].room_id == room)
                aps.push_back(m);
        for (size_t w = 0; w < inst.points.size(); ++w)
            if (inst.points[w].room_id == room && inst.points[w].required_lux > 0)
                pts.push_back(w);
        if (aps.size() > 25)
            throw SizeLimitError("lighting: room " + std::to_string(room) + " has " +
                                 std::to_string(aps.size()) +
                                 " fixtures, subset search capped at 25");

        double best_power = kInf;
        int best_pop = INT_MAX;
        uint32_t best_mask = 0;
        bool room_found = false;
        for (uint32_t mask = 0; mask < (uint32_t{1} << aps.size()); ++mask) {
            bool ok = true;
            for (size_t w : pts) {
                double lux = 0;
                for (size_t k = 0; k < aps.size(); ++k)
                    if (mask & (uint32_t{1} << k)) lux += inst.illum_gain[aps[k]][w];
                if (lux < inst.points[w].required_lux - kLuxTol) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            double power = 0;
            for (size_t k = 0; k < aps.size(); ++k)
                if (mask & (uint32_t{1} << k)) power += inst.aps[aps[k]].p_on_watts;
            int pop = std::popcount(mask);
            bool better;
            if (!room_found) better = true;
            else if (power < best_power - kPowerTie) better = true;
            else if (power <= best_power + kPowerTie)
                better = pop < best_pop || (pop == best_pop && mask < best_mask);
            else better = false;
            if (better) {
                room_found = true;
                best_power = power;
                best_pop = pop;
                best_mask = mask;
            }
        }
        // check_lightable already proved the all-on pattern works
        for (size_t k = 0; k < aps.size(); ++k)
            if (best_mask & (uint32_t{1} << k)) plan.ap_on[aps[k]] = 1;
    }

    for (size_t m = 0; m < inst.aps.size(); ++m)
        if (plan.ap_on[m]) plan.power_watts += inst.aps[m].p_on_watts;
    return plan;
}

Assignment solve_exact(const ProblemInstance& inst, const SolveLimits& limits) {
    check_limits(inst, limits);
    check_servable(inst);
    check_lightable(inst);
    BranchAndBound bnb;
    bnb.forced = normalized_forced(inst, {});
    bnb.enforce_illum = true;
    return bnb.solve(inst);
}

Assignment solve_association(const ProblemInstance& inst, const std::vector<uint8_t>& forced_on,
                             const SolveLimits& limits) {
    check_limits(inst, limits);
    check_servable(inst);
    BranchAndBound bnb;
    bnb.forced = normalized_forced(inst, forced_on);
    bnb.enforce_illum = false;
    return bnb.solve(inst);
}

Assignment greedy_assignment(const ProblemInstance& inst, const std::vector<uint8_t>& forced_on) {
    std::vector<uint8_t> forced = normalized_forced(inst, forced_on);
    Assignment out;
    out.ap_on = forced;
    out.serving_ap.assign(inst.users.size(), -1);

    std::vector<double> remaining(inst.aps.size());
    for (size_t m = 0; m < inst.aps.size(); ++m) remaining[m] = inst.aps[m].p_max_watts;

    for (size_t n = 0; n < inst.users.size(); ++n) {
        int pick = -1;
        double pick_key = kInf;
        for (size_t m = 0; m < inst.aps.size(); ++m) {
            double c = inst.cost[m][n];
            if (!(c < kInf) || c > remaining[m] + kLoadSlack) continue;
            double key = c + (out.ap_on[m] ? 0.0 : inst.aps[m].p_on_watts);
            if (key < pick_key) {
                pick_key = key;
                pick = static_cast<int>(m);
            }
        }
        if (pick < 0)
            throw InfeasibleError("greedy: user " + std::to_string(n) +
                                  " has no AP with link and budget left");
        out.ap_on[static_cast<size_t>(pick)] = 1;
        out.serving_ap[n] = pick;
        remaining[static_cast<size_t>(pick)] -= inst.cost[static_cast<size_t>(pick)][n];
    }
    out.power_watts = assignment_power(inst, out.ap_on, out.serving_ap, forced);
    return out;
}

double check_assignment(const ProblemInstance& inst, const Assignment& asg,
                        const std::vector<uint8_t>& forced_on, bool require_illumination) {
    std::vector<uint8_t> forced = normalized_forced(inst, forced_on);
    if (asg.ap_on.size() != inst.aps.size())
        throw InfeasibleError("check: on/off vector does not match the AP list");
    if (asg.serving_ap.size() != inst.users.size())
        throw InfeasibleError("check: serving vector does not match the user list");

    std::vector<double> load(inst.aps.size(), 0.0);
    for (size_t n = 0; n < inst.users.size(); ++n) {
        int m = asg.serving_ap[n];
        if (m < 0 || m >= static_cast<int>(inst.aps.size()))
            throw InfeasibleError("check: user " + std::to_string(n) + " has no serving AP");
        if (!asg.ap_on[static_cast<size_t>(m)])
            throw InfeasibleError("check: user " + std::to_string(n) + " is served by AP " +
                                  std::to_string(m) + " which is off");
        double c = inst.cost[static_cast<size_t>(m)][n];
        if (!(c < kInf))
            throw InfeasibleError("check: user " + std::to_string(n) + " has no link to AP " +
                                  std::to_string(m));
        load[static_cast<size_t>(m)] += c;
    }
    for (size_t m = 0; m < inst.aps.size(); ++m)
        if (load[m] > inst.aps[m].p_max_watts + 1e-9)
            throw InfeasibleError("check: AP " + std::to_string(m) + " load " +
                                  std::to_string(load[m]) + " W exceeds its budget of " +
                                  std::to_string(inst.aps[m].p_max_watts) + " W");
    if (require_illumination) {
        for (size_t w = 0; w < inst.points.size(); ++w) {
            double lux = 0;
            for (size_t m = 0; m < inst.aps.size(); ++m)
                if (asg.ap_on[m]) lux += inst.illum_gain[m][w];
            if (lux < inst.points[w].required_lux - kLuxTol)
                throw InfeasibleError("check: point " + std::to_string(w) + " gets " +
                                      std::to_string(lux) + " lux, needs " +
                                      std::to_string(inst.points[w].required_lux));
        }
    }
    return assignment_power(inst, asg.ap_on, asg.serving_ap, forced);
}

}  // namespace luxlink
