#pragma once

#include <cstdint>
#include <vector>

#include "luxlink/instance.hpp"

// Offline optimizers over a ProblemInstance. The joint problem (which APs to
// switch on, who serves whom) is a set-cover flavored MILP, solved here by
// branch and bound over the on/off vector with an exact capacitated
// assignment at the leaves. It is meant for instances up to roughly twenty
// APs; anything bigger goes through the lighting/association split or the
// greedy pass instead.

namespace luxlink {

struct SolveLimits {
    int max_exact_aps = 20;
    int max_exact_users = 24;
};

// On/off subset of the light fixtures meeting every residual lux floor.
struct LightingPlan {
    std::vector<uint8_t> ap_on;  // sized like inst.aps, RF entries always 0
    double power_watts = 0;      // standby power of the chosen fixtures
};

struct Assignment {
    std::vector<uint8_t> ap_on;
    std::vector<int> serving_ap;  // per user, an index into inst.aps
    double power_watts = 0;       // see assignment_power for the accounting
};

// Canonical objective value: standby of every on AP outside forced_on plus
// the serving cost of every user, summed in index order so equal solutions
// produce bit-equal totals.
double assignment_power(const ProblemInstance& inst, const std::vector<uint8_t>& ap_on,
                        const std::vector<int>& serving_ap,
                        const std::vector<uint8_t>& forced_on = {});

// Cheapest fixture subset meeting the lux floors. Separates per room, exact
// per room by subset enumeration. Throws InfeasibleError naming the first
// sample point that stays short even with every reachable fixture on.
LightingPlan solve_lighting(const ProblemInstance& inst);

// Exact joint optimum with the lux floors enforced; absolute power.
Assignment solve_exact(const ProblemInstance& inst, const SolveLimits& limits = {});

// Exact optimum given a set of APs already on and paid for; reports only the
// marginal power (extra standby plus serving costs). Lux floors are not
// re-checked, they are the forced-on set's business.
Assignment solve_association(const ProblemInstance& inst, const std::vector<uint8_t>& forced_on,
                             const SolveLimits& limits = {});

// One pass over the users in id order, each taking the AP with the smallest
// marginal power (serving cost, plus standby if it is still off) that has
// budget left. Same accounting as solve_association.
Assignment greedy_assignment(const ProblemInstance& inst, const std::vector<uint8_t>& forced_on);

// Independent validity check: every user served by an on AP over a live link,
// loads within budget, lux floors met when required. Returns the recomputed
// canonical power; throws InfeasibleError describing the first violation.
double check_assignment(const ProblemInstance& inst, const Assignment& asg,
                        const std::vector<uint8_t>& forced_on = {},
                        bool require_illumination = true);

}  // namespace luxlink
