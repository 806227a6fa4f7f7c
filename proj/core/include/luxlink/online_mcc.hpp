#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <vector>

#include "luxlink/instance.hpp"
#include "luxlink/offline_solver.hpp"

// Online admission controller. Users arrive one at a time and must be wired
// to an access point immediately and irreversibly. The controller keeps a
// fractional weighting on the virtual-source -> AP -> user flow graph: each
// arrival is first served fractionally by augmenting edge weights along
// deficient minimum cuts, then the fractional solution is rounded against
// per-edge random thresholds. A guessed optimum alpha scales the edge
// categories; when the running fractional cost exceeds the budget the guess
// allows, alpha doubles and the working weights restart while committed
// weights persist, so earlier selections are never undone.
//
// Load budgets (p_max) are deliberately ignored here: an irrevocable online
// assignment cannot honor a shared serving cap, so only the offline solvers
// enforce it.

namespace luxlink {

enum class EdgeCategory { Cheap, Middle, Excluded };

// One edge of the admission graph, either source->AP or AP->user. Node ids
// are stable across arrival orders: 0 is the virtual source, 1+m the m-th
// AP, 1+M+u the u-th user. The threshold stream of an edge is derived from
// its (tail, head) pair alone, so construction order cannot change a draw.
struct EdgeState {
    int tail = 0;
    int head = 0;
    double cost_watts = 0;  // standby watts, zero for pre-lit APs, or link watts
    double cost_norm = 0;   // cost / (alpha / M); above M means excluded
    EdgeCategory category = EdgeCategory::Excluded;
    double w = 0;           // committed fraction, never decreases
    double w_aug = 0;       // working fraction of the current alpha epoch
    double gamma = std::numeric_limits<double>::infinity();  // min of threshold pool
    int pool_size = 0;
    bool rounded = false;   // sticky once set
};

struct OnlineDecision {
    int user = -1;
    int chosen_ap = -1;  // -1 only when repair is disabled and rounding failed
    std::vector<int> newly_turned_on;  // APs whose source edge rounded this arrival
    bool repaired = false;
};

// Append-only event log. Augmentation events carry enough state to replay
// the weight trajectory and audit every minimum cut after the fact.
struct CutEdgeRecord {
    int tail = 0;
    int head = 0;
    double cost_norm = 0;
    double w_aug_before = 0;
    double w_aug_after = 0;
};

struct TraceEvent {
    enum class Kind { Arrival, Augmentation, Doubling, Rounding, Repair, Decision };
    Kind kind = Kind::Arrival;
    int user = -1;
    double alpha = 0;
    double flow_value = 0;              // Augmentation: max flow == min cut value
    std::vector<CutEdgeRecord> cut;     // Augmentation: the middle edges augmented
    std::vector<std::pair<int, int>> edges;  // Rounding: newly rounded; Repair: forced
    int ap = -1;                        // Repair and Decision
    bool repaired = false;              // Decision
};

// Result of auditing a finished session against the offline optimum. The
// audit replays every augmentation of the final alpha epoch and checks the
// three facts the competitive-ratio argument rests on: each augmentation
// raises the potential sum(c' * w_opt * log2(w_aug)) by at least 1, each
// augmentation raises the fractional cost by at most 1, and the total count
// stays within 2*a*log2(M) + a + 1 where a is the optimum's cost in
// normalized units. Tolerance on the first two checks is 1e-9.
struct PotentialReport {
    double alpha_final = 0;
    double alpha_hat = 0;  // optimum cost under final-epoch normalization
    int augmentations_final_epoch = 0;
    double count_budget = 0;
    double min_delta_beta = std::numeric_limits<double>::infinity();
    double max_cost_increase = 0;
    int delta_beta_violations = 0;
    int cost_increase_violations = 0;
    bool count_ok = true;

    bool passed() const {
        return delta_beta_violations == 0 && cost_increase_violations == 0 && count_ok;
    }
};

class OnlineSession {
  public:
    // forced_on marks APs whose standby power is already spent (the lighting
    // plan); their source edges cost zero. Pass an empty vector for none.
    // Association costs come from inst.cost as users arrive.
    OnlineSession(const ProblemInstance& inst, std::vector<uint8_t> forced_on,
                  uint64_t seed);

    // Processes the next arrival. Each user id must arrive exactly once.
    OnlineDecision arrive(int user);

    // Marginal power of all decisions so far: standby of every non-forced AP
    // whose source edge is rounded, plus each served user's link watts.
    double real_power() const;

    int ap_count() const { return static_cast<int>(source_.size()); }
    int arrived_count() const { return n_arrived_; }
    int augmentation_count() const { return augmentation_count_; }
    int repair_count() const { return repair_count_; }
    double alpha() const { return alpha_; }
    double c_tot_frac() const { return c_tot_frac_; }
    double c_tot() const;  // rounded-solution analogue of c_tot_frac

    // -1 while unserved (possible only with repair disabled or before arrival).
    int serving_ap(int user) const;
    bool arrived(int user) const;
    // An AP is on when it is forced or its source edge has rounded.
    std::vector<uint8_t> aps_on() const;

    // True when some AP has both its source edge and the association edge to
    // this user rounded. This is the solution feasibility the randomized
    // rounding guarantee speaks about; repairs count, since they round.
    bool served_by_rounding(int user) const;

    const EdgeState& source_edge(int ap) const;
    // Null before the user arrives; otherwise one edge per AP, with
    // unreachable links carried as permanently excluded infinite-cost edges.
    const std::vector<EdgeState>* assoc_edges(int user) const;

    const std::vector<TraceEvent>& trace() const { return trace_; }
    void write_trace_jsonl(std::ostream& out) const;

    // Test seams. A gamma override replaces every pool minimum at rounding
    // time (1.0 keeps every fractional edge unrounded and forces the repair
    // path). Disabling repair leaves failed arrivals unserved, which is the
    // event the feasibility statistics count.
    void override_gamma(double gamma) { gamma_override_ = gamma; }
    void disable_repair() { repair_enabled_ = false; }

  private:
    void categorize(EdgeState& e) const;
    void recategorize_all();
    void extend_pool(EdgeState& e, int target);
    void extend_all_pools();
    void double_alpha(int user);
    double frac_cost() const;
    void process_flow(int user);
    void commit_weights();
    void round_edges(int user);
    void repair(int user, OnlineDecision& d);

    template <typename Fn>
    void for_each_edge(Fn&& fn);
    template <typename Fn>
    void for_each_edge(Fn&& fn) const;

    const ProblemInstance* inst_;
    std::vector<uint8_t> forced_;
    uint64_t seed_ = 0;

    std::vector<EdgeState> source_;
    std::vector<std::vector<EdgeState>> assoc_;  // per user, empty until arrival
    std::vector<int> serving_;
    std::vector<uint8_t> arrived_;

    double alpha_ = 1.0;
    bool alpha_fallback_ = false;  // true while alpha is the nominal 1 W guess
    double w_init_ = 0;
    int n_arrived_ = 0;
    double c_tot_frac_ = 0;
    int augmentation_count_ = 0;
    int repair_count_ = 0;
    bool repair_enabled_ = true;
    double gamma_override_ = -1;  // < 0 means inactive

    std::vector<TraceEvent> trace_;
};

// Audits a finished session against an offline optimum of the same instance.
// The optimum should come from solve_association on a load-cap-free copy
// with the same forced set, since the online controller ignores p_max.
PotentialReport verify_potential(const OnlineSession& session, const Assignment& optimum);

}  // namespace luxlink
