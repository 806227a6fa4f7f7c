#include "luxlink/online_mcc.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

#include <json.hpp>

#include "luxlink/errors.hpp"
#include "luxlink/maxflow.hpp"
#include "luxlink/rng.hpp"

namespace luxlink {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// A user counts as fractionally served once the admission flow reaches 1.
constexpr double kFlowEps = 1e-9;

// Fractional cost the analysis allows for a guess alpha; exceeding it proves
// the guess was low.
double cost_budget(double alpha, int ap_count) {
    return 2.0 * alpha * std::log2(static_cast<double>(ap_count)) + alpha + 1.0;
}

// Threshold pool size after n_arrived arrivals. Grows so that every past
// edge keeps receiving fresh rounding chances as the population grows.
int pool_target(int n_arrived) {
    return static_cast<int>(std::ceil(2.0 * std::log2(static_cast<double>(n_arrived) + 1.0)));
}

double capacity_of(const EdgeState& e) {
    switch (e.category) {
        case EdgeCategory::Cheap: return 1.0;
        case EdgeCategory::Excluded: return 0.0;
        case EdgeCategory::Middle: return std::min(e.w_aug, 1.0);
    }
    return 0.0;
}

}  // namespace

OnlineSession::OnlineSession(const ProblemInstance& inst, std::vector<uint8_t> forced_on,
                             uint64_t seed)
    : inst_(&inst), forced_(std::move(forced_on)), seed_(seed) {
    const int ap_n = static_cast<int>(inst.aps.size());
    if (ap_n == 0) throw ConfigError("online: instance has no access points");
    if (forced_.empty()) forced_.assign(ap_n, 0);
    if (static_cast<int>(forced_.size()) != ap_n)
        throw ConfigError("online: forced_on has " + std::to_string(forced_.size()) +
                          " entries for " + std::to_string(ap_n) + " APs");

    w_init_ = 1.0 / (static_cast<double>(ap_n) * static_cast<double>(ap_n));
    source_.resize(ap_n);
    double lo = kInf;
    for (int m = 0; m < ap_n; ++m) {
        EdgeState& e = source_[m];
        e.tail = 0;
        e.head = 1 + m;
        e.cost_watts = forced_[m] ? 0.0 : inst.aps[m].p_on_watts;
        e.w = e.w_aug = w_init_;
        if (e.cost_watts > 0) lo = std::min(lo, e.cost_watts);
    }
    if (std::isfinite(lo)) {
        alpha_ = lo;
    } else {
        // Every AP is pre-lit, so no source edge anchors the guess. Start at
        // a nominal 1 W and let the first real link cost re-seed it.
        alpha_ = 1.0;
        alpha_fallback_ = true;
    }

    serving_.assign(inst.users.size(), -1);
    arrived_.assign(inst.users.size(), 0);
    assoc_.resize(inst.users.size());
}

template <typename Fn>
void OnlineSession::for_each_edge(Fn&& fn) {
    for (EdgeState& e : source_) fn(e);
    for (size_t u = 0; u < assoc_.size(); ++u) {
        if (!arrived_[u]) continue;
        for (EdgeState& e : assoc_[u]) fn(e);
    }
}

template <typename Fn>
void OnlineSession::for_each_edge(Fn&& fn) const {
    for (const EdgeState& e : source_) fn(e);
    for (size_t u = 0; u < assoc_.size(); ++u) {
        if (!arrived_[u]) continue;
        for (const EdgeState& e : assoc_[u]) fn(e);
    }
}

void OnlineSession::categorize(EdgeState& e) const {
    const double unit = alpha_ / static_cast<double>(ap_count());
    e.cost_norm = e.cost_watts / unit;
    if (e.cost_watts <= unit) {
        e.category = EdgeCategory::Cheap;
        // Selected outright. Committed weight only ever grows, so an edge
        // that finished a middle epoch above 1 keeps that value.
        e.w = std::max(e.w, 1.0);
        e.w_aug = 1.0;
    } else if (e.cost_watts > alpha_) {
        e.category = EdgeCategory::Excluded;
    } else {
        e.category = EdgeCategory::Middle;
    }
}

void OnlineSession::recategorize_all() {
    for_each_edge([this](EdgeState& e) { categorize(e); });
}

void OnlineSession::extend_pool(EdgeState& e, int target) {
    if (target <= e.pool_size) return;
    // The stream depends only on the edge's endpoints, so a pool can be
    // replayed from scratch and extended past its previous length.
    SplitMix64 g{seed_mix(seed_mix(seed_, static_cast<uint64_t>(e.tail)),
                          static_cast<uint64_t>(e.head))};
    for (int i = 0; i < e.pool_size; ++i) g.uniform01();
    for (int i = e.pool_size; i < target; ++i) e.gamma = std::min(e.gamma, g.uniform01());
    e.pool_size = target;
}

void OnlineSession::extend_all_pools() {
    const int target = pool_target(n_arrived_);
    for_each_edge([this, target](EdgeState& e) { extend_pool(e, target); });
}

void OnlineSession::double_alpha(int user) {
    alpha_ *= 2.0;
    alpha_fallback_ = false;
    if (!(alpha_ < 1e300))
        throw std::logic_error("online: alpha diverged without a fractional solution");

    TraceEvent ev;
    ev.kind = TraceEvent::Kind::Doubling;
    ev.user = user;
    ev.alpha = alpha_;
    trace_.push_back(std::move(ev));

    recategorize_all();
    // The new epoch re-earns its working weights; committed ones persist so
    // nothing already paid for is given back.
    for_each_edge([this](EdgeState& e) {
        if (e.category == EdgeCategory::Middle) e.w_aug = w_init_;
    });
}

double OnlineSession::frac_cost() const {
    double total = 0;
    for_each_edge([&total](const EdgeState& e) {
        if (e.category == EdgeCategory::Excluded) return;
        total += std::max(e.w, e.w_aug) * e.cost_norm;
    });
    return total;
}

void OnlineSession::process_flow(int user) {
    const int ap_n = ap_count();
    const int sink = ap_n + 1;
    std::vector<EdgeState>& row = assoc_[user];

    for (;;) {
        FlowNetwork net(ap_n + 2);
        for (int m = 0; m < ap_n; ++m) net.add_edge(0, 1 + m, capacity_of(source_[m]));
        for (int m = 0; m < ap_n; ++m) net.add_edge(1 + m, sink, capacity_of(row[m]));

        const double flow = net.max_flow(0, sink, 1.0);
        if (flow >= 1.0 - kFlowEps) return;

        const std::vector<uint8_t> side = net.source_side_cut(0);
        std::vector<EdgeState*> cut;
        for (int m = 0; m < ap_n; ++m)
            if (source_[m].category == EdgeCategory::Middle && !side[1 + m])
                cut.push_back(&source_[m]);
        for (int m = 0; m < ap_n; ++m)
            if (row[m].category == EdgeCategory::Middle && side[1 + m])
                cut.push_back(&row[m]);

        if (cut.empty()) {
            // Only excluded edges separate this user; the guess is too low
            // to even reach them, so grow it and retry.
            double_alpha(user);
            continue;
        }

        TraceEvent ev;
        ev.kind = TraceEvent::Kind::Augmentation;
        ev.user = user;
        ev.alpha = alpha_;
        ev.flow_value = flow;
        ev.cut.reserve(cut.size());
        for (EdgeState* e : cut) {
            CutEdgeRecord rec;
            rec.tail = e->tail;
            rec.head = e->head;
            rec.cost_norm = e->cost_norm;
            rec.w_aug_before = e->w_aug;
            e->w_aug *= 1.0 + 1.0 / e->cost_norm;
            rec.w_aug_after = e->w_aug;
            ev.cut.push_back(rec);
        }
        ++augmentation_count_;
        trace_.push_back(std::move(ev));

        if (frac_cost() > cost_budget(alpha_, ap_n)) double_alpha(user);
    }
}

void OnlineSession::commit_weights() {
    for_each_edge([](EdgeState& e) { e.w = std::max(e.w, e.w_aug); });
}

void OnlineSession::round_edges(int user) {
    TraceEvent ev;
    ev.kind = TraceEvent::Kind::Rounding;
    ev.user = user;
    ev.alpha = alpha_;
    for_each_edge([this, &ev](EdgeState& e) {
        if (e.rounded) return;
        const double gamma = gamma_override_ >= 0 ? gamma_override_ : e.gamma;
        if (e.w >= gamma) {
            e.rounded = true;
            ev.edges.emplace_back(e.tail, e.head);
        }
    });
    if (!ev.edges.empty()) trace_.push_back(std::move(ev));
}

void OnlineSession::repair(int user, OnlineDecision& d) {
    std::vector<EdgeState>& row = assoc_[user];
    int best = -1;
    double best_cost = kInf;
    for (int m = 0; m < ap_count(); ++m) {
        if (!std::isfinite(row[m].cost_watts)) continue;
        const double c =
            row[m].cost_watts + (source_[m].rounded ? 0.0 : source_[m].cost_watts);
        if (c < best_cost) {
            best_cost = c;
            best = m;
        }
    }
    // arrive() rejected users without a finite link, so best is valid here.
    source_[best].rounded = true;
    row[best].rounded = true;
    ++repair_count_;
    d.chosen_ap = best;
    d.repaired = true;

    TraceEvent ev;
    ev.kind = TraceEvent::Kind::Repair;
    ev.user = user;
    ev.alpha = alpha_;
    ev.ap = best;
    ev.edges.emplace_back(0, 1 + best);
    ev.edges.emplace_back(1 + best, row[best].head);
    trace_.push_back(std::move(ev));
}

OnlineDecision OnlineSession::arrive(int user) {
    if (user < 0 || user >= static_cast<int>(arrived_.size()))
        throw std::out_of_range("online: user id out of range");
    if (arrived_[user]) throw std::invalid_argument("online: user arrived twice");

    const int ap_n = ap_count();
    bool linkable = false;
    for (int m = 0; m < ap_n; ++m) linkable = linkable || std::isfinite(inst_->cost[m][user]);
    // Reject before touching any state so a failed arrival leaves the
    // session exactly as it was.
    if (!linkable)
        throw InfeasibleError("online: user " + std::to_string(user) + " has no usable link");

    arrived_[user] = 1;
    ++n_arrived_;
    std::vector<EdgeState>& row = assoc_[user];
    row.resize(ap_n);
    for (int m = 0; m < ap_n; ++m) {
        EdgeState& e = row[m];
        e.tail = 1 + m;
        e.head = 1 + ap_n + user;
        e.cost_watts = inst_->cost[m][user];
        e.w = e.w_aug = w_init_;
    }

    TraceEvent ev;
    ev.kind = TraceEvent::Kind::Arrival;
    ev.user = user;
    ev.alpha = alpha_;
    trace_.push_back(std::move(ev));

    if (alpha_fallback_) {
        double lo = kInf;
        for_each_edge([&lo](const EdgeState& e) {
            if (e.cost_watts > 0 && std::isfinite(e.cost_watts)) lo = std::min(lo, e.cost_watts);
        });
        if (lo < alpha_) {
            alpha_ = lo;
            alpha_fallback_ = false;
        }
    }

    std::vector<uint8_t> on_before(ap_n);
    for (int m = 0; m < ap_n; ++m) on_before[m] = source_[m].rounded;

    extend_all_pools();
    recategorize_all();

    for (;;) {
        process_flow(user);
        commit_weights();
        c_tot_frac_ = frac_cost();
        round_edges(user);
        if (c_tot_frac_ <= cost_budget(alpha_, ap_n)) break;
        // Cheap commitments alone can outgrow the budget; the guess must
        // rise until the normalized total fits again.
        double_alpha(user);
    }

    OnlineDecision d;
    d.user = user;
    int best = -1;
    for (int m = 0; m < ap_n; ++m) {
        const EdgeState& a = row[m];
        if (!a.rounded || !source_[m].rounded || !std::isfinite(a.cost_watts)) continue;
        if (best < 0 || a.cost_watts < row[best].cost_watts) best = m;
    }
    if (best >= 0) {
        d.chosen_ap = best;
    } else if (repair_enabled_) {
        repair(user, d);
    }
    serving_[user] = d.chosen_ap;
    // Forced APs are already physically on; rounding their free source edge
    // switches nothing.
    for (int m = 0; m < ap_n; ++m)
        if (source_[m].rounded && !on_before[m] && !forced_[m]) d.newly_turned_on.push_back(m);

    TraceEvent done;
    done.kind = TraceEvent::Kind::Decision;
    done.user = user;
    done.alpha = alpha_;
    done.ap = d.chosen_ap;
    done.repaired = d.repaired;
    for (int m : d.newly_turned_on) done.edges.emplace_back(0, 1 + m);
    trace_.push_back(std::move(done));

    return d;
}

double OnlineSession::real_power() const {
    double total = 0;
    for (const EdgeState& e : source_)
        if (e.rounded) total += e.cost_watts;
    for (size_t u = 0; u < serving_.size(); ++u)
        if (serving_[u] >= 0) total += inst_->cost[serving_[u]][u];
    return total;
}

double OnlineSession::c_tot() const {
    double total = 0;
    for_each_edge([&total](const EdgeState& e) {
        if (e.category == EdgeCategory::Excluded || !e.rounded) return;
        total += e.cost_norm;
    });
    return total;
}

int OnlineSession::serving_ap(int user) const {
    if (user < 0 || user >= static_cast<int>(serving_.size()))
        throw std::out_of_range("online: user id out of range");
    return serving_[user];
}

bool OnlineSession::arrived(int user) const {
    if (user < 0 || user >= static_cast<int>(arrived_.size()))
        throw std::out_of_range("online: user id out of range");
    return arrived_[user] != 0;
}

std::vector<uint8_t> OnlineSession::aps_on() const {
    std::vector<uint8_t> on(source_.size());
    for (size_t m = 0; m < source_.size(); ++m)
        on[m] = forced_[m] || source_[m].rounded ? 1 : 0;
    return on;
}

bool OnlineSession::served_by_rounding(int user) const {
    if (!arrived(user)) return false;
    const std::vector<EdgeState>& row = assoc_[user];
    for (int m = 0; m < ap_count(); ++m)
        if (row[m].rounded && source_[m].rounded && std::isfinite(row[m].cost_watts))
            return true;
    return false;
}

const EdgeState& OnlineSession::source_edge(int ap) const {
    if (ap < 0 || ap >= ap_count()) throw std::out_of_range("online: AP id out of range");
    return source_[ap];
}

const std::vector<EdgeState>* OnlineSession::assoc_edges(int user) const {
    if (!arrived(user)) return nullptr;
    return &assoc_[user];
}

void OnlineSession::write_trace_jsonl(std::ostream& out) const {
    using nlohmann::json;
    for (const TraceEvent& ev : trace_) {
        json j;
        j["user"] = ev.user;
        j["alpha"] = ev.alpha;
        switch (ev.kind) {
            case TraceEvent::Kind::Arrival:
                j["event"] = "arrival";
                break;
            case TraceEvent::Kind::Augmentation: {
                j["event"] = "augmentation";
                j["flow"] = ev.flow_value;
                json cut = json::array();
                for (const CutEdgeRecord& rec : ev.cut) {
                    cut.push_back({{"tail", rec.tail},
                                   {"head", rec.head},
                                   {"cost_norm", rec.cost_norm},
                                   {"w_before", rec.w_aug_before},
                                   {"w_after", rec.w_aug_after}});
                }
                j["cut"] = std::move(cut);
                break;
            }
            case TraceEvent::Kind::Doubling:
                j["event"] = "doubling";
                break;
            case TraceEvent::Kind::Rounding: {
                j["event"] = "rounding";
                json edges = json::array();
                for (auto [tail, head] : ev.edges) edges.push_back({tail, head});
                j["edges"] = std::move(edges);
                break;
            }
            case TraceEvent::Kind::Repair: {
                j["event"] = "repair";
                j["ap"] = ev.ap;
                json edges = json::array();
                for (auto [tail, head] : ev.edges) edges.push_back({tail, head});
                j["edges"] = std::move(edges);
                break;
            }
            case TraceEvent::Kind::Decision: {
                j["event"] = "decision";
                j["ap"] = ev.ap;
                j["repaired"] = ev.repaired;
                json on = json::array();
                for (auto [tail, head] : ev.edges) on.push_back(head - 1);
                j["newly_on"] = std::move(on);
                break;
            }
        }
        out << j.dump() << '\n';
    }
}

PotentialReport verify_potential(const OnlineSession& session, const Assignment& optimum) {
    const int ap_n = session.ap_count();
    if (static_cast<int>(optimum.ap_on.size()) != ap_n)
        throw ConfigError("potential audit: optimum covers " +
                          std::to_string(optimum.ap_on.size()) + " APs, session has " +
                          std::to_string(ap_n));

    const auto w_star = [&](int tail, int head) -> double {
        if (tail == 0) return optimum.ap_on[head - 1] ? 1.0 : 0.0;
        const int m = tail - 1;
        const size_t u = static_cast<size_t>(head - 1 - ap_n);
        if (u >= optimum.serving_ap.size())
            throw ConfigError("potential audit: optimum is missing user " + std::to_string(u));
        return optimum.serving_ap[u] == m ? 1.0 : 0.0;
    };

    PotentialReport report;
    report.alpha_final = session.alpha();

    // The analysis treats alpha as the optimum's cost in normalized units;
    // measure that cost over the edges the final epoch could still use.
    const auto add_edge = [&](const EdgeState& e) {
        if (e.category == EdgeCategory::Excluded) return;
        report.alpha_hat += e.cost_norm * w_star(e.tail, e.head);
    };
    for (int m = 0; m < ap_n; ++m) add_edge(session.source_edge(m));
    for (size_t u = 0; u < optimum.serving_ap.size(); ++u) {
        const std::vector<EdgeState>* row = session.assoc_edges(static_cast<int>(u));
        if (!row) continue;
        for (const EdgeState& e : *row) add_edge(e);
    }
    report.count_budget =
        2.0 * report.alpha_hat * std::log2(static_cast<double>(ap_n)) + report.alpha_hat + 1.0;

    constexpr double kTol = 1e-9;
    for (const TraceEvent& ev : session.trace()) {
        if (ev.kind != TraceEvent::Kind::Augmentation) continue;
        if (ev.alpha != report.alpha_final) continue;  // doubling makes this exact
        ++report.augmentations_final_epoch;

        double delta_beta = 0;
        double increase = 0;
        for (const CutEdgeRecord& rec : ev.cut) {
            delta_beta += rec.cost_norm * w_star(rec.tail, rec.head) *
                          std::log2(rec.w_aug_after / rec.w_aug_before);
            increase += rec.w_aug_before;
        }
        report.min_delta_beta = std::min(report.min_delta_beta, delta_beta);
        report.max_cost_increase = std::max(report.max_cost_increase, increase);
        if (delta_beta < 1.0 - kTol) ++report.delta_beta_violations;
        if (increase > 1.0 + kTol) ++report.cost_increase_violations;
    }
    report.count_ok = report.augmentations_final_epoch <= report.count_budget + kTol;
    return report;
}

}  // namespace luxlink
