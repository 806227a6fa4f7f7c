#include "luxlink/maxflow.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace luxlink {

namespace {
// residual capacities below this are treated as saturated to keep the level
// graph from chasing float dust
constexpr double kResidualEps = 1e-12;
}  // namespace

FlowNetwork::FlowNetwork(int node_count) : nodes_(node_count), adj_(node_count) {
    if (node_count <= 0) throw std::invalid_argument("flow network needs at least one node");
}

int FlowNetwork::add_edge(int from, int to, double capacity) {
    if (from < 0 || from >= nodes_ || to < 0 || to >= nodes_)
        throw std::out_of_range("flow edge endpoint outside the node range");
    if (capacity < 0) throw std::invalid_argument("flow capacity must be non-negative");
    int id = static_cast<int>(orig_.size());
    adj_[from].push_back(2 * id);
    adj_[to].push_back(2 * id + 1);
    to_.push_back(to);
    to_.push_back(from);
    residual_.push_back(capacity);
    residual_.push_back(0.0);
    orig_.push_back(capacity);
    return id;
}

void FlowNetwork::set_capacity(int edge_id, double capacity) {
    if (edge_id < 0 || edge_id >= edge_count()) throw std::out_of_range("unknown flow edge");
    if (capacity < 0) throw std::invalid_argument("flow capacity must be non-negative");
    orig_[static_cast<size_t>(edge_id)] = capacity;
    residual_[static_cast<size_t>(2 * edge_id)] = capacity;
    residual_[static_cast<size_t>(2 * edge_id) + 1] = 0.0;
}

void FlowNetwork::reset_flow() {
    for (int id = 0; id < edge_count(); ++id) {
        residual_[static_cast<size_t>(2 * id)] = orig_[static_cast<size_t>(id)];
        residual_[static_cast<size_t>(2 * id) + 1] = 0.0;
    }
}

FlowNetwork::Edge FlowNetwork::edge(int edge_id) const {
    if (edge_id < 0 || edge_id >= edge_count()) throw std::out_of_range("unknown flow edge");
    Edge e;
    e.to = to_[static_cast<size_t>(2 * edge_id)];
    e.from = to_[static_cast<size_t>(2 * edge_id) + 1];
    e.capacity = orig_[static_cast<size_t>(edge_id)];
    e.flow = e.capacity - residual_[static_cast<size_t>(2 * edge_id)];
    return e;
}

bool FlowNetwork::bfs_levels(int source, int sink) {
    level_.assign(static_cast<size_t>(nodes_), -1);
    std::queue<int> q;
    level_[static_cast<size_t>(source)] = 0;
    q.push(source);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int e : adj_[static_cast<size_t>(v)]) {
            int w = to_[static_cast<size_t>(e)];
            if (level_[static_cast<size_t>(w)] >= 0) continue;
            if (residual_[static_cast<size_t>(e)] <= kResidualEps) continue;
            level_[static_cast<size_t>(w)] = level_[static_cast<size_t>(v)] + 1;
            q.push(w);
        }
    }
    return level_[static_cast<size_t>(sink)] >= 0;
}

double FlowNetwork::push(int node, int sink, double limit) {
    if (node == sink) return limit;
    for (size_t& i = next_[static_cast<size_t>(node)]; i < adj_[static_cast<size_t>(node)].size();
         ++i) {
        int e = adj_[static_cast<size_t>(node)][i];
        int w = to_[static_cast<size_t>(e)];
        if (level_[static_cast<size_t>(w)] != level_[static_cast<size_t>(node)] + 1) continue;
        if (residual_[static_cast<size_t>(e)] <= kResidualEps) continue;
        double pushed = push(w, sink, std::min(limit, residual_[static_cast<size_t>(e)]));
        if (pushed > 0) {
            residual_[static_cast<size_t>(e)] -= pushed;
            residual_[static_cast<size_t>(e ^ 1)] += pushed;
            return pushed;
        }
    }
    return 0.0;
}

double FlowNetwork::max_flow(int source, int sink, double limit) {
    if (source < 0 || source >= nodes_ || sink < 0 || sink >= nodes_)
        throw std::out_of_range("flow endpoint outside the node range");
    if (source == sink) throw std::invalid_argument("source and sink must differ");
    double total = 0.0;
    while (total < limit && bfs_levels(source, sink)) {
        next_.assign(static_cast<size_t>(nodes_), 0);
        while (total < limit) {
            double pushed = push(source, sink, limit - total);
            if (pushed <= 0) break;
            total += pushed;
        }
    }
    return total;
}

std::vector<uint8_t> FlowNetwork::source_side_cut(int source) const {
    std::vector<uint8_t> side(static_cast<size_t>(nodes_), 0);
    std::vector<int> stack = {source};
    side[static_cast<size_t>(source)] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int e : adj_[static_cast<size_t>(v)]) {
            int w = to_[static_cast<size_t>(e)];
            if (side[static_cast<size_t>(w)]) continue;
            if (residual_[static_cast<size_t>(e)] <= kResidualEps) continue;
            side[static_cast<size_t>(w)] = 1;
            stack.push_back(w);
        }
    }
    return side;
}

}  // namespace luxlink
