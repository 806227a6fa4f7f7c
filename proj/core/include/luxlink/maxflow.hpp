#pragma once

#include <cstdint>
#include <limits>
#include <vector>

// Dinic max-flow over real-valued capacities, sized for the tiny per-arrival
// networks of the online controller (a source, the APs, one user). Capacities
// can be rewritten between runs; call reset_flow before reusing the network.

namespace luxlink {

class FlowNetwork {
  public:
    struct Edge {
        int from = 0, to = 0;
        double capacity = 0;
        double flow = 0;
    };

    explicit FlowNetwork(int node_count);

    // Directed edge; the implicit reverse edge carries capacity 0. Returns an
    // id usable with set_capacity and edge().
    int add_edge(int from, int to, double capacity);

    // Only meaningful on a network without flow (fresh or after reset_flow).
    void set_capacity(int edge_id, double capacity);
    void reset_flow();

    // Augments until the limit or the true maximum is reached. Flows stay on
    // the network, so source_side_cut and edge() see the final state.
    double max_flow(int source, int sink,
                    double limit = std::numeric_limits<double>::infinity());

    // Nodes still reachable from the source in the residual graph. After an
    // exhausted max_flow this is the source side of a minimum cut.
    std::vector<uint8_t> source_side_cut(int source) const;

    int edge_count() const { return static_cast<int>(orig_.size()); }
    Edge edge(int edge_id) const;

  private:
    bool bfs_levels(int source, int sink);
    double push(int node, int sink, double limit);

    int nodes_;
    std::vector<std::vector<int>> adj_;  // per node, indices into residual_
    std::vector<int> to_;
    std::vector<double> residual_;  // paired: forward 2k, reverse 2k+1
    std::vector<double> orig_;      // per forward edge id k
    std::vector<int> level_;
    std::vector<size_t> next_;
};

}  // namespace luxlink
