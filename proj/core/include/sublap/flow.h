#ifndef SUBLAP_FLOW_H_
#define SUBLAP_FLOW_H_

#include <limits>
#include <vector>

#include "sublap/common.h"

namespace sublap {

inline constexpr double kInfiniteCapacity = std::numeric_limits<double>::infinity();

struct Arc {
  int from = 0;
  int to = 0;
  double capacity = 0.0;  // >= 0 or kInfiniteCapacity
};

// Capacitated digraph with designated source and sink.
class FlowNetwork {
 public:
  FlowNetwork(int nodes, int source, int sink);

  int add_node();
  // Returns the arc index.
  int add_arc(int from, int to, double capacity);

  int node_count() const { return nodes_; }
  int source() const { return source_; }
  int sink() const { return sink_; }
  const std::vector<Arc>& arcs() const { return arcs_; }

 private:
  int nodes_;
  int source_;
  int sink_;
  std::vector<Arc> arcs_;
};

struct MaxFlowResult {
  double value = 0.0;          // kInfiniteCapacity when unbounded
  bool unbounded = false;      // every s-t cut contains an infinite arc
  std::vector<bool> min_source_side;  // reachable from s in the residual graph
  std::vector<bool> max_source_side;  // complement of nodes reaching t
  std::vector<double> flow;           // per arc
};

// Highest-label push-relabel with the gap heuristic. Infinite capacities are
// replaced by a sentinel exceeding the sum of finite capacities plus one.
MaxFlowResult max_flow_min_cut(const FlowNetwork& net);

// Sum of capacities of arcs leaving `side` (node membership mask).
double cut_capacity(const FlowNetwork& net, const std::vector<bool>& side);

}  // namespace sublap

#endif  // SUBLAP_FLOW_H_
