#include "sublap/flow.h"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

namespace sublap {

FlowNetwork::FlowNetwork(int nodes, int source, int sink)
    : nodes_(nodes), source_(source), sink_(sink) {
  if (nodes < 2 || source < 0 || sink < 0 || source >= nodes || sink >= nodes ||
      source == sink) {
    throw ValidationError("flow network needs distinct source and sink nodes");
  }
}

int FlowNetwork::add_node() { return nodes_++; }

int FlowNetwork::add_arc(int from, int to, double capacity) {
  if (from < 0 || to < 0 || from >= nodes_ || to >= nodes_) {
    throw ValidationError("arc endpoint out of range");
  }
  if (std::isnan(capacity) || capacity < 0.0) {
    throw ValidationError("arc capacity must be nonnegative");
  }
  arcs_.push_back(Arc{from, to, capacity});
  return static_cast<int>(arcs_.size()) - 1;
}

namespace {

struct ResidualEdge {
  int to;
  int rev;
  double cap;
};

class PushRelabel {
 public:
  PushRelabel(const FlowNetwork& net, double sentinel)
      : n_(net.node_count()),
        s_(net.source()),
        t_(net.sink()),
        g_(static_cast<std::size_t>(n_)),
        arc_pos_(net.arcs().size()) {
    for (std::size_t i = 0; i < net.arcs().size(); ++i) {
      const Arc& a = net.arcs()[i];
      const double cap = std::isinf(a.capacity) ? sentinel : a.capacity;
      if (a.from == a.to) {
        arc_pos_[i] = {-1, -1};
        continue;
      }
      auto& from = g_[static_cast<std::size_t>(a.from)];
      auto& to = g_[static_cast<std::size_t>(a.to)];
      from.push_back({a.to, static_cast<int>(to.size()), cap});
      to.push_back({a.from, static_cast<int>(from.size()) - 1, 0.0});
      arc_pos_[i] = {a.from, static_cast<int>(from.size()) - 1};
    }
  }

  void run(double eps) {
    eps_ = eps;
    const auto n = static_cast<std::size_t>(n_);
    height_.assign(n, 0);
    excess_.assign(n, 0.0);
    current_.assign(n, 0);
    count_.assign(2 * n + 2, 0);
    buckets_.assign(2 * n + 2, {});
    height_[static_cast<std::size_t>(s_)] = n_;
    count_[0] = n_ - 1;
    count_[n] = 1;
    highest_ = 0;
    for (auto& e : g_[static_cast<std::size_t>(s_)]) {
      if (e.cap > 0.0) {
        const double d = e.cap;
        e.cap = 0.0;
        g_[static_cast<std::size_t>(e.to)][static_cast<std::size_t>(e.rev)].cap += d;
        excess_[static_cast<std::size_t>(e.to)] += d;
        excess_[static_cast<std::size_t>(s_)] -= d;
        activate(e.to);
      }
    }
    while (highest_ >= 0) {
      auto& bucket = buckets_[static_cast<std::size_t>(highest_)];
      if (bucket.empty()) {
        --highest_;
        continue;
      }
      const int u = bucket.back();
      bucket.pop_back();
      if (height_[static_cast<std::size_t>(u)] != highest_) continue;
      discharge(u);
    }
  }

  double excess(int v) const { return excess_[static_cast<std::size_t>(v)]; }

  std::vector<bool> reachable_from_source() const {
    std::vector<bool> seen(static_cast<std::size_t>(n_), false);
    std::queue<int> q;
    q.push(s_);
    seen[static_cast<std::size_t>(s_)] = true;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (const auto& e : g_[static_cast<std::size_t>(u)]) {
        if (e.cap > eps_ && !seen[static_cast<std::size_t>(e.to)]) {
          seen[static_cast<std::size_t>(e.to)] = true;
          q.push(e.to);
        }
      }
    }
    return seen;
  }

  std::vector<bool> reaching_sink() const {
    std::vector<bool> seen(static_cast<std::size_t>(n_), false);
    std::queue<int> q;
    q.push(t_);
    seen[static_cast<std::size_t>(t_)] = true;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      // Residual edge (w -> u) has capacity stored at g_[w][...]; reach it
      // through the reverse entry stored at u.
      for (const auto& e : g_[static_cast<std::size_t>(u)]) {
        const auto& back = g_[static_cast<std::size_t>(e.to)][static_cast<std::size_t>(e.rev)];
        if (back.cap > eps_ && !seen[static_cast<std::size_t>(e.to)]) {
          seen[static_cast<std::size_t>(e.to)] = true;
          q.push(e.to);
        }
      }
    }
    return seen;
  }

  double residual_of_arc(std::size_t i) const {
    const auto [u, k] = arc_pos_[i];
    if (u < 0) return 0.0;
    return g_[static_cast<std::size_t>(u)][static_cast<std::size_t>(k)].cap;
  }

 private:
  void activate(int v) {
    if (v == s_ || v == t_) return;
    const int h = height_[static_cast<std::size_t>(v)];
    buckets_[static_cast<std::size_t>(h)].push_back(v);
    highest_ = std::max(highest_, h);
  }

  void set_height(int v, int h) {
    auto& cur = height_[static_cast<std::size_t>(v)];
    --count_[static_cast<std::size_t>(cur)];
    cur = h;
    ++count_[static_cast<std::size_t>(h)];
  }

  void discharge(int u) {
    const auto uu = static_cast<std::size_t>(u);
    auto& edges = g_[uu];
    while (excess_[uu] > eps_) {
      if (current_[uu] >= edges.size()) {
        relabel(u);
        current_[uu] = 0;
        if (height_[uu] >= 2 * n_) return;
        continue;
      }
      auto& e = edges[current_[uu]];
      const auto v = static_cast<std::size_t>(e.to);
      if (e.cap > eps_ && height_[uu] == height_[v] + 1) {
        const double d = std::min(excess_[uu], e.cap);
        const bool was_inactive = excess_[v] <= eps_;
        e.cap -= d;
        g_[v][static_cast<std::size_t>(e.rev)].cap += d;
        excess_[uu] -= d;
        excess_[v] += d;
        if (was_inactive && excess_[v] > eps_) activate(e.to);
      } else {
        ++current_[uu];
      }
    }
  }

  void relabel(int u) {
    const auto uu = static_cast<std::size_t>(u);
    const int old = height_[uu];
    int best = 2 * n_;
    for (const auto& e : g_[uu]) {
      if (e.cap > eps_) best = std::min(best, height_[static_cast<std::size_t>(e.to)] + 1);
    }
    set_height(u, best);
    if (old < n_ && count_[static_cast<std::size_t>(old)] == 0) {
      // Gap: nodes above `old` and below n can no longer reach the sink.
      for (int v = 0; v < n_; ++v) {
        const int h = height_[static_cast<std::size_t>(v)];
        if (v != s_ && h > old && h < n_) {
          set_height(v, n_ + 1);
          current_[static_cast<std::size_t>(v)] = 0;
          if (excess_[static_cast<std::size_t>(v)] > eps_) activate(v);
        }
      }
      if (height_[uu] < n_ + 1) set_height(u, n_ + 1);
    }
    if (excess_[uu] > eps_ && height_[uu] < 2 * n_) {
      highest_ = std::max(highest_, height_[uu]);
    }
  }

  int n_, s_, t_;
  std::vector<std::vector<ResidualEdge>> g_;
  std::vector<std::pair<int, int>> arc_pos_;
  std::vector<int> height_;
  std::vector<double> excess_;
  std::vector<std::size_t> current_;
  std::vector<int> count_;
  std::vector<std::vector<int>> buckets_;
  int highest_ = 0;
  double eps_ = 0.0;
};

}  // namespace

MaxFlowResult max_flow_min_cut(const FlowNetwork& net) {
  double finite_total = 0.0;
  for (const Arc& a : net.arcs()) {
    if (!std::isinf(a.capacity)) finite_total += a.capacity;
  }
  const double sentinel = finite_total + 1.0;
  const double eps = 1e-12 * sentinel;

  PushRelabel pr(net, sentinel);
  pr.run(eps);

  MaxFlowResult out;
  out.value = pr.excess(net.sink());
  out.min_source_side = pr.reachable_from_source();
  const std::vector<bool> to_sink = pr.reaching_sink();
  out.max_source_side.resize(to_sink.size());
  for (std::size_t v = 0; v < to_sink.size(); ++v) out.max_source_side[v] = !to_sink[v];
  out.flow.resize(net.arcs().size());
  for (std::size_t i = 0; i < net.arcs().size(); ++i) {
    const Arc& a = net.arcs()[i];
    const double cap = std::isinf(a.capacity) ? sentinel : a.capacity;
    out.flow[i] = std::clamp(cap - pr.residual_of_arc(i), 0.0, cap);
    if (a.from == a.to) out.flow[i] = 0.0;
  }
  if (out.value >= sentinel - 0.5) {
    out.unbounded = true;
    out.value = kInfiniteCapacity;
  }
  return out;
}

double cut_capacity(const FlowNetwork& net, const std::vector<bool>& side) {
  double total = 0.0;
  for (const Arc& a : net.arcs()) {
    if (side[static_cast<std::size_t>(a.from)] && !side[static_cast<std::size_t>(a.to)]) {
      total += a.capacity;
    }
  }
  return total;
}

}  // namespace sublap
