#include "sublap/submodular.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace sublap {
namespace {

void check_weight(double weight) {
  if (!std::isfinite(weight) || weight < 0.0) {
    throw ValidationError("edge weight must be finite and nonnegative");
  }
}

void check_distinct(const std::vector<int>& vs) {
  std::set<int> seen;
  for (int v : vs) {
    if (v < 0) throw ValidationError("negative vertex index");
    if (!seen.insert(v).second) {
      throw ValidationError("repeated vertex " + std::to_string(v) +
                            " in edge support");
    }
  }
}

std::string local_set_string(const std::vector<int>& support, std::uint32_t m) {
  std::vector<int> members;
  for (std::size_t i = 0; i < support.size(); ++i) {
    if ((m >> i) & 1U) members.push_back(support[i]);
  }
  std::string out = "{";
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(members[i]);
  }
  return out + "}";
}

}  // namespace

std::string to_string(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::kUndirected: return "undirected";
    case EdgeKind::kDirected: return "directed";
    case EdgeKind::kHyper: return "hyper";
    case EdgeKind::kTable: return "table";
  }
  return "unknown";
}

EdgeFunction EdgeFunction::undirected(int u, int v, double weight) {
  check_weight(weight);
  EdgeFunction e;
  e.kind_ = EdgeKind::kUndirected;
  e.support_ = {u, v};
  e.weight_ = weight;
  check_distinct(e.support_);
  return e;
}

EdgeFunction EdgeFunction::directed(int tail, int head, double weight) {
  check_weight(weight);
  EdgeFunction e;
  e.kind_ = EdgeKind::kDirected;
  e.support_ = {tail, head};
  e.weight_ = weight;
  check_distinct(e.support_);
  return e;
}

EdgeFunction EdgeFunction::hyper(std::vector<int> vertices, double weight) {
  check_weight(weight);
  if (vertices.size() < 2) {
    throw ValidationError("arity error: hyperedge needs at least 2 vertices, got " +
                          std::to_string(vertices.size()));
  }
  check_distinct(vertices);
  EdgeFunction e;
  e.kind_ = EdgeKind::kHyper;
  e.support_ = std::move(vertices);
  e.weight_ = weight;
  return e;
}

EdgeFunction EdgeFunction::table(std::vector<int> support,
                                 std::vector<double> values, double weight,
                                 int arity_bound) {
  check_weight(weight);
  check_distinct(support);
  const int k = static_cast<int>(support.size());
  if (k < 1) throw ValidationError("arity error: table support is empty");
  if (k > arity_bound || k > 30) {
    throw ValidationError("arity error: table support size " +
                          std::to_string(k) + " exceeds bound " +
                          std::to_string(arity_bound));
  }
  const std::uint32_t full = (std::uint32_t{1} << k) - 1;
  if (values.size() != static_cast<std::size_t>(full) + 1) {
    throw ValidationError("table needs 2^" + std::to_string(k) + " = " +
                          std::to_string(full + 1) + " values, got " +
                          std::to_string(values.size()));
  }
  double scale = 0.0;
  for (std::uint32_t m = 0; m <= full; ++m) {
    if (!std::isfinite(values[m])) throw ValidationError("table value not finite");
    scale = std::max(scale, std::abs(values[m]));
  }
  const double tol = 1e-12 * (1.0 + scale);
  if (values[0] != 0.0) {
    throw ValidationError("normalization: table value of the empty set is " +
                          std::to_string(values[0]) + ", expected 0");
  }
  if (values[full] != 0.0) {
    throw ValidationError("normalization: table value of the full support is " +
                          std::to_string(values[full]) + ", expected 0");
  }
  for (std::uint32_t m = 0; m <= full; ++m) {
    if (values[m] < 0.0) {
      throw ValidationError("nonnegativity: table value of " +
                            local_set_string(support, m) + " is negative");
    }
  }
  // Local form: F(S+i) + F(S+j) >= F(S+i+j) + F(S) for i, j not in S.
  for (std::uint32_t m = 0; m <= full; ++m) {
    for (int i = 0; i < k; ++i) {
      if ((m >> i) & 1U) continue;
      for (int j = i + 1; j < k; ++j) {
        if ((m >> j) & 1U) continue;
        const std::uint32_t si = m | (1U << i);
        const std::uint32_t sj = m | (1U << j);
        if (values[si] + values[sj] < values[si | sj] + values[m] - tol) {
          throw ValidationError("submodularity violated for the pair S=" +
                                local_set_string(support, si) + ", T=" +
                                local_set_string(support, sj));
        }
      }
    }
  }
  EdgeFunction e;
  e.kind_ = EdgeKind::kTable;
  e.support_ = std::move(support);
  e.values_ = std::move(values);
  e.weight_ = weight;
  return e;
}

double EdgeFunction::evaluate_local(std::uint32_t local) const {
  const int k = arity();
  const std::uint32_t full = (std::uint32_t{1} << k) - 1;
  switch (kind_) {
    case EdgeKind::kUndirected:
    case EdgeKind::kHyper:
      return (local != 0 && local != full) ? weight_ : 0.0;
    case EdgeKind::kDirected:
      return ((local & 1U) && !(local & 2U)) ? weight_ : 0.0;
    case EdgeKind::kTable:
      return weight_ * values_[local];
  }
  return 0.0;
}

double EdgeFunction::evaluate(const VertexSet& s) const {
  std::uint32_t local = 0;
  for (int i = 0; i < arity(); ++i) {
    const int v = support_[static_cast<std::size_t>(i)];
    if (v >= s.universe()) throw ValidationError("vertex index out of range");
    if (s.contains(v)) local |= 1U << i;
  }
  return evaluate_local(local);
}

double EdgeFunction::lovasz(std::span<const double> x) const {
  auto at = [&](int i) { return x[static_cast<std::size_t>(support_[static_cast<std::size_t>(i)])]; };
  switch (kind_) {
    case EdgeKind::kUndirected:
      return weight_ * std::abs(at(0) - at(1));
    case EdgeKind::kDirected:
      return weight_ * std::max(at(0) - at(1), 0.0);
    case EdgeKind::kHyper: {
      double lo = at(0), hi = at(0);
      for (int i = 1; i < arity(); ++i) {
        lo = std::min(lo, at(i));
        hi = std::max(hi, at(i));
      }
      return weight_ * (hi - lo);
    }
    case EdgeKind::kTable: {
      std::vector<int> pos(support_.size());
      std::iota(pos.begin(), pos.end(), 0);
      std::sort(pos.begin(), pos.end(), [&](int a, int b) {
        if (at(a) != at(b)) return at(a) > at(b);
        return support_[static_cast<std::size_t>(a)] < support_[static_cast<std::size_t>(b)];
      });
      // Telescoped so every term is a nonnegative product.
      double total = 0.0;
      std::uint32_t prefix = 0;
      for (std::size_t i = 0; i + 1 < pos.size(); ++i) {
        prefix |= 1U << pos[i];
        total += (at(pos[i]) - at(pos[i + 1])) * values_[prefix];
      }
      return weight_ * total;
    }
  }
  return 0.0;
}

void EdgeFunction::add_greedy(std::span<const int> rank, double scale,
                              std::span<double> out) const {
  if (scale == 0.0 || weight_ == 0.0) return;
  const double s = scale * weight_;
  auto r = [&](int i) { return rank[static_cast<std::size_t>(support_[static_cast<std::size_t>(i)])]; };
  auto o = [&](int i) -> double& { return out[static_cast<std::size_t>(support_[static_cast<std::size_t>(i)])]; };
  switch (kind_) {
    case EdgeKind::kUndirected:
      if (r(0) < r(1)) {
        o(0) += s;
        o(1) -= s;
      } else {
        o(1) += s;
        o(0) -= s;
      }
      return;
    case EdgeKind::kDirected:
      if (r(0) < r(1)) {
        o(0) += s;
        o(1) -= s;
      }
      return;
    case EdgeKind::kHyper: {
      int first = 0, last = 0;
      for (int i = 1; i < arity(); ++i) {
        if (r(i) < r(first)) first = i;
        if (r(i) > r(last)) last = i;
      }
      o(first) += s;
      o(last) -= s;
      return;
    }
    case EdgeKind::kTable: {
      std::vector<int> pos(support_.size());
      std::iota(pos.begin(), pos.end(), 0);
      std::sort(pos.begin(), pos.end(), [&](int a, int b) { return r(a) < r(b); });
      std::uint32_t prefix = 0;
      double prev = 0.0;
      for (int p : pos) {
        prefix |= 1U << p;
        const double cur = values_[prefix];
        o(p) += s * (cur - prev);
        prev = cur;
      }
      return;
    }
  }
}

SubmodularTransformation::SubmodularTransformation(GroundSet ground,
                                                   std::vector<EdgeFunction> edges)
    : ground_(std::move(ground)), edges_(std::move(edges)) {
  if (ground_.n < 1) throw ValidationError("ground set must have n >= 1");
  if (!ground_.labels.empty()) {
    if (static_cast<int>(ground_.labels.size()) != ground_.n) {
      throw ValidationError("labels must have exactly n entries");
    }
    std::set<std::string> seen(ground_.labels.begin(), ground_.labels.end());
    if (static_cast<int>(seen.size()) != ground_.n) {
      throw ValidationError("labels must be unique");
    }
  }
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    for (int v : edges_[e].support()) {
      if (v >= ground_.n) {
        throw ValidationError("edge " + std::to_string(e) + " references vertex " +
                              std::to_string(v) + " but n = " +
                              std::to_string(ground_.n));
      }
    }
  }
}

bool SubmodularTransformation::is_graph() const {
  return std::all_of(edges_.begin(), edges_.end(), [](const EdgeFunction& e) {
    return e.kind() == EdgeKind::kUndirected || e.kind() == EdgeKind::kDirected;
  });
}

bool SubmodularTransformation::is_cut_only() const {
  return std::all_of(edges_.begin(), edges_.end(),
                     [](const EdgeFunction& e) { return e.is_cut(); });
}

int SubmodularTransformation::max_arity() const {
  int k = 0;
  for (const auto& e : edges_) k = std::max(k, e.arity());
  return k;
}

Vector SubmodularTransformation::evaluate(const VertexSet& s) const {
  Vector out;
  out.reserve(edges_.size());
  for (const auto& e : edges_) out.push_back(e.evaluate(s));
  return out;
}

Vector SubmodularTransformation::lovasz(std::span<const double> x) const {
  Vector out;
  out.reserve(edges_.size());
  for (const auto& e : edges_) out.push_back(e.lovasz(x));
  return out;
}

SubmodularTransformation SubmodularTransformation::relabeled(
    std::span<const int> perm) const {
  if (static_cast<int>(perm.size()) != n()) {
    throw ValidationError("permutation size mismatch");
  }
  std::vector<EdgeFunction> edges;
  edges.reserve(edges_.size());
  for (const auto& e : edges_) {
    std::vector<int> sup;
    for (int v : e.support()) sup.push_back(perm[static_cast<std::size_t>(v)]);
    switch (e.kind()) {
      case EdgeKind::kUndirected:
        edges.push_back(EdgeFunction::undirected(sup[0], sup[1], e.weight()));
        break;
      case EdgeKind::kDirected:
        edges.push_back(EdgeFunction::directed(sup[0], sup[1], e.weight()));
        break;
      case EdgeKind::kHyper:
        edges.push_back(EdgeFunction::hyper(sup, e.weight()));
        break;
      case EdgeKind::kTable:
        edges.push_back(EdgeFunction::table(sup, e.values(), e.weight(), 30));
        break;
    }
  }
  GroundSet g{n(), {}};
  if (!ground_.labels.empty()) {
    g.labels.resize(ground_.labels.size());
    for (int v = 0; v < n(); ++v) {
      g.labels[static_cast<std::size_t>(perm[static_cast<std::size_t>(v)])] =
          ground_.labels[static_cast<std::size_t>(v)];
    }
  }
  return SubmodularTransformation(std::move(g), std::move(edges));
}

double evaluate(const EdgeFunction& fe, const VertexSet& s) {
  return fe.evaluate(s);
}

double lovasz_eval(const EdgeFunction& fe, std::span<const double> x) {
  for (int v : fe.support()) {
    if (v >= static_cast<int>(x.size())) {
      throw ValidationError("vertex index out of range");
    }
  }
  return fe.lovasz(x);
}

std::vector<int> rank_from_order(std::span<const int> order) {
  std::vector<int> rank(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    rank[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
  }
  return rank;
}

std::vector<int> rank_descending(std::span<const double> x) {
  std::vector<int> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (x[static_cast<std::size_t>(a)] != x[static_cast<std::size_t>(b)]) {
      return x[static_cast<std::size_t>(a)] > x[static_cast<std::size_t>(b)];
    }
    return a < b;
  });
  return rank_from_order(order);
}

std::vector<int> rank_descending(std::span<const double> x,
                                 std::span<const double> d) {
  std::vector<int> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(b);
    if (x[ua] != x[ub]) return x[ua] > x[ub];
    if (d[ua] != d[ub]) return d[ua] > d[ub];
    return a < b;
  });
  return rank_from_order(order);
}

BaseVector lovasz_subgradient(const EdgeFunction& fe, std::span<const double> x,
                              int edge_index) {
  const std::vector<int> rank = rank_descending(x);
  BaseVector out;
  out.w.assign(x.size(), 0.0);
  out.edge = edge_index;
  fe.add_greedy(rank, 1.0, out.w);
  out.order = fe.support();
  std::sort(out.order.begin(), out.order.end(), [&](int a, int b) {
    return rank[static_cast<std::size_t>(a)] < rank[static_cast<std::size_t>(b)];
  });
  return out;
}

std::vector<BaseVector> base_extreme_points(const EdgeFunction& fe, int n,
                                            int edge_index, int arity_bound) {
  const std::vector<int>& sup = fe.support();
  const int k = fe.arity();
  std::vector<BaseVector> out;
  auto push = [&](std::vector<int> order) {
    BaseVector bv;
    bv.w.assign(static_cast<std::size_t>(n), 0.0);
    bv.edge = edge_index;
    std::vector<int> rank(static_cast<std::size_t>(n), 0);
    for (std::size_t i = 0; i < order.size(); ++i) {
      rank[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
    }
    fe.add_greedy(rank, 1.0, bv.w);
    bv.order = std::move(order);
    out.push_back(std::move(bv));
  };
  switch (fe.kind()) {
    case EdgeKind::kUndirected:
      push({sup[0], sup[1]});
      push({sup[1], sup[0]});
      return out;
    case EdgeKind::kDirected:
      push({sup[1], sup[0]});  // zero vector
      push({sup[0], sup[1]});
      return out;
    case EdgeKind::kHyper:
      for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
          if (a == b) continue;
          std::vector<int> order{sup[static_cast<std::size_t>(a)]};
          for (int c = 0; c < k; ++c) {
            if (c != a && c != b) order.push_back(sup[static_cast<std::size_t>(c)]);
          }
          order.push_back(sup[static_cast<std::size_t>(b)]);
          push(std::move(order));
        }
      }
      return out;
    case EdgeKind::kTable: {
      if (k > arity_bound) {
        throw LimitExceeded("arity bound exceeded: support size " +
                            std::to_string(k) + " > " + std::to_string(arity_bound));
      }
      std::vector<int> perm = sup;
      std::sort(perm.begin(), perm.end());
      std::map<std::vector<double>, std::size_t> seen;
      do {
        BaseVector bv;
        bv.w.assign(static_cast<std::size_t>(n), 0.0);
        bv.edge = edge_index;
        std::vector<int> rank(static_cast<std::size_t>(n), 0);
        for (std::size_t i = 0; i < perm.size(); ++i) {
          rank[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
        }
        fe.add_greedy(rank, 1.0, bv.w);
        std::vector<double> key;
        for (int v : sup) key.push_back(bv.w[static_cast<std::size_t>(v)]);
        if (seen.emplace(key, out.size()).second) {
          bv.order = perm;
          out.push_back(std::move(bv));
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
      return out;
    }
  }
  return out;
}

double lovasz_directional(const EdgeFunction& fe, std::span<const double> x,
                          std::span<const double> d) {
  const std::vector<int>& sup = fe.support();
  std::vector<int> order = sup;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(b);
    if (x[ua] != x[ub]) return x[ua] > x[ub];
    if (d[ua] != d[ub]) return d[ua] > d[ub];
    return a < b;
  });
  // Local rank over the support only; add_greedy reads rank at support
  // vertices, so a sparse map through a small dense buffer is enough.
  double result = 0.0;
  switch (fe.kind()) {
    case EdgeKind::kUndirected:
    case EdgeKind::kHyper:
      result = d[static_cast<std::size_t>(order.front())] -
               d[static_cast<std::size_t>(order.back())];
      break;
    case EdgeKind::kDirected:
      result = order.front() == sup[0]
                   ? d[static_cast<std::size_t>(sup[0])] - d[static_cast<std::size_t>(sup[1])]
                   : 0.0;
      break;
    case EdgeKind::kTable: {
      std::uint32_t prefix = 0;
      double prev = 0.0;
      for (int v : order) {
        const auto pos = static_cast<std::uint32_t>(
            std::find(sup.begin(), sup.end(), v) - sup.begin());
        prefix |= 1U << pos;
        const double cur = fe.values()[prefix];
        result += d[static_cast<std::size_t>(v)] * (cur - prev);
        prev = cur;
      }
      break;
    }
  }
  return fe.weight() * result;
}

}  // namespace sublap
