#include "sublap/lattice.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sublap/flow.h"

namespace sublap {

DistributiveLattice::DistributiveLattice(int n, std::vector<std::vector<int>> classes,
                                         const std::vector<std::pair<int, int>>& relations,
                                         std::vector<int> forced_in,
                                         std::vector<int> forced_out)
    : n_(n), classes_(std::move(classes)) {
  if (n < 1) throw ValidationError("lattice ground set must be nonempty");
  const int k = static_cast<int>(classes_.size());
  class_of_.assign(static_cast<std::size_t>(n), -1);
  for (int c = 0; c < k; ++c) {
    auto& cls = classes_[static_cast<std::size_t>(c)];
    if (cls.empty()) throw ValidationError("lattice class " + std::to_string(c) + " is empty");
    std::sort(cls.begin(), cls.end());
    for (int v : cls) {
      if (v < 0 || v >= n) throw ValidationError("lattice class vertex out of range");
      if (class_of_[static_cast<std::size_t>(v)] != -1) {
        throw ValidationError("vertex " + std::to_string(v) + " appears in two classes");
      }
      class_of_[static_cast<std::size_t>(v)] = c;
    }
  }
  for (int v = 0; v < n; ++v) {
    if (class_of_[static_cast<std::size_t>(v)] == -1) {
      throw ValidationError("vertex " + std::to_string(v) + " is in no class");
    }
  }

  const auto kk = static_cast<std::size_t>(k);
  below_.assign(kk, std::vector<bool>(kk, false));
  for (std::size_t c = 0; c < kk; ++c) below_[c][c] = true;
  for (const auto& [i, j] : relations) {
    if (i < 0 || j < 0 || i >= k || j >= k) throw ValidationError("relation class out of range");
    below_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = true;
  }
  for (std::size_t m = 0; m < kk; ++m) {
    for (std::size_t j = 0; j < kk; ++j) {
      if (!below_[j][m]) continue;
      for (std::size_t i = 0; i < kk; ++i) {
        if (below_[m][i]) below_[j][i] = true;
      }
    }
  }
  for (std::size_t i = 0; i < kk; ++i) {
    for (std::size_t j = i + 1; j < kk; ++j) {
      if (below_[i][j] && below_[j][i]) {
        throw ValidationError("lattice order has a cycle between classes " +
                              std::to_string(i) + " and " + std::to_string(j));
      }
    }
  }

  status_.assign(kk, 0);
  for (int c : forced_in) {
    if (c < 0 || c >= k) throw ValidationError("forced class out of range");
    for (std::size_t i = 0; i < kk; ++i) {
      if (below_[static_cast<std::size_t>(c)][i]) status_[i] = 1;
    }
  }
  for (int c : forced_out) {
    if (c < 0 || c >= k) throw ValidationError("forced class out of range");
    for (std::size_t j = 0; j < kk; ++j) {
      if (below_[j][static_cast<std::size_t>(c)]) {
        if (status_[j] == 1) throw ValidationError("forced classes leave the lattice empty");
        status_[j] = -1;
      }
    }
  }
  for (int c = 0; c < k; ++c) {
    if (status_[static_cast<std::size_t>(c)] == 1) forced_in_.push_back(c);
    if (status_[static_cast<std::size_t>(c)] == -1) forced_out_.push_back(c);
  }

  for (std::size_t j = 0; j < kk; ++j) {
    for (std::size_t i = 0; i < kk; ++i) {
      if (i == j || !below_[j][i]) continue;
      bool covered = true;
      for (std::size_t m = 0; m < kk && covered; ++m) {
        if (m != i && m != j && below_[j][m] && below_[m][i]) covered = false;
      }
      if (covered) hasse_.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  }
  std::sort(hasse_.begin(), hasse_.end());

  topo_.resize(kk);
  std::iota(topo_.begin(), topo_.end(), 0);
  std::vector<int> depth(kk);
  for (std::size_t c = 0; c < kk; ++c) {
    depth[c] = static_cast<int>(std::count(below_[c].begin(), below_[c].end(), true));
  }
  std::stable_sort(topo_.begin(), topo_.end(), [&](int a, int b) {
    return depth[static_cast<std::size_t>(a)] < depth[static_cast<std::size_t>(b)];
  });
}

namespace {

// Smallest T containing s with F_e(T) = 0; modifies s in place. Returns
// true if s grew.
bool close_under(const EdgeFunction& fe, VertexSet& s) {
  if (fe.weight() == 0.0) return false;
  const auto& sup = fe.support();
  const int k = fe.arity();
  std::uint32_t local = 0;
  for (int i = 0; i < k; ++i) {
    if (s.contains(sup[static_cast<std::size_t>(i)])) local |= 1U << i;
  }
  const std::uint32_t full = (std::uint32_t{1} << k) - 1;
  std::uint32_t target = local;
  switch (fe.kind()) {
    case EdgeKind::kUndirected:
    case EdgeKind::kHyper:
      if (local != 0) target = full;
      break;
    case EdgeKind::kDirected:
      if (local & 1U) target = local | 2U;
      break;
    case EdgeKind::kTable: {
      target = full;
      for (std::uint32_t m = local;; m = (m + 1) | local) {
        if (fe.values()[m] == 0.0) target &= m;
        if (m == full) break;
      }
      break;
    }
  }
  if (target == local) return false;
  for (int i = 0; i < k; ++i) {
    if ((target >> i) & 1U) s.insert(sup[static_cast<std::size_t>(i)]);
  }
  return true;
}

}  // namespace

DistributiveLattice kernel(const SubmodularTransformation& f) {
  const int n = f.n();
  // closure[v] = minimal member of ker(F) containing v.
  std::vector<VertexSet> closure;
  closure.reserve(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    VertexSet s(n, {v});
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& fe : f.edges()) changed = close_under(fe, s) || changed;
    }
    closure.push_back(std::move(s));
  }
  std::vector<int> class_id(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<int>> classes;
  for (int v = 0; v < n; ++v) {
    if (class_id[static_cast<std::size_t>(v)] != -1) continue;
    const int c = static_cast<int>(classes.size());
    classes.push_back({});
    for (int u = v; u < n; ++u) {
      if (closure[static_cast<std::size_t>(v)].contains(u) &&
          closure[static_cast<std::size_t>(u)].contains(v)) {
        class_id[static_cast<std::size_t>(u)] = c;
        classes.back().push_back(u);
      }
    }
  }
  std::vector<std::pair<int, int>> relations;
  for (int v = 0; v < n; ++v) {
    for (int u : closure[static_cast<std::size_t>(v)].members()) {
      const int cu = class_id[static_cast<std::size_t>(u)];
      const int cv = class_id[static_cast<std::size_t>(v)];
      if (cu != cv) relations.emplace_back(cu, cv);
    }
  }
  std::sort(relations.begin(), relations.end());
  relations.erase(std::unique(relations.begin(), relations.end()), relations.end());
  return DistributiveLattice(n, std::move(classes), relations);
}

bool is_member(const DistributiveLattice& lattice, const VertexSet& s) {
  if (s.universe() != lattice.n()) return false;
  const int k = lattice.class_count();
  std::vector<bool> in(static_cast<std::size_t>(k), false);
  for (int c = 0; c < k; ++c) {
    const auto& cls = lattice.classes()[static_cast<std::size_t>(c)];
    const bool first = s.contains(cls.front());
    for (int v : cls) {
      if (s.contains(v) != first) return false;
    }
    in[static_cast<std::size_t>(c)] = first;
    if (lattice.is_forced_in(c) && !first) return false;
    if (lattice.is_forced_out(c) && first) return false;
  }
  for (int j = 0; j < k; ++j) {
    if (!in[static_cast<std::size_t>(j)]) continue;
    const auto& below = lattice.below(j);
    for (int i = 0; i < k; ++i) {
      if (below[static_cast<std::size_t>(i)] && !in[static_cast<std::size_t>(i)]) return false;
    }
  }
  return true;
}

namespace {

// Depth-first generation over classes in topological order. `visit`
// returns false to stop early.
template <typename Visit>
bool for_each_ideal(const DistributiveLattice& lattice, Visit&& visit) {
  const auto& topo = lattice.topological_order();
  const int k = lattice.class_count();
  std::vector<bool> in(static_cast<std::size_t>(k), false);
  std::vector<int> pred_count(static_cast<std::size_t>(k), 0);
  for (const auto& [i, j] : lattice.hasse_arcs()) {
    (void)i;
    ++pred_count[static_cast<std::size_t>(j)];
  }
  std::vector<std::vector<int>> preds(static_cast<std::size_t>(k));
  for (const auto& [i, j] : lattice.hasse_arcs()) preds[static_cast<std::size_t>(j)].push_back(i);

  auto rec = [&](auto&& self, std::size_t pos) -> bool {
    if (pos == topo.size()) return visit(in);
    const int c = topo[pos];
    const auto cu = static_cast<std::size_t>(c);
    if (!lattice.is_forced_in(c)) {
      if (!self(self, pos + 1)) return false;
    }
    if (lattice.is_forced_out(c)) return true;
    for (int p : preds[cu]) {
      if (!in[static_cast<std::size_t>(p)]) return true;
    }
    in[cu] = true;
    const bool keep = self(self, pos + 1);
    in[cu] = false;
    return keep;
  };
  return rec(rec, 0);
}

VertexSet ideal_from_classes(const DistributiveLattice& lattice, const std::vector<bool>& in) {
  VertexSet s(lattice.n());
  for (int c = 0; c < lattice.class_count(); ++c) {
    if (!in[static_cast<std::size_t>(c)]) continue;
    for (int v : lattice.classes()[static_cast<std::size_t>(c)]) s.insert(v);
  }
  return s;
}

}  // namespace

std::vector<VertexSet> enumerate(const DistributiveLattice& lattice, std::size_t limit) {
  std::vector<VertexSet> out;
  bool exceeded = false;
  for_each_ideal(lattice, [&](const std::vector<bool>& in) {
    if (out.size() >= limit) {
      exceeded = true;
      return false;
    }
    out.push_back(ideal_from_classes(lattice, in));
    return true;
  });
  if (exceeded) {
    throw LimitExceeded("lattice has more than " + std::to_string(limit) + " members");
  }
  std::sort(out.begin(), out.end(), [](const VertexSet& a, const VertexSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.members() < b.members();
  });
  return out;
}

std::optional<std::size_t> count_members(const DistributiveLattice& lattice, std::size_t limit) {
  std::size_t count = 0;
  const bool complete = for_each_ideal(lattice, [&](const std::vector<bool>&) {
    return ++count <= limit;
  });
  if (!complete) return std::nullopt;
  return count;
}

IdealValue max_weight_ideal(const DistributiveLattice& lattice, std::span<const double> weights,
                            const VertexSet* include, const VertexSet* exclude) {
  if (static_cast<int>(weights.size()) != lattice.n()) {
    throw ValidationError("weight vector size mismatch");
  }
  const int k = lattice.class_count();
  const int s = k, t = k + 1;
  FlowNetwork net(k + 2, s, t);
  std::vector<bool> force_in(static_cast<std::size_t>(k), false);
  std::vector<bool> force_out(static_cast<std::size_t>(k), false);
  for (int c = 0; c < k; ++c) {
    force_in[static_cast<std::size_t>(c)] = lattice.is_forced_in(c);
    force_out[static_cast<std::size_t>(c)] = lattice.is_forced_out(c);
  }
  if (include) {
    for (int v : include->members()) force_in[static_cast<std::size_t>(lattice.class_of(v))] = true;
  }
  if (exclude) {
    for (int v : exclude->members()) force_out[static_cast<std::size_t>(lattice.class_of(v))] = true;
  }
  for (int c = 0; c < k; ++c) {
    double w = 0.0;
    for (int v : lattice.classes()[static_cast<std::size_t>(c)]) w += weights[static_cast<std::size_t>(v)];
    if (!std::isfinite(w)) throw ValidationError("ideal weights must be finite");
    if (w > 0.0) net.add_arc(s, c, w);
    if (w < 0.0) net.add_arc(c, t, -w);
    if (force_in[static_cast<std::size_t>(c)]) net.add_arc(s, c, kInfiniteCapacity);
    if (force_out[static_cast<std::size_t>(c)]) net.add_arc(c, t, kInfiniteCapacity);
  }
  // A class in the ideal pulls in everything below it.
  for (const auto& [i, j] : lattice.hasse_arcs()) net.add_arc(j, i, kInfiniteCapacity);
  const MaxFlowResult mf = max_flow_min_cut(net);
  if (mf.unbounded) throw InfeasibleError("no lattice member satisfies the inclusion constraints");
  std::vector<bool> in(static_cast<std::size_t>(k));
  for (int c = 0; c < k; ++c) in[static_cast<std::size_t>(c)] = mf.min_source_side[static_cast<std::size_t>(c)];
  IdealValue out;
  out.ideal = ideal_from_classes(lattice, in);
  out.value = out.ideal.sum(weights);
  return out;
}

Vector greedy_lmo(const DistributiveLattice& lattice, std::span<const double> b,
                  std::span<const double> c, const LmoRegion& region) {
  const int n = lattice.n();
  const auto nn = static_cast<std::size_t>(n);
  if (b.size() != nn || c.size() != nn) throw ValidationError("LMO vector size mismatch");
  Vector lower(nn), upper(nn, kInfiniteCapacity);
  for (std::size_t v = 0; v < nn; ++v) lower[v] = region.lower.empty() ? -b[v] : region.lower[v];
  if (!region.upper.empty()) {
    if (region.upper.size() != nn) throw ValidationError("LMO upper bound size mismatch");
    upper = region.upper;
  }
  if (region.lower.size() != 0 && region.lower.size() != nn) {
    throw ValidationError("LMO lower bound size mismatch");
  }
  // Substitute y = x - lower: y >= 0, y <= m, y(T) <= a(T) for members T.
  Vector a(nn), m(nn);
  double scale = 1.0;
  for (std::size_t v = 0; v < nn; ++v) {
    if (upper[v] < lower[v]) throw InfeasibleError("LMO box is empty");
    a[v] = -b[v] - lower[v];
    m[v] = upper[v] - lower[v];
    scale += std::abs(a[v]);
  }
  Vector neg_a(nn);
  for (std::size_t v = 0; v < nn; ++v) neg_a[v] = -a[v];
  if (max_weight_ideal(lattice, neg_a).value > 1e-12 * scale) {
    throw InfeasibleError("LMO region is empty: some member S has lower(S) > -b(S)");
  }

  // rho(S) = min over members T of a(T) + m(S \ T).
  auto rho = [&](const VertexSet& s) {
    VertexSet must(n);
    Vector w(nn);
    double m_fin = 0.0;
    for (std::size_t v = 0; v < nn; ++v) {
      const bool in_s = s.contains(static_cast<int>(v));
      if (in_s && std::isinf(m[v])) {
        must.insert(static_cast<int>(v));
        w[v] = -a[v];
      } else {
        const double mv = in_s ? m[v] : 0.0;
        m_fin += mv;
        w[v] = mv - a[v];
      }
    }
    try {
      return m_fin - max_weight_ideal(lattice, w, &must).value;
    } catch (const InfeasibleError&) {
      return kInfiniteCapacity;
    }
  };

  std::vector<int> order;
  for (int v = 0; v < n; ++v) {
    if (-c[static_cast<std::size_t>(v)] > 0.0) order.push_back(v);
  }
  std::stable_sort(order.begin(), order.end(), [&](int u, int v) {
    return c[static_cast<std::size_t>(u)] < c[static_cast<std::size_t>(v)];
  });
  Vector x = lower;
  VertexSet s(n);
  double prev = 0.0;
  for (int v : order) {
    s.insert(v);
    const double r = rho(s);
    if (std::isinf(r)) throw InfeasibleError("linear minimization is unbounded on this region");
    x[static_cast<std::size_t>(v)] += std::max(r - prev, 0.0);
    prev = r;
  }
  return x;
}

}  // namespace sublap
