#include "sublap/sfm.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sublap/flow.h"
#include "sublap/min_norm_point.h"

namespace sublap {
namespace {

double coef_at(std::span<const double> coef, std::size_t e) {
  return coef.empty() ? 1.0 : coef[e];
}

double modular_at(std::span<const double> modular, int v) {
  return modular.empty() ? 0.0 : modular[static_cast<std::size_t>(v)];
}

void check_inputs(const SubmodularTransformation& f, std::span<const double> coef,
                  std::span<const double> modular) {
  if (!coef.empty()) {
    if (coef.size() != f.edges().size()) throw ValidationError("coefficient count mismatch");
    for (double c : coef) {
      if (!(c >= 0.0) || !std::isfinite(c)) {
        throw ValidationError("SFM coefficients must be finite and nonnegative");
      }
    }
  }
  if (!modular.empty() && static_cast<int>(modular.size()) != f.n()) {
    throw ValidationError("modular term size mismatch");
  }
}

struct Partition {
  VertexSet include;
  VertexSet exclude;
  std::vector<int> free;
};

Partition partition(int n, const SfmRestriction& r) {
  Partition p{r.must_include.universe() ? r.must_include : VertexSet(n),
              r.must_exclude.universe() ? r.must_exclude : VertexSet(n),
              {}};
  if (p.include.universe() != n || p.exclude.universe() != n) {
    throw ValidationError("restriction universe mismatch");
  }
  for (int v = 0; v < n; ++v) {
    if (p.include.contains(v) && p.exclude.contains(v)) {
      throw ValidationError("restriction infeasible: vertex " + std::to_string(v) +
                            " is both included and excluded");
    }
    if (!p.include.contains(v) && !p.exclude.contains(v)) p.free.push_back(v);
  }
  return p;
}

// Greedy marginals of G along the full order (include, free_order, exclude).
Vector greedy_marginals(const SubmodularTransformation& f, std::span<const double> coef,
                        std::span<const double> modular, const Partition& p,
                        std::span<const int> free_order) {
  const int n = f.n();
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n));
  for (int v : p.include.members()) order.push_back(v);
  for (int v : free_order) order.push_back(v);
  for (int v : p.exclude.members()) order.push_back(v);
  const std::vector<int> rank = rank_from_order(order);
  Vector w(static_cast<std::size_t>(n), 0.0);
  for (std::size_t e = 0; e < f.edges().size(); ++e) {
    f.edges()[e].add_greedy(rank, coef_at(coef, e), w);
  }
  for (int v = 0; v < n; ++v) w[static_cast<std::size_t>(v)] += modular_at(modular, v);
  return w;
}

SfmResult solve_min_norm(const SubmodularTransformation& f, std::span<const double> coef,
                         std::span<const double> modular, const Partition& p,
                         const SfmOptions& options) {
  const std::size_t m = p.free.size();
  SfmResult out;
  out.backend = SfmBackend::kMinNormPoint;
  const double base_value = sfm_objective(f, coef, modular, p.include);
  if (m == 0) {
    out.value = base_value;
    out.minimal = out.maximal = p.include;
    return out;
  }
  auto order_by = [&](std::span<const double> key) {
    std::vector<int> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
      return key[static_cast<std::size_t>(a)] < key[static_cast<std::size_t>(b)];
    });
    std::vector<int> order;
    order.reserve(m);
    for (int i : idx) order.push_back(p.free[static_cast<std::size_t>(i)]);
    return order;
  };
  auto restrict_to_free = [&](const Vector& w) {
    Vector y(m);
    for (std::size_t i = 0; i < m; ++i) y[i] = w[static_cast<std::size_t>(p.free[i])];
    return y;
  };
  LinearOracle lmo = [&](std::span<const double> g) {
    return restrict_to_free(greedy_marginals(f, coef, modular, p, order_by(g)));
  };
  const Vector zero(m, 0.0);
  MinNormOptions mo;
  mo.tolerance = options.tolerance;
  mo.max_iterations = options.max_iterations;
  MinNormResult mn = min_norm_point(lmo, lmo(zero), mo);
  out.iterations = mn.iterations;
  out.converged = mn.converged;

  // Candidate minimizers are the prefixes of the free set sorted by x*.
  const std::vector<int> order = order_by(mn.x);
  const Vector w = greedy_marginals(f, coef, modular, p, order);
  Vector prefix(m + 1, base_value);
  double scale = std::abs(base_value);
  for (std::size_t i = 0; i < m; ++i) {
    prefix[i + 1] = prefix[i] + w[static_cast<std::size_t>(order[i])];
    scale = std::max(scale, std::abs(prefix[i + 1]));
  }
  const double best = *std::min_element(prefix.begin(), prefix.end());
  const double tol = 1e-9 * (1.0 + scale);
  std::size_t lo = m, hi = 0;
  for (std::size_t i = 0; i <= m; ++i) {
    if (prefix[i] <= best + tol) {
      lo = std::min(lo, i);
      hi = std::max(hi, i);
    }
  }
  out.value = best;
  out.minimal = p.include;
  out.maximal = p.include;
  for (std::size_t i = 0; i < hi; ++i) {
    if (i < lo) out.minimal.insert(order[i]);
    out.maximal.insert(order[i]);
  }
  return out;
}

SfmResult solve_min_cut(const SubmodularTransformation& f, std::span<const double> coef,
                        std::span<const double> modular, const Partition& p) {
  const int n = f.n();
  const int s = n, t = n + 1;
  FlowNetwork net(n + 2, s, t);
  for (std::size_t e = 0; e < f.edges().size(); ++e) {
    const EdgeFunction& fe = f.edges()[e];
    const double c = coef_at(coef, e) * fe.weight();
    if (c == 0.0) continue;
    const auto& sup = fe.support();
    switch (fe.kind()) {
      case EdgeKind::kUndirected:
        net.add_arc(sup[0], sup[1], c);
        net.add_arc(sup[1], sup[0], c);
        break;
      case EdgeKind::kDirected:
        net.add_arc(sup[0], sup[1], c);
        break;
      case EdgeKind::kHyper:
        if (sup.size() == 2) {
          net.add_arc(sup[0], sup[1], c);
          net.add_arc(sup[1], sup[0], c);
        } else {
          const int a = net.add_node();
          const int a2 = net.add_node();
          for (int v : sup) net.add_arc(v, a, kInfiniteCapacity);
          net.add_arc(a, a2, c);
          for (int v : sup) net.add_arc(a2, v, kInfiniteCapacity);
        }
        break;
      case EdgeKind::kTable:
        throw ValidationError("min-cut SFM backend does not support table edges");
    }
  }
  for (int v = 0; v < n; ++v) {
    const double m = modular_at(modular, v);
    if (m > 0.0) {
      net.add_arc(v, t, m);
    } else if (m < 0.0) {
      net.add_arc(s, v, -m);
    }
    if (p.include.contains(v)) net.add_arc(s, v, kInfiniteCapacity);
    if (p.exclude.contains(v)) net.add_arc(v, t, kInfiniteCapacity);
  }
  const MaxFlowResult mf = max_flow_min_cut(net);
  if (mf.unbounded) throw ValidationError("restriction infeasible");
  SfmResult out;
  out.backend = SfmBackend::kMinCut;
  out.minimal = VertexSet(n);
  out.maximal = VertexSet(n);
  for (int v = 0; v < n; ++v) {
    if (mf.min_source_side[static_cast<std::size_t>(v)]) out.minimal.insert(v);
    if (mf.max_source_side[static_cast<std::size_t>(v)]) out.maximal.insert(v);
  }
  // Report the exact objective of the returned set rather than the flow value.
  out.value = sfm_objective(f, coef, modular, out.minimal);
  return out;
}

}  // namespace

double sfm_objective(const SubmodularTransformation& f, std::span<const double> coef,
                     std::span<const double> modular, const VertexSet& s) {
  double total = 0.0;
  for (std::size_t e = 0; e < f.edges().size(); ++e) {
    const double c = coef_at(coef, e);
    if (c != 0.0) total += c * f.edges()[e].evaluate(s);
  }
  for (int v : s.members()) total += modular_at(modular, v);
  return total;
}

SfmResult sfm(const SubmodularTransformation& f, std::span<const double> coef,
              std::span<const double> modular, const SfmRestriction& restriction,
              const SfmOptions& options) {
  check_inputs(f, coef, modular);
  const Partition p = partition(f.n(), restriction);
  SfmBackend backend = options.backend;
  if (backend == SfmBackend::kAuto) {
    backend = f.is_cut_only() ? SfmBackend::kMinCut : SfmBackend::kMinNormPoint;
  }
  if (backend == SfmBackend::kMinCut) return solve_min_cut(f, coef, modular, p);
  return solve_min_norm(f, coef, modular, p, options);
}

}  // namespace sublap
