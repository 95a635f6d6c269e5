#include "sublap/quadratic_flow.h"

#include <algorithm>
#include <cmath>

#include "sublap/flow.h"
#include "sublap/nnls.h"

namespace sublap {
namespace {

void check_b(const SubmodularTransformation& f, std::span<const double> b) {
  if (static_cast<int>(b.size()) != f.n()) throw ValidationError("b size mismatch");
}

Vector unit_pair(int n, int u, int v) {
  Vector w(static_cast<std::size_t>(n), 0.0);
  w[static_cast<std::size_t>(u)] = 1.0;
  w[static_cast<std::size_t>(v)] = -1.0;
  return w;
}

std::vector<FlowTerm> nonzero_extreme_points(const SubmodularTransformation& f, int arity_bound) {
  std::vector<FlowTerm> terms;
  for (int e = 0; e < f.edge_count(); ++e) {
    const EdgeFunction& fe = f.edges()[static_cast<std::size_t>(e)];
    if (fe.weight() == 0.0) continue;
    for (BaseVector& bv : base_extreme_points(fe, f.n(), e, arity_bound)) {
      if (norm_inf(bv.w) == 0.0) continue;
      terms.push_back(FlowTerm{e, std::move(bv.w), 0.0});
    }
  }
  return terms;
}

}  // namespace

std::optional<FlowAssignment> feasible_flow(const SubmodularTransformation& f,
                                            std::span<const double> b) {
  check_b(f, b);
  if (!f.is_cut_only()) throw ValidationError("feasible_flow needs a cut-only transformation");
  const int n = f.n();
  const int s = n, t = n + 1;
  FlowNetwork net(n + 2, s, t);
  struct ArcTerm {
    int arc, edge, u, v;
  };
  std::vector<ArcTerm> arc_terms;
  for (int e = 0; e < f.edge_count(); ++e) {
    const EdgeFunction& fe = f.edges()[static_cast<std::size_t>(e)];
    if (fe.weight() == 0.0) continue;
    const auto& sup = fe.support();
    auto add = [&](int u, int v) {
      arc_terms.push_back({net.add_arc(u, v, kInfiniteCapacity), e, u, v});
    };
    if (fe.kind() == EdgeKind::kDirected) {
      add(sup[0], sup[1]);
    } else {
      for (int u : sup) {
        for (int v : sup) {
          if (u != v) add(u, v);
        }
      }
    }
  }
  double supply = 0.0, demand = 0.0;
  for (int v = 0; v < n; ++v) {
    const double bv = b[static_cast<std::size_t>(v)];
    if (bv > 0.0) {
      net.add_arc(s, v, bv);
      supply += bv;
    } else if (bv < 0.0) {
      net.add_arc(v, t, -bv);
      demand -= bv;
    }
  }
  const double tol = 1e-9 * (1.0 + supply + demand);
  if (std::abs(supply - demand) > tol) return std::nullopt;
  const MaxFlowResult mf = max_flow_min_cut(net);
  if (mf.unbounded || mf.value < supply - tol) return std::nullopt;
  FlowAssignment out;
  out.edge_totals.assign(f.edges().size(), 0.0);
  for (const ArcTerm& at : arc_terms) {
    const double flow = mf.flow[static_cast<std::size_t>(at.arc)];
    if (flow <= 0.0) continue;
    out.terms.push_back(FlowTerm{at.edge, unit_pair(n, at.u, at.v), flow});
    out.edge_totals[static_cast<std::size_t>(at.edge)] += flow;
  }
  return out;
}

FlowDualResult quadratic_flow_dual(const SubmodularTransformation& f, std::span<const double> b,
                                   const SolverConfig& cfg, int arity_bound) {
  check_b(f, b);
  for (const auto& fe : f.edges()) {
    if (fe.arity() > arity_bound) {
      throw LimitExceeded("arity bound exceeded: edge of arity " + std::to_string(fe.arity()));
    }
  }
  if (f.is_cut_only()) {
    if (!feasible_flow(f, b)) throw InfeasibleError("no flow meets the boundary b");
  } else if (!check_feasible(f, b).feasible) {
    throw InfeasibleError("no flow meets the boundary b");
  }

  const int n = f.n();
  const int m = f.edge_count();
  std::vector<FlowTerm> terms = nonzero_extreme_points(f, arity_bound);
  const int cols = static_cast<int>(terms.size());
  FlowDualResult res;
  res.flow.edge_totals.assign(static_cast<std::size_t>(m), 0.0);
  Vector lambda(static_cast<std::size_t>(n), 0.0);

  if (cols > 0 && norm_inf(b) > 0.0) {
    // Augmented Lagrangian; each subproblem is an exact NNLS.
    double rho = 1.0;
    double prev_res = std::numeric_limits<double>::infinity();
    Vector phi(static_cast<std::size_t>(cols), 0.0);
    const double target = 1e-12 * (1.0 + norm_inf(b));
    for (res.iterations = 1; res.iterations <= 200; ++res.iterations) {
      DenseMatrix a(m + n, cols);
      Vector y(static_cast<std::size_t>(m + n), 0.0);
      const double sr = std::sqrt(rho);
      for (int j = 0; j < cols; ++j) {
        const FlowTerm& term = terms[static_cast<std::size_t>(j)];
        a(term.edge, j) = 1.0;
        for (int v = 0; v < n; ++v) a(m + v, j) = sr * term.w[static_cast<std::size_t>(v)];
      }
      for (int v = 0; v < n; ++v) {
        const auto vv = static_cast<std::size_t>(v);
        y[static_cast<std::size_t>(m + v)] = sr * (b[vv] + lambda[vv] / rho);
      }
      phi = nnls(a, y).x;
      Vector r(static_cast<std::size_t>(n));
      for (int v = 0; v < n; ++v) r[static_cast<std::size_t>(v)] = -b[static_cast<std::size_t>(v)];
      for (int j = 0; j < cols; ++j) {
        const FlowTerm& term = terms[static_cast<std::size_t>(j)];
        for (int v = 0; v < n; ++v) {
          r[static_cast<std::size_t>(v)] += phi[static_cast<std::size_t>(j)] * term.w[static_cast<std::size_t>(v)];
        }
      }
      for (int v = 0; v < n; ++v) lambda[static_cast<std::size_t>(v)] -= rho * r[static_cast<std::size_t>(v)];
      const double rn = norm_inf(r);
      if (rn <= target) {
        res.converged = true;
        break;
      }
      if (rn > 0.25 * prev_res) rho = std::min(rho * 10.0, 1e10);
      prev_res = rn;
    }
    for (int j = 0; j < cols; ++j) terms[static_cast<std::size_t>(j)].value = phi[static_cast<std::size_t>(j)];
  } else {
    res.converged = true;
  }

  Vector boundary(static_cast<std::size_t>(n), 0.0);
  for (FlowTerm& term : terms) {
    if (term.value <= 0.0) continue;
    res.flow.edge_totals[static_cast<std::size_t>(term.edge)] += term.value;
    for (int v = 0; v < n; ++v) {
      boundary[static_cast<std::size_t>(v)] += term.value * term.w[static_cast<std::size_t>(v)];
    }
    res.flow.terms.push_back(std::move(term));
  }
  for (int v = 0; v < n; ++v) boundary[static_cast<std::size_t>(v)] -= b[static_cast<std::size_t>(v)];
  res.boundary_residual = norm_inf(boundary);
  res.objective = 0.5 * norm2_squared(res.flow.edge_totals);

  SolverConfig warm = cfg;
  warm.initial = lambda;
  const Solution sol = solve_system(f, b, warm);
  res.x = sol.x;
  res.solve_status = sol.status;
  for (int e = 0; e < m; ++e) {
    res.consistency = std::max(res.consistency,
                               std::abs(sol.phi[static_cast<std::size_t>(e)] -
                                        res.flow.edge_totals[static_cast<std::size_t>(e)]));
  }
  return res;
}

double flow_boundary_residual(const SubmodularTransformation& f, std::span<const double> x,
                              std::span<const double> edge_totals, std::span<const double> b,
                              const std::vector<bool>& on, int arity_bound) {
  const int n = f.n();
  const int m = f.edge_count();
  if (static_cast<int>(x.size()) != n || static_cast<int>(b.size()) != n ||
      static_cast<int>(edge_totals.size()) != m || static_cast<int>(on.size()) != n) {
    throw ValidationError("flow_boundary_residual: size mismatch");
  }
  std::vector<FlowTerm> active;
  for (int e = 0; e < m; ++e) {
    const EdgeFunction& fe = f.edges()[static_cast<std::size_t>(e)];
    if (edge_totals[static_cast<std::size_t>(e)] <= 0.0 || fe.weight() == 0.0) continue;
    const double fx = fe.lovasz(x);
    const double tol = 1e-9 * (1.0 + std::abs(fx)) * (1.0 + norm_inf(x));
    for (BaseVector& bv : base_extreme_points(fe, n, e, arity_bound)) {
      if (dot(bv.w, x) >= fx - tol) active.push_back(FlowTerm{e, std::move(bv.w), 0.0});
    }
  }
  std::vector<int> rows_v;
  for (int v = 0; v < n; ++v) {
    if (on[static_cast<std::size_t>(v)]) rows_v.push_back(v);
  }
  const int cols = static_cast<int>(active.size());
  const int rv = static_cast<int>(rows_v.size());
  // Edge-total equalities are enforced by heavily weighted rows whose
  // right-hand side is corrected for the remaining violation.
  const double weight = 1e3;
  Vector target(edge_totals.begin(), edge_totals.end());
  Vector phi(static_cast<std::size_t>(cols), 0.0);
  for (int round = 0; round < 8; ++round) {
    DenseMatrix a(m + rv, cols);
    Vector y(static_cast<std::size_t>(m + rv), 0.0);
    for (int j = 0; j < cols; ++j) {
      const FlowTerm& t = active[static_cast<std::size_t>(j)];
      a(t.edge, j) = weight;
      for (int i = 0; i < rv; ++i) a(m + i, j) = t.w[static_cast<std::size_t>(rows_v[static_cast<std::size_t>(i)])];
    }
    for (int e = 0; e < m; ++e) y[static_cast<std::size_t>(e)] = weight * target[static_cast<std::size_t>(e)];
    for (int i = 0; i < rv; ++i) {
      y[static_cast<std::size_t>(m + i)] = b[static_cast<std::size_t>(rows_v[static_cast<std::size_t>(i)])];
    }
    phi = nnls(a, y).x;
    Vector totals(static_cast<std::size_t>(m), 0.0);
    for (int j = 0; j < cols; ++j) {
      totals[static_cast<std::size_t>(active[static_cast<std::size_t>(j)].edge)] += phi[static_cast<std::size_t>(j)];
    }
    double worst = 0.0;
    for (int e = 0; e < m; ++e) {
      const auto ee = static_cast<std::size_t>(e);
      target[ee] += edge_totals[ee] - totals[ee];
      worst = std::max(worst, std::abs(edge_totals[ee] - totals[ee]));
    }
    if (worst <= 1e-13 * (1.0 + norm_inf(edge_totals))) break;
  }
  double residual = 0.0;
  for (int v : rows_v) {
    double s = -b[static_cast<std::size_t>(v)];
    for (int j = 0; j < cols; ++j) {
      s += phi[static_cast<std::size_t>(j)] * active[static_cast<std::size_t>(j)].w[static_cast<std::size_t>(v)];
    }
    residual = std::max(residual, std::abs(s));
  }
  return residual;
}

}  // namespace sublap
