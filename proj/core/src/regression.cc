#include "sublap/regression.h"

#include <algorithm>
#include <cmath>

#include "sublap/laplacian.h"
#include "sublap/nnls.h"
#include "sublap/parametric.h"

namespace sublap {

std::string to_string(RegressionMethod method) {
  switch (method) {
    case RegressionMethod::kFrankWolfe: return "fw";
    case RegressionMethod::kCombinatorial: return "exact";
    case RegressionMethod::kBruteForce: return "oracle";
  }
  return "unknown";
}

std::string to_string(RegressionMode mode) {
  return mode == RegressionMode::kPolyhedron ? "polyhedron" : "base";
}

namespace {

void check_b(const DistributiveLattice& lattice, std::span<const double> b) {
  if (static_cast<int>(b.size()) != lattice.n()) throw ValidationError("b size mismatch");
  for (double v : b) {
    if (!std::isfinite(v)) throw ValidationError("b must be finite");
  }
}

void finish(RegressionResult& r, std::span<const double> b) {
  r.z.resize(r.p.size());
  r.b_prime.resize(r.p.size());
  for (std::size_t v = 0; v < r.p.size(); ++v) {
    if (r.p[v] == 0.0) r.p[v] = 0.0;  // no negative zeros
    r.z[v] = r.p[v] == 0.0 ? 0.0 : -r.p[v];
    r.b_prime[v] = b[v] + r.p[v];
  }
}

bool already_feasible(const DistributiveLattice& lattice, std::span<const double> b,
                      RegressionMode mode) {
  const FeasibilityReport rep = check_feasible(lattice, b);
  return mode == RegressionMode::kPolyhedron ? rep.lattice_max <= 1e-12 * (1.0 + norm1(b))
                                             : rep.feasible;
}

}  // namespace

RegressionResult regress_combinatorial(const DistributiveLattice& lattice,
                                       std::span<const double> b, RegressionMode mode) {
  check_b(lattice, b);
  if (!lattice.forced_in().empty() || !lattice.forced_out().empty()) {
    throw ValidationError("regression needs a lattice containing the empty set and V");
  }
  const int n = lattice.n();
  const int k = lattice.class_count();
  RegressionResult r;
  r.method = RegressionMethod::kCombinatorial;
  r.mode = mode;

  ParametricCapacity pc;
  pc.nodes = k;
  pc.b.assign(static_cast<std::size_t>(k), 0.0);
  pc.slope.assign(static_cast<std::size_t>(k), 0.0);
  for (int c = 0; c < k; ++c) {
    for (int v : lattice.classes()[static_cast<std::size_t>(c)]) {
      pc.b[static_cast<std::size_t>(c)] += b[static_cast<std::size_t>(v)];
      pc.slope[static_cast<std::size_t>(c)] += 1.0;
    }
  }
  for (const auto& [i, j] : lattice.hasse_arcs()) pc.interior.push_back(Arc{j, i, kInfiniteCapacity});
  const double lo = *std::min_element(b.begin(), b.end()) - 1.0;
  const double hi = *std::max_element(b.begin(), b.end()) + 1.0;
  const ParametricCut cut = parametric_min_cut(pc, lo, hi);

  r.breakpoints = cut.breakpoints;
  for (const auto& side : cut.minimizers) {
    VertexSet s(n);
    for (int c = 0; c < k; ++c) {
      if (!side[static_cast<std::size_t>(c)]) continue;
      for (int v : lattice.classes()[static_cast<std::size_t>(c)]) s.insert(v);
    }
    r.chain.push_back(std::move(s));
  }
  r.p.assign(static_cast<std::size_t>(n), 0.0);
  if (!already_feasible(lattice, b, mode)) {
    for (int v = 0; v < n; ++v) {
      // sup{alpha : v in A^alpha}
      double sup = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < r.chain.size(); ++i) {
        if (r.chain[i].contains(v)) sup = i < r.breakpoints.size() ? r.breakpoints[i] : hi;
      }
      const double z = mode == RegressionMode::kPolyhedron ? std::max(sup, 0.0) : sup;
      r.p[static_cast<std::size_t>(v)] = -z;
    }
  }
  finish(r, b);
  return r;
}

RegressionResult regress_frank_wolfe(const DistributiveLattice& lattice,
                                     std::span<const double> b, int k_max) {
  check_b(lattice, b);
  if (k_max < 0) throw ValidationError("iteration count must be nonnegative");
  const int n = lattice.n();
  const auto nn = static_cast<std::size_t>(n);
  const double beta = std::max(*std::max_element(b.begin(), b.end()), 0.0);
  LmoRegion region;
  region.lower.assign(nn, -beta);
  region.upper.assign(nn, 0.0);

  RegressionResult r;
  r.method = RegressionMethod::kFrankWolfe;
  r.mode = RegressionMode::kPolyhedron;
  const Vector zero(nn, 0.0);
  Vector p = greedy_lmo(lattice, b, zero, region);
  Vector grad(nn);
  for (int k = 0; k < k_max; ++k) {
    for (std::size_t v = 0; v < nn; ++v) grad[v] = 2.0 * p[v];
    const Vector s = greedy_lmo(lattice, b, grad, region);
    FrankWolfeStep step;
    step.objective = norm2_squared(p);
    step.step = 2.0 / (k + 2.0);
    for (std::size_t v = 0; v < nn; ++v) {
      step.gap += grad[v] * (p[v] - s[v]);
      step.sq_dist += (s[v] - p[v]) * (s[v] - p[v]);
    }
    r.trace.push_back(step);
    for (std::size_t v = 0; v < nn; ++v) p[v] += step.step * (s[v] - p[v]);
  }
  FrankWolfeStep last;
  last.objective = norm2_squared(p);
  r.trace.push_back(last);
  r.iterations = k_max;
  r.gap_bound = 4.0 * n * norm2_squared(b) / (k_max + 1.0);
  r.p = std::move(p);
  finish(r, b);
  return r;
}

RegressionResult brute_force_regress(const DistributiveLattice& lattice,
                                     std::span<const double> b, RegressionMode mode,
                                     std::size_t limit) {
  check_b(lattice, b);
  const int n = lattice.n();
  std::vector<VertexSet> members = enumerate(lattice, limit);
  // Constraints g^T p >= h with g = -1_S, h = b(S); the base form adds
  // g = 1_V, h = -b(V).
  std::vector<std::pair<Vector, double>> rows;
  for (const VertexSet& s : members) {
    if (s.empty()) continue;
    Vector g(static_cast<std::size_t>(n), 0.0);
    for (int v : s.members()) g[static_cast<std::size_t>(v)] = -1.0;
    rows.emplace_back(std::move(g), s.sum(b));
  }
  if (mode == RegressionMode::kBase) {
    double total = 0.0;
    for (double v : b) total += v;
    rows.emplace_back(Vector(static_cast<std::size_t>(n), 1.0), -total);
  }
  RegressionResult r;
  r.method = RegressionMethod::kBruteForce;
  r.mode = mode;
  r.p.assign(static_cast<std::size_t>(n), 0.0);
  if (!rows.empty() && !already_feasible(lattice, b, mode)) {
    // Least distance programming through NNLS:
    // min ||E u - f|| with E = [G^T; h^T], f = e_{n+1}; p = -r_{1..n} / r_{n+1}.
    const int m = static_cast<int>(rows.size());
    DenseMatrix e(n + 1, m);
    for (int j = 0; j < m; ++j) {
      const auto& [g, h] = rows[static_cast<std::size_t>(j)];
      for (int v = 0; v < n; ++v) e(v, j) = g[static_cast<std::size_t>(v)];
      e(n, j) = h;
    }
    Vector f(static_cast<std::size_t>(n + 1), 0.0);
    f[static_cast<std::size_t>(n)] = 1.0;
    const NnlsResult sol = nnls(e, f, 20 * m + 100);
    r.iterations = sol.iterations;
    Vector res(static_cast<std::size_t>(n + 1), 0.0);
    for (int i = 0; i <= n; ++i) res[static_cast<std::size_t>(i)] = -f[static_cast<std::size_t>(i)];
    for (int j = 0; j < m; ++j) {
      const double u = sol.x[static_cast<std::size_t>(j)];
      if (u == 0.0) continue;
      for (int i = 0; i <= n; ++i) res[static_cast<std::size_t>(i)] += e(i, j) * u;
    }
    const double denom = res[static_cast<std::size_t>(n)];
    if (std::abs(denom) < 1e-300) throw InfeasibleError("regression constraints are inconsistent");
    for (int v = 0; v < n; ++v) r.p[static_cast<std::size_t>(v)] = -res[static_cast<std::size_t>(v)] / denom;
  }
  finish(r, b);
  return r;
}

}  // namespace sublap
