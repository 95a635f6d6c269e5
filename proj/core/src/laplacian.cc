#include "sublap/laplacian.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "descent.h"
#include "sublap/sfm.h"

namespace sublap {

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kIterationLimit: return "iteration_limit";
  }
  return "unknown";
}

long effective_max_iterations(const SolverConfig& cfg, int n, int m) {
  if (cfg.max_iterations) {
    if (*cfg.max_iterations < 1) throw ValidationError("max_iterations must be >= 1");
    return *cfg.max_iterations;
  }
  const long v = 50L * n * std::max(m, 1);
  return std::clamp(v, 100L, 1000000L);
}

namespace {

void check_sizes(const SubmodularTransformation& f, std::span<const double> v, const char* what) {
  if (static_cast<int>(v.size()) != f.n()) {
    throw ValidationError(std::string(what) + " must have n = " + std::to_string(f.n()) +
                          " entries, got " + std::to_string(v.size()));
  }
  for (double a : v) {
    if (!std::isfinite(a)) throw ValidationError(std::string(what) + " must be finite");
  }
}

void center(Vector& x) {
  if (x.empty()) return;
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  for (double& v : x) v -= mean;
}

// Best multiple t >= 0 of x: t = <b,x> / sum f^2.
void ray_scale(const SubmodularTransformation& f, std::span<const double> b, Vector& x) {
  const double e = energy(f, x);
  const double bx = dot(b, x);
  if (e <= 0.0) return;
  const double t = std::max(bx / e, 0.0);
  for (double& v : x) v *= t;
}

}  // namespace

Vector apply(const SubmodularTransformation& f, std::span<const double> x) {
  check_sizes(f, x, "x");
  const std::vector<int> rank = rank_descending(x);
  Vector y(x.size(), 0.0);
  for (const auto& fe : f.edges()) {
    const double v = fe.lovasz(x);
    if (v != 0.0) fe.add_greedy(rank, v, y);
  }
  return y;
}

double energy(const SubmodularTransformation& f, std::span<const double> x) {
  double total = 0.0;
  for (const auto& fe : f.edges()) {
    const double v = fe.lovasz(x);
    total += v * v;
  }
  return total;
}

double objective(const SubmodularTransformation& f, std::span<const double> b,
                 std::span<const double> x) {
  return 0.5 * energy(f, x) - dot(b, x);
}

Certificate certify(const SubmodularTransformation& f, std::span<const double> b,
                    std::span<const double> x, double tolerance) {
  check_sizes(f, b, "b");
  check_sizes(f, x, "x");
  const Vector phi = f.lovasz(x);
  Vector neg_b(b.begin(), b.end());
  for (double& v : neg_b) v = -v;
  const SfmResult r = sfm(f, phi, neg_b);
  Certificate c;
  c.separation = r.value;
  c.dual_feasible = r.value >= -tolerance * (1.0 + norm1(b));
  if (!c.dual_feasible) c.violating_set = r.minimal;
  c.gap = norm2_squared(phi) - dot(b, x);
  return c;
}

FeasibilityReport check_feasible(const DistributiveLattice& kernel, std::span<const double> b) {
  if (static_cast<int>(b.size()) != kernel.n()) throw ValidationError("b size mismatch");
  const double tol = 1e-12 * (1.0 + norm1(b));
  FeasibilityReport rep;
  const IdealValue best = max_weight_ideal(kernel, b);
  rep.lattice_max = best.value;
  double total = 0.0;
  for (double v : b) total += v;
  rep.balanced = std::abs(total) <= tol;
  if (best.value > tol) {
    rep.feasible = false;
    rep.certificate = best.ideal;
  } else if (!rep.balanced) {
    rep.feasible = false;
    rep.certificate = VertexSet::full(kernel.n());
  }
  return rep;
}

FeasibilityReport check_feasible(const SubmodularTransformation& f, std::span<const double> b) {
  check_sizes(f, b, "b");
  return check_feasible(kernel(f), b);
}

double inclusion_residual(const SubmodularTransformation& f, std::span<const double> b,
                          std::span<const double> x, double tau) {
  check_sizes(f, b, "b");
  check_sizes(f, x, "x");
  const detail::DescentProblem p{f, b, {}};
  return std::sqrt(norm2_squared(detail::min_norm_subgradient(p, x, tau)));
}

Solution solve_system(const SubmodularTransformation& f, std::span<const double> b,
                      const SolverConfig& cfg) {
  check_sizes(f, b, "b");
  if (!(cfg.tolerance > 0.0)) throw ValidationError("tolerance must be positive");
  if (cfg.certificate_cadence < 1) throw ValidationError("certificate cadence must be >= 1");
  const int n = f.n();
  const auto nn = static_cast<std::size_t>(n);
  const long max_iter = effective_max_iterations(cfg, n, f.edge_count());

  Solution sol;
  const FeasibilityReport feas = check_feasible(f, b);
  if (!feas.feasible) {
    sol.status = SolveStatus::kInfeasible;
    sol.certificate = feas.certificate;
    sol.x.assign(nn, 0.0);
    sol.phi.assign(f.edges().size(), 0.0);
    sol.gap = std::numeric_limits<double>::infinity();
    return sol;
  }

  Vector x0(nn, 0.0);
  if (!cfg.initial.empty()) {
    check_sizes(f, cfg.initial, "initial point");
    x0 = cfg.initial;
  } else if (cfg.seed) {
    std::mt19937_64 rng(*cfg.seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (double& v : x0) v = dist(rng);
  }

  Certificate last;
  const detail::DescentProblem prob{f, b, {}};
  auto converged = [&](Vector& x, double& value) {
    Vector y = x;
    center(y);
    ray_scale(f, b, y);
    const double vy = objective(f, b, y);
    if (vy <= value + 1e-14 * (1.0 + std::abs(value))) {
      x = std::move(y);
      value = vy;
    }
    last = certify(f, b, x, cfg.tolerance);
    return last.dual_feasible && last.gap <= cfg.tolerance * (1.0 + std::abs(value));
  };
  detail::DescentResult res =
      detail::descend(prob, std::move(x0), max_iter, cfg.certificate_cadence, converged);
  if (!res.converged) converged(res.x, res.value);

  sol.x = std::move(res.x);
  sol.phi = f.lovasz(sol.x);
  sol.objective = objective(f, b, sol.x);
  sol.gap = last.gap;
  sol.dual_feasible = last.dual_feasible;
  sol.separation = last.separation;
  sol.iterations = res.iterations;
  sol.status = res.converged ? SolveStatus::kOptimal : SolveStatus::kIterationLimit;
  if (!res.converged && last.dual_feasible &&
      last.gap <= cfg.tolerance * (1.0 + std::abs(sol.objective))) {
    sol.status = SolveStatus::kOptimal;
  }
  return sol;
}

}  // namespace sublap
