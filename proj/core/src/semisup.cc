#include "sublap/semisup.h"

#include <cmath>
#include <numeric>
#include <random>

#include "descent.h"
#include "sublap/lattice.h"

namespace sublap {

namespace {

void validate(const SubmodularTransformation& f, const LabeledProblem& lp) {
  const auto n = static_cast<std::size_t>(f.n());
  if (lp.fixed.universe() != f.n()) throw ValidationError("labeled set universe mismatch");
  if (lp.x_tilde.size() != n) throw ValidationError("x_tilde size mismatch");
  if (lp.b_tilde.size() != n) throw ValidationError("b_tilde size mismatch");
  for (std::size_t v = 0; v < n; ++v) {
    const bool in_t = lp.fixed.contains(static_cast<int>(v));
    if (in_t && !std::isfinite(lp.x_tilde[v])) throw ValidationError("x_tilde must be finite");
    if (!in_t && !std::isfinite(lp.b_tilde[v])) throw ValidationError("b_tilde must be finite");
  }
}

// Connected components of the hypergraph formed by edge supports.
std::vector<int> components(const SubmodularTransformation& f) {
  std::vector<int> parent(static_cast<std::size_t>(f.n()));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  };
  for (const EdgeFunction& e : f.edges()) {
    const auto& s = e.support();
    for (std::size_t i = 1; i < s.size(); ++i) parent[static_cast<std::size_t>(find(s[i]))] = find(s[0]);
  }
  std::vector<int> comp(static_cast<std::size_t>(f.n()));
  for (int v = 0; v < f.n(); ++v) comp[static_cast<std::size_t>(v)] = find(v);
  return comp;
}

double residual(const detail::DescentProblem& p, std::span<const double> x) {
  const double scale = 1.0 + norm_inf(x);
  double best = std::numeric_limits<double>::infinity();
  for (double tau : {0.0, 1e-12, 1e-10}) {
    best = std::min(best, std::sqrt(norm2_squared(detail::min_norm_subgradient(p, x, tau * scale))));
  }
  return best;
}

}  // namespace

LabeledSolution solve_labeled(const SubmodularTransformation& f, const LabeledProblem& lp,
                              const SolverConfig& cfg) {
  validate(f, lp);
  if (!(cfg.tolerance > 0.0)) throw ValidationError("tolerance must be positive");
  if (cfg.certificate_cadence < 1) throw ValidationError("certificate cadence must be >= 1");
  const int n = f.n();
  const auto nn = static_cast<std::size_t>(n);
  LabeledSolution out;
  Solution& sol = out.solution;

  std::vector<bool> free(nn);
  Vector b(nn, 0.0);
  Vector x0(nn, 0.0);
  for (int v = 0; v < n; ++v) {
    const auto i = static_cast<std::size_t>(v);
    free[i] = !lp.fixed.contains(v);
    if (free[i]) b[i] = lp.b_tilde[i];
    else x0[i] = lp.x_tilde[i];
  }

  // Unbounded iff some member S of ker(F) has S ∩ T = ∅ and b(S) > 0, or
  // S ⊇ T and b(U \ S) < 0.
  const DistributiveLattice ker = kernel(f);
  const double tol = 1e-12 * (1.0 + norm1(b));
  VertexSet unlabeled(n);
  for (int v = 0; v < n; ++v) {
    if (free[static_cast<std::size_t>(v)]) unlabeled.insert(v);
  }
  std::optional<VertexSet> violating;
  const IdealValue up = max_weight_ideal(ker, b, nullptr, &lp.fixed);
  if (up.value > tol) violating = up.ideal;
  if (!violating) {
    const IdealValue down = max_weight_ideal(ker, b, &lp.fixed, nullptr);
    if (down.value - unlabeled.sum(b) > tol) {
      VertexSet rest(n);
      for (int v : unlabeled.members()) {
        if (!down.ideal.contains(v)) rest.insert(v);
      }
      violating = rest;
    }
  }
  if (violating) {
    sol.status = SolveStatus::kInfeasible;
    sol.certificate = violating;
    sol.x = x0;
    sol.phi = f.lovasz(sol.x);
    sol.objective = detail::objective(detail::DescentProblem{f, b, free}, sol.x);
    sol.gap = std::numeric_limits<double>::infinity();
    out.boundary = sublap::apply(f, sol.x);
    out.residual = std::numeric_limits<double>::infinity();
    return out;
  }

  if (!cfg.initial.empty()) {
    if (cfg.initial.size() != nn) throw ValidationError("initial point size mismatch");
    for (std::size_t i = 0; i < nn; ++i) {
      if (free[i]) x0[i] = cfg.initial[i];
    }
  } else if (cfg.seed) {
    std::mt19937_64 rng(*cfg.seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (std::size_t i = 0; i < nn; ++i) {
      const double r = dist(rng);
      if (free[i]) x0[i] = r;
    }
  }

  const detail::DescentProblem prob{f, b, free};
  double last = std::numeric_limits<double>::infinity();
  auto converged = [&](Vector& x, double&) {
    last = residual(prob, x);
    return last <= cfg.tolerance;
  };
  detail::DescentResult res = detail::descend(
      prob, std::move(x0), effective_max_iterations(cfg, n, f.edge_count()),
      cfg.certificate_cadence, converged);
  if (!res.converged) converged(res.x, res.value);

  // Components that miss T keep the shift degeneracy; center them.
  const std::vector<int> comp = components(f);
  std::vector<bool> anchored(nn, false);
  for (int v : lp.fixed.members()) anchored[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])] = true;
  std::vector<double> total(nn, 0.0);
  std::vector<int> count(nn, 0);
  for (std::size_t v = 0; v < nn; ++v) {
    total[static_cast<std::size_t>(comp[v])] += res.x[v];
    ++count[static_cast<std::size_t>(comp[v])];
  }
  for (std::size_t v = 0; v < nn; ++v) {
    const auto c = static_cast<std::size_t>(comp[v]);
    if (!anchored[c]) res.x[v] -= total[c] / count[c];
  }
  for (int v : lp.fixed.members()) res.x[static_cast<std::size_t>(v)] = lp.x_tilde[static_cast<std::size_t>(v)];

  sol.x = std::move(res.x);
  sol.phi = f.lovasz(sol.x);
  sol.objective = detail::objective(prob, sol.x);
  sol.iterations = res.iterations;
  out.residual = residual(prob, sol.x);
  sol.gap = out.residual;
  sol.status = out.residual <= cfg.tolerance ? SolveStatus::kOptimal : SolveStatus::kIterationLimit;
  out.boundary = sublap::apply(f, sol.x);
  // Any tie inside an edge with nonzero value on T makes the T-part non-unique.
  for (std::size_t e = 0; e < f.edges().size() && out.boundary_unique; ++e) {
    if (sol.phi[e] == 0.0) continue;
    const auto& s = f.edges()[e].support();
    for (std::size_t i = 0; i < s.size() && out.boundary_unique; ++i) {
      for (std::size_t j = i + 1; j < s.size(); ++j) {
        if (sol.x[static_cast<std::size_t>(s[i])] == sol.x[static_cast<std::size_t>(s[j])]) {
          out.boundary_unique = false;
          break;
        }
      }
    }
  }
  return out;
}

std::vector<int> predict_labels(std::span<const double> x, const VertexSet& unlabeled,
                                double threshold) {
  std::vector<int> labels(x.size(), 0);
  for (int v : unlabeled.members()) {
    labels[static_cast<std::size_t>(v)] = x[static_cast<std::size_t>(v)] - threshold >= 0.0 ? 1 : -1;
  }
  return labels;
}

}  // namespace sublap
