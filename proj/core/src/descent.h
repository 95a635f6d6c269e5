#ifndef SUBLAP_SRC_DESCENT_H_
#define SUBLAP_SRC_DESCENT_H_

#include <functional>
#include <span>
#include <vector>

#include "sublap/common.h"
#include "sublap/submodular.h"

namespace sublap::detail {

// minimize J(x) = 1/2 sum_e f_e(x)^2 - sum_{v free} b(v) x(v) over the free
// coordinates; the others stay at their initial values.
struct DescentProblem {
  const SubmodularTransformation& f;
  std::span<const double> b;
  std::vector<bool> free;  // empty means every coordinate is free

  bool is_free(int v) const { return free.empty() || free[static_cast<std::size_t>(v)]; }
};

double objective(const DescentProblem& p, std::span<const double> x);

struct LineSearchResult {
  double t = 0.0;
  double value = 0.0;
  bool unbounded = false;
};

// Exact minimizer over t >= 0 of the convex piecewise quadratic J(x + t d).
LineSearchResult exact_line_search(const DescentProblem& p, std::span<const double> x,
                                   std::span<const double> d);

// Support positions of fe ordered by x descending; entries within `tau` of
// their neighbour form tie groups, ordered internally by g ascending.
void tie_rank(const EdgeFunction& fe, std::span<const double> x, std::span<const double> g,
              double tau, std::vector<int>& rank);

// Minimum-norm element (on the free coordinates, zero elsewhere) of
//   sum_e f_e(x) * face_e(x; tau) - b,
// where face_e treats coordinates within tau as tied.
Vector min_norm_subgradient(const DescentProblem& p, std::span<const double> x, double tau);

// Newton point of the quadratic model obtained by merging coordinates tied
// within tau. Returns false if the model is degenerate.
bool newton_candidate(const DescentProblem& p, std::span<const double> x, double tau,
                      Vector& out);

struct DescentResult {
  Vector x;
  double value = 0.0;
  long iterations = 0;
  bool converged = false;
};

// `converged` may replace x by a point with no larger objective and returns
// true to stop. It is called every `cadence` iterations and on stalls.
using ConvergenceCheck = std::function<bool(Vector& x, double& value)>;

DescentResult descend(const DescentProblem& p, Vector x0, long max_iterations, int cadence,
                      const ConvergenceCheck& converged);

}  // namespace sublap::detail

#endif  // SUBLAP_SRC_DESCENT_H_
