#ifndef SUBLAP_REGRESSION_H_
#define SUBLAP_REGRESSION_H_

#include <span>
#include <string>
#include <vector>

#include "sublap/common.h"
#include "sublap/lattice.h"

namespace sublap {

enum class RegressionMethod { kFrankWolfe, kCombinatorial, kBruteForce };

// kPolyhedron: min ||p||^2 s.t. (b+p)(S) <= 0 for all members S.
// kBase: additionally (b+p)(V) = 0, which makes L_F(x) ∋ b + p solvable.
enum class RegressionMode { kPolyhedron, kBase };

std::string to_string(RegressionMethod method);
std::string to_string(RegressionMode mode);

struct FrankWolfeStep {
  double objective = 0.0;  // ||p^k||^2
  double gap = 0.0;        // <grad f(p^k), p^k - s^k>
  double step = 0.0;       // 2 / (k + 2)
  double sq_dist = 0.0;    // ||s^k - p^k||^2
};

struct RegressionResult {
  Vector p;
  Vector z;  // -p
  Vector b_prime;
  // Nested chain: chain[i] is the minimal minimizer of -b(S) + alpha |S|
  // between breakpoints[i-1] and breakpoints[i].
  std::vector<double> breakpoints;
  std::vector<VertexSet> chain;
  RegressionMethod method = RegressionMethod::kCombinatorial;
  RegressionMode mode = RegressionMode::kPolyhedron;
  int iterations = 0;
  double gap_bound = 0.0;              // Frank-Wolfe: 4 |V| ||b||^2 / (k + 1)
  std::vector<FrankWolfeStep> trace;  // Frank-Wolfe: one entry per k
};

// Exact algorithm via parametric min cut over the classes of `lattice`.
RegressionResult regress_combinatorial(const DistributiveLattice& lattice,
                                       std::span<const double> b,
                                       RegressionMode mode = RegressionMode::kPolyhedron);

// Frank-Wolfe with step 2/(k+2) on the polyhedron form, over
//   {x : x(S) <= -b(S) for members S, -beta <= x <= 0}, beta = max(max b, 0),
// which contains the optimum.
RegressionResult regress_frank_wolfe(const DistributiveLattice& lattice,
                                     std::span<const double> b, int k_max);

// Least-distance QP over the enumerated member constraints.
RegressionResult brute_force_regress(const DistributiveLattice& lattice,
                                     std::span<const double> b,
                                     RegressionMode mode = RegressionMode::kPolyhedron,
                                     std::size_t limit = 4096);

}  // namespace sublap

#endif  // SUBLAP_REGRESSION_H_
