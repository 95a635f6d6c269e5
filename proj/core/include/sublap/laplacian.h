#ifndef SUBLAP_LAPLACIAN_H_
#define SUBLAP_LAPLACIAN_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "sublap/common.h"
#include "sublap/lattice.h"
#include "sublap/submodular.h"

namespace sublap {

enum class SolveStatus { kOptimal, kInfeasible, kIterationLimit };

std::string to_string(SolveStatus status);

struct SolverConfig {
  // Duality-gap threshold relative to 1 + |J|; also the dual separation
  // threshold relative to 1 + ||b||_1.
  double tolerance = 1e-8;
  // Default: min(50 |V| |E|, 10^6), at least 100.
  std::optional<long> max_iterations;
  // Iterations between certificate checks.
  int certificate_cadence = 10;
  // Random initial point in [-1, 1]^V when set and no warm start is given.
  std::optional<std::uint64_t> seed;
  // Warm start (empty for none).
  Vector initial;
};

long effective_max_iterations(const SolverConfig& cfg, int n, int m);

struct Solution {
  Vector x;
  Vector phi;  // phi(e) = f_e(x)
  double objective = 0.0;
  double gap = 0.0;
  SolveStatus status = SolveStatus::kOptimal;
  long iterations = 0;
  bool dual_feasible = false;
  double separation = 0.0;  // min_X sum_e phi(e) F_e(X) - b(X)
  std::optional<VertexSet> certificate;  // violating set when infeasible
};

struct Certificate {
  double gap = 0.0;
  bool dual_feasible = false;
  double separation = 0.0;
  std::optional<VertexSet> violating_set;
};

struct FeasibilityReport {
  bool feasible = true;
  std::optional<VertexSet> certificate;
  double lattice_max = 0.0;  // max over S in ker(F) of b(S)
  bool balanced = true;      // b(V) = 0 within tolerance
};

// Canonical member sum_e w_e <w_e, x> of L_F(x).
Vector apply(const SubmodularTransformation& f, std::span<const double> x);

// sum_e f_e(x)^2
double energy(const SubmodularTransformation& f, std::span<const double> x);

// J(x) = 1/2 sum_e f_e(x)^2 - <b, x>
double objective(const SubmodularTransformation& f, std::span<const double> b,
                 std::span<const double> x);

// Dual certificate for phi = f(x): separation by SFM and the gap
// J(x) + 1/2 ||phi||^2.
Certificate certify(const SubmodularTransformation& f, std::span<const double> b,
                    std::span<const double> x, double tolerance = 1e-8);

// The system L_F(x) contains b for some x iff b(S) <= 0 for all S in ker(F)
// and b(V) = 0.
FeasibilityReport check_feasible(const SubmodularTransformation& f, std::span<const double> b);
FeasibilityReport check_feasible(const DistributiveLattice& kernel, std::span<const double> b);

// Norm of the minimum-norm element of sum_e f_e(x) df_e(x) - b, treating
// coordinates within tau as tied.
double inclusion_residual(const SubmodularTransformation& f, std::span<const double> b,
                          std::span<const double> x, double tau = 1e-9);

Solution solve_system(const SubmodularTransformation& f, std::span<const double> b,
                      const SolverConfig& cfg = {});

}  // namespace sublap

#endif  // SUBLAP_LAPLACIAN_H_
