#ifndef SUBLAP_QUADRATIC_FLOW_H_
#define SUBLAP_QUADRATIC_FLOW_H_

#include <optional>
#include <span>
#include <vector>

#include "sublap/common.h"
#include "sublap/laplacian.h"
#include "sublap/submodular.h"

namespace sublap {

// phi(e, w) for one extreme point w of B(F_e).
struct FlowTerm {
  int edge = -1;
  Vector w;  // dense over V
  double value = 0.0;
};

struct FlowAssignment {
  std::vector<FlowTerm> terms;
  Vector edge_totals;  // sum_w phi(e, w)
};

struct FlowDualResult {
  FlowAssignment flow;
  Vector x;                        // potentials recovered by solve_system
  double objective = 0.0;          // 1/2 sum_e edge_totals(e)^2
  double boundary_residual = 0.0;  // || sum phi(e,w) w - b ||_inf
  double consistency = 0.0;        // max_e |f_e(x) - edge_totals(e)|
  int iterations = 0;
  bool converged = false;
  SolveStatus solve_status = SolveStatus::kOptimal;
};

// Boundary-constrained flow for cut-only F with flow supplies b, from max
// flow on the network with an arc u -> v of infinite capacity for each
// extreme point e_u - e_v. Returns nullopt if no flow meets b.
std::optional<FlowAssignment> feasible_flow(const SubmodularTransformation& f,
                                            std::span<const double> b);

// min 1/2 sum_e (sum_w phi(e,w))^2 subject to sum phi(e,w) w = b, phi >= 0,
// over the enumerated extreme points of every B(F_e). Throws
// InfeasibleError when no flow meets b.
FlowDualResult quadratic_flow_dual(const SubmodularTransformation& f,
                                   std::span<const double> b,
                                   const SolverConfig& cfg = {},
                                   int arity_bound = kDefaultArityBound);

// Smallest || (sum phi(e,w) w - b) restricted to `on` ||_inf over
// decompositions of the edge totals onto extreme points in the face of
// B(F_e) at x (those with <w, x> = f_e(x)).
double flow_boundary_residual(const SubmodularTransformation& f, std::span<const double> x,
                              std::span<const double> edge_totals, std::span<const double> b,
                              const std::vector<bool>& on,
                              int arity_bound = kDefaultArityBound);

}  // namespace sublap

#endif  // SUBLAP_QUADRATIC_FLOW_H_
