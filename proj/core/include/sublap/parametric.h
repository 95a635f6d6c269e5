#ifndef SUBLAP_PARAMETRIC_H_
#define SUBLAP_PARAMETRIC_H_

#include <vector>

#include "sublap/common.h"
#include "sublap/flow.h"

namespace sublap {

// Network on nodes 0..nodes-1 plus an implicit source and sink. Node u has
// source capacity max(b(u) - alpha * slope(u), 0) and sink capacity
// max(alpha * slope(u) - b(u), 0); interior arcs are constant. Source
// capacities fall and sink capacities grow with alpha.
struct ParametricCapacity {
  int nodes = 0;
  Vector b;
  Vector slope;              // empty means all ones; entries must be > 0
  std::vector<Arc> interior;  // endpoints in 0..nodes-1
};

struct ParametricCut {
  // Sorted parameter values where the minimal minimizer changes.
  std::vector<double> breakpoints;
  // minimizers[i] is the minimal minimizer on (breakpoints[i-1], breakpoints[i])
  // with the outer intervals reaching alpha_lo and alpha_hi. The chain is
  // nested: later entries are subsets of earlier ones.
  std::vector<std::vector<bool>> minimizers;
};

// Cut capacity of source side `side` at alpha, minus the constant sum of
// source capacities: sum_{u in side} (alpha * slope(u) - b(u)) + interior(side).
double parametric_value(const ParametricCapacity& pc, double alpha,
                        const std::vector<bool>& side);

// Minimal minimizer at a single alpha; `must_in` / `must_out` contract nodes
// to the source / sink side (may be null).
std::vector<bool> parametric_minimizer(const ParametricCapacity& pc, double alpha,
                                       const std::vector<bool>* must_in = nullptr,
                                       const std::vector<bool>* must_out = nullptr);

// All breakpoints in (alpha_lo, alpha_hi) by divide and conquer on the
// intersections of the cut lines, contracting nodes known to lie inside or
// outside by nesting.
ParametricCut parametric_min_cut(const ParametricCapacity& pc, double alpha_lo,
                                 double alpha_hi);

}  // namespace sublap

#endif  // SUBLAP_PARAMETRIC_H_
