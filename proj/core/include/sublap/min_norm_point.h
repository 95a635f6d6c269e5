#ifndef SUBLAP_MIN_NORM_POINT_H_
#define SUBLAP_MIN_NORM_POINT_H_

#include <functional>
#include <span>
#include <vector>

#include "sublap/common.h"

namespace sublap {

// Returns argmin_{y in P} <g, y> for a polytope P.
using LinearOracle = std::function<Vector(std::span<const double> g)>;

struct MinNormOptions {
  double tolerance = 1e-10;  // on ||x||^2 - <x, q>, relative to the point scale
  int max_iterations = 100000;
};

struct MinNormResult {
  Vector x;
  std::vector<Vector> corral;  // active extreme points
  Vector weights;              // convex weights of `corral`
  int iterations = 0;
  bool converged = false;
};

// Wolfe's algorithm for the minimum-norm point of P, started at `start`
// (which must be a point returned by the oracle).
MinNormResult min_norm_point(const LinearOracle& lmo, Vector start,
                             const MinNormOptions& options = {});

}  // namespace sublap

#endif  // SUBLAP_MIN_NORM_POINT_H_
