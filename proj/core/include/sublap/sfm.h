#ifndef SUBLAP_SFM_H_
#define SUBLAP_SFM_H_

#include <span>

#include "sublap/common.h"
#include "sublap/submodular.h"

namespace sublap {

enum class SfmBackend { kAuto, kMinNormPoint, kMinCut };

// Elements forced into / out of every candidate set. Empty sets (universe 0)
// mean no restriction.
struct SfmRestriction {
  VertexSet must_include;
  VertexSet must_exclude;
};

struct SfmOptions {
  SfmBackend backend = SfmBackend::kAuto;
  double tolerance = 1e-10;  // min-norm-point gap
  int max_iterations = 100000;
};

struct SfmResult {
  double value = 0.0;
  VertexSet minimal;  // unique inclusion-minimal minimizer
  VertexSet maximal;  // unique inclusion-maximal minimizer
  bool converged = true;
  int iterations = 0;
  SfmBackend backend = SfmBackend::kAuto;
};

// G(S) = sum_e coef[e] * F_e(S) + modular(S). Empty `coef` means all ones;
// empty `modular` means zero. Coefficients must be nonnegative.
double sfm_objective(const SubmodularTransformation& f,
                     std::span<const double> coef,
                     std::span<const double> modular, const VertexSet& s);

// Minimizes G over subsets respecting the restriction. The min-cut backend
// applies when F has no Table edges.
SfmResult sfm(const SubmodularTransformation& f, std::span<const double> coef,
              std::span<const double> modular,
              const SfmRestriction& restriction = {},
              const SfmOptions& options = {});

}  // namespace sublap

#endif  // SUBLAP_SFM_H_
