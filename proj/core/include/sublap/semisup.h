#ifndef SUBLAP_SEMISUP_H_
#define SUBLAP_SEMISUP_H_

#include <span>
#include <vector>

#include "sublap/common.h"
#include "sublap/laplacian.h"
#include "sublap/submodular.h"

namespace sublap {

// x is pinned to x_tilde on `fixed` (T); b_tilde is the boundary on the
// complement U. Both vectors have length n; entries outside their set are
// ignored.
struct LabeledProblem {
  VertexSet fixed;
  Vector x_tilde;
  Vector b_tilde;
};

struct LabeledSolution {
  // solution.gap holds the first-order residual on U.
  Solution solution;
  // Canonical member of L_F(x) on every vertex; on U it matches b_tilde up to
  // the residual. Subgradients may be non-unique at ties, so the values on T
  // are one valid choice.
  Vector boundary;
  double residual = 0.0;
  bool boundary_unique = true;
};

LabeledSolution solve_labeled(const SubmodularTransformation& f, const LabeledProblem& lp,
                              const SolverConfig& cfg = {});

// sign(x(v) - threshold) on `unlabeled`, ties mapped to +1; 0 elsewhere.
std::vector<int> predict_labels(std::span<const double> x, const VertexSet& unlabeled,
                                double threshold = 0.0);

}  // namespace sublap

#endif  // SUBLAP_SEMISUP_H_
