#include "sublap/min_norm_point.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace sublap {
namespace {

// argmin ||sum a_i s_i|| subject to sum a_i = 1.
Eigen::VectorXd affine_minimizer(const std::vector<Vector>& pts) {
  const auto m = static_cast<Eigen::Index>(pts.size());
  const auto d = static_cast<Eigen::Index>(pts.front().size());
  Eigen::MatrixXd s(d, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) s(i, j) = pts[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
  }
  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(m + 1, m + 1);
  kkt.topLeftCorner(m, m) = s.transpose() * s;
  kkt.block(0, m, m, 1).setOnes();
  kkt.block(m, 0, 1, m).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
  rhs(m) = 1.0;
  Eigen::VectorXd sol = kkt.completeOrthogonalDecomposition().solve(rhs);
  return sol.head(m);
}

Vector combine(const std::vector<Vector>& pts, std::span<const double> w) {
  Vector x(pts.front().size(), 0.0);
  for (std::size_t j = 0; j < pts.size(); ++j) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += w[j] * pts[j][i];
  }
  return x;
}

}  // namespace

MinNormResult min_norm_point(const LinearOracle& lmo, Vector start,
                             const MinNormOptions& options) {
  MinNormResult r;
  r.corral.push_back(std::move(start));
  r.weights = {1.0};
  r.x = r.corral.front();
  if (r.x.empty()) {
    r.converged = true;
    return r;
  }
  double scale = std::max(1.0, norm2_squared(r.x));
  const double weight_eps = 1e-14;

  for (r.iterations = 0; r.iterations < options.max_iterations; ++r.iterations) {
    Vector q = lmo(r.x);
    scale = std::max(scale, norm2_squared(q));
    const double gap = norm2_squared(r.x) - dot(r.x, q);
    if (gap <= options.tolerance * scale) {
      r.converged = true;
      return r;
    }
    bool duplicate = false;
    for (const Vector& s : r.corral) {
      Vector diff(s.size());
      for (std::size_t i = 0; i < s.size(); ++i) diff[i] = s[i] - q[i];
      if (norm_inf(diff) <= 1e-15 * (1.0 + norm_inf(q))) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) {
      // No progress possible in floating point; x is as good as it gets.
      r.converged = gap <= 1e-6 * scale;
      return r;
    }
    r.corral.push_back(std::move(q));
    r.weights.push_back(0.0);

    for (int minor = 0; minor < 1000; ++minor) {
      const Eigen::VectorXd alpha = affine_minimizer(r.corral);
      bool interior = true;
      for (Eigen::Index j = 0; j < alpha.size(); ++j) {
        if (alpha(j) <= weight_eps) {
          interior = false;
          break;
        }
      }
      if (interior) {
        for (std::size_t j = 0; j < r.weights.size(); ++j) r.weights[j] = alpha(static_cast<Eigen::Index>(j));
        break;
      }
      double theta = 1.0;
      for (std::size_t j = 0; j < r.weights.size(); ++j) {
        const double a = alpha(static_cast<Eigen::Index>(j));
        if (a <= weight_eps && r.weights[j] - a > 0.0) {
          theta = std::min(theta, r.weights[j] / (r.weights[j] - a));
        }
      }
      for (std::size_t j = 0; j < r.weights.size(); ++j) {
        r.weights[j] = (1.0 - theta) * r.weights[j] + theta * alpha(static_cast<Eigen::Index>(j));
      }
      const auto heaviest = static_cast<std::size_t>(
          std::max_element(r.weights.begin(), r.weights.end()) - r.weights.begin());
      std::vector<Vector> kept;
      Vector kept_w;
      for (std::size_t j = 0; j < r.weights.size(); ++j) {
        if (r.weights[j] > weight_eps || j == heaviest) {
          kept.push_back(std::move(r.corral[j]));
          kept_w.push_back(std::max(r.weights[j], weight_eps));
        }
      }
      double total = 0.0;
      for (double w : kept_w) total += w;
      for (double& w : kept_w) w /= total;
      r.corral = std::move(kept);
      r.weights = std::move(kept_w);
    }
    r.x = combine(r.corral, r.weights);
  }
  return r;
}

}  // namespace sublap
