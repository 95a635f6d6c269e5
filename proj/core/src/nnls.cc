#include "sublap/nnls.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace sublap {

NnlsResult nnls(const DenseMatrix& a, std::span<const double> y, int max_iterations) {
  if (static_cast<int>(y.size()) != a.rows) throw ValidationError("nnls: size mismatch");
  const int m = a.rows, n = a.cols;
  if (max_iterations <= 0) max_iterations = 3 * n + 10;
  NnlsResult out;
  if (n == 0 || m == 0) {
    out.x.assign(static_cast<std::size_t>(n), 0.0);
    out.residual = std::sqrt(norm2_squared(y));
    out.converged = true;
    return out;
  }
  const Eigen::Map<const Eigen::MatrixXd> A(a.data.data(), m, n);
  const Eigen::Map<const Eigen::VectorXd> Y(y.data(), m);

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  std::vector<bool> passive(static_cast<std::size_t>(n), false);
  // Columns that re-entered without making progress; cleared on progress.
  std::vector<bool> blocked(static_cast<std::size_t>(n), false);
  const double tol = 1e-13 * (1.0 + A.cwiseAbs().maxCoeff()) * (1.0 + Y.norm());

  auto solve_passive = [&](Eigen::VectorXd& s) {
    std::vector<int> idx;
    for (int j = 0; j < n; ++j) {
      if (passive[static_cast<std::size_t>(j)]) idx.push_back(j);
    }
    s = Eigen::VectorXd::Zero(n);
    if (idx.empty()) return;
    Eigen::MatrixXd ap(m, static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) ap.col(static_cast<Eigen::Index>(k)) = A.col(idx[k]);
    const Eigen::VectorXd z = ap.completeOrthogonalDecomposition().solve(Y);
    for (std::size_t k = 0; k < idx.size(); ++k) s(idx[k]) = z(static_cast<Eigen::Index>(k));
  };

  for (out.iterations = 0; out.iterations < max_iterations; ++out.iterations) {
    const Eigen::VectorXd w = A.transpose() * (Y - A * x);
    int best = -1;
    double best_w = tol;
    for (int j = 0; j < n; ++j) {
      if (!passive[static_cast<std::size_t>(j)] && !blocked[static_cast<std::size_t>(j)] &&
          w(j) > best_w) {
        best_w = w(j);
        best = j;
      }
    }
    if (best < 0) {
      out.converged = true;
      break;
    }
    passive[static_cast<std::size_t>(best)] = true;
    Eigen::VectorXd s;
    for (int inner = 0; inner <= n; ++inner) {
      solve_passive(s);
      bool ok = true;
      for (int j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && s(j) <= 0.0) ok = false;
      }
      if (ok) break;
      double alpha = 1.0;
      for (int j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && s(j) <= 0.0) {
          const double denom = x(j) - s(j);
          if (denom > 0.0) alpha = std::min(alpha, x(j) / denom);
        }
      }
      x += alpha * (s - x);
      for (int j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && x(j) <= 1e-15) {
          passive[static_cast<std::size_t>(j)] = false;
          x(j) = 0.0;
        }
      }
    }
    for (int j = 0; j < n; ++j) {
      x(j) = passive[static_cast<std::size_t>(j)] ? std::max(s(j), 0.0) : 0.0;
    }
    if (passive[static_cast<std::size_t>(best)]) {
      std::fill(blocked.begin(), blocked.end(), false);
    } else {
      blocked[static_cast<std::size_t>(best)] = true;
    }
  }
  out.x.assign(x.data(), x.data() + n);
  out.residual = (A * x - Y).norm();
  return out;
}

}  // namespace sublap
