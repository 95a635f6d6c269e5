#ifndef SUBLAP_NNLS_H_
#define SUBLAP_NNLS_H_

#include <span>

#include "sublap/common.h"

namespace sublap {

// Dense column-major matrix.
struct DenseMatrix {
  int rows = 0;
  int cols = 0;
  Vector data;

  DenseMatrix() = default;
  DenseMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}
  double& operator()(int i, int j) { return data[static_cast<std::size_t>(j) * rows + i]; }
  double operator()(int i, int j) const { return data[static_cast<std::size_t>(j) * rows + i]; }
};

struct NnlsResult {
  Vector x;
  double residual = 0.0;  // ||A x - y||_2
  int iterations = 0;
  bool converged = false;
};

// Lawson-Hanson active set method for min ||A x - y|| subject to x >= 0.
NnlsResult nnls(const DenseMatrix& a, std::span<const double> y, int max_iterations = 0);

}  // namespace sublap

#endif  // SUBLAP_NNLS_H_
