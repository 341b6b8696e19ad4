#pragma once

#include <cstdint>
#include <vector>

#include "core/transition.hpp"

namespace urank {

// Row-major square matrix. Only used for small dense work (ground-truth
// solves and operator norms), which is capped at kDenseCap elsewhere.
class DenseMatrix {
 public:
  explicit DenseMatrix(Vertex n);

  Vertex dim() const { return n_; }
  double& at(Vertex i, Vertex j) {
    return a_[static_cast<std::size_t>(i * n_ + j)];
  }
  double at(Vertex i, Vertex j) const {
    return a_[static_cast<std::size_t>(i * n_ + j)];
  }

 private:
  Vertex n_ = 0;
  std::vector<double> a_;
};

// I - c*A^T, materialized entrywise from the sparse matrix.
DenseMatrix dense_difference_operator(const RowStochasticMatrix& a, double c);

// Gaussian elimination with partial pivoting. Throws on a (numerically)
// singular matrix, which for the matrices used here would indicate a bug:
// I - c*A^T is strictly diagonally dominant by columns for c < 1.
std::vector<double> solve_dense(DenseMatrix m, std::vector<double> rhs);
DenseMatrix invert_dense(DenseMatrix m);

// Operator norm induced by the L1 vector norm: max absolute column sum.
double l1_operator_norm(const DenseMatrix& m);

}  // namespace urank
