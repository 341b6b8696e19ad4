#include "core/dense.hpp"

#include <cmath>
#include <utility>

#include "core/error.hpp"

namespace urank {

DenseMatrix::DenseMatrix(Vertex n) : n_(n) {
  if (n < 1)
    fail(ErrorCode::invalid_argument, "dense matrix dimension must be positive");
  a_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
}

DenseMatrix dense_difference_operator(const RowStochasticMatrix& a, double c) {
  DenseMatrix m(a.dim());
  for (Vertex i = 0; i < a.dim(); ++i) m.at(i, i) = 1.0;
  a.for_each_entry([&](Vertex i, Vertex j, double value) {
    m.at(j, i) -= c * value;  // (A^T)_{ji} = A_{ij}
  });
  return m;
}

namespace {

struct LuFactors {
  DenseMatrix lu;
  std::vector<Vertex> pivot;  // pivot row chosen at each elimination step
};

LuFactors lu_factor(DenseMatrix m) {
  const Vertex n = m.dim();
  std::vector<Vertex> pivot(static_cast<std::size_t>(n));
  for (Vertex k = 0; k < n; ++k) {
    Vertex best = k;
    double best_abs = std::fabs(m.at(k, k));
    for (Vertex i = k + 1; i < n; ++i) {
      const double v = std::fabs(m.at(i, k));
      if (v > best_abs) {
        best = i;
        best_abs = v;
      }
    }
    if (!(best_abs > 0.0))
      fail(ErrorCode::internal, "dense solve hit a singular pivot");
    pivot[static_cast<std::size_t>(k)] = best;
    if (best != k)
      for (Vertex j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(best, j));
    const double inv_pivot = 1.0 / m.at(k, k);
    for (Vertex i = k + 1; i < n; ++i) {
      const double factor = m.at(i, k) * inv_pivot;
      m.at(i, k) = factor;
      if (factor == 0.0) continue;
      for (Vertex j = k + 1; j < n; ++j) m.at(i, j) -= factor * m.at(k, j);
    }
  }
  return {std::move(m), std::move(pivot)};
}

std::vector<double> lu_solve(const LuFactors& f, std::vector<double> b) {
  const Vertex n = f.lu.dim();
  for (Vertex k = 0; k < n; ++k) {
    const Vertex p = f.pivot[static_cast<std::size_t>(k)];
    if (p != k)
      std::swap(b[static_cast<std::size_t>(k)], b[static_cast<std::size_t>(p)]);
    for (Vertex i = k + 1; i < n; ++i)
      b[static_cast<std::size_t>(i)] -=
          f.lu.at(i, k) * b[static_cast<std::size_t>(k)];
  }
  for (Vertex i = n - 1; i >= 0; --i) {
    double sum = b[static_cast<std::size_t>(i)];
    for (Vertex j = i + 1; j < n; ++j)
      sum -= f.lu.at(i, j) * b[static_cast<std::size_t>(j)];
    b[static_cast<std::size_t>(i)] = sum / f.lu.at(i, i);
  }
  return b;
}

}  // namespace

std::vector<double> solve_dense(DenseMatrix m, std::vector<double> rhs) {
  if (static_cast<Vertex>(rhs.size()) != m.dim())
    fail(ErrorCode::dimension_mismatch,
         "dense solve: right-hand side length does not match the matrix");
  return lu_solve(lu_factor(std::move(m)), std::move(rhs));
}

DenseMatrix invert_dense(DenseMatrix m) {
  const Vertex n = m.dim();
  const LuFactors f = lu_factor(std::move(m));
  DenseMatrix inverse(n);
  std::vector<double> unit(static_cast<std::size_t>(n), 0.0);
  for (Vertex j = 0; j < n; ++j) {
    unit.assign(static_cast<std::size_t>(n), 0.0);
    unit[static_cast<std::size_t>(j)] = 1.0;
    const std::vector<double> column = lu_solve(f, unit);
    for (Vertex i = 0; i < n; ++i)
      inverse.at(i, j) = column[static_cast<std::size_t>(i)];
  }
  return inverse;
}

double l1_operator_norm(const DenseMatrix& m) {
  double best = 0.0;
  for (Vertex j = 0; j < m.dim(); ++j) {
    double column_sum = 0.0;
    for (Vertex i = 0; i < m.dim(); ++i) column_sum += std::fabs(m.at(i, j));
    best = std::max(best, column_sum);
  }
  return best;
}

}  // namespace urank
