#include "core/solver.hpp"

#include <cmath>
#include <utility>

#include "core/dense.hpp"
#include "core/error.hpp"
#include "core/format.hpp"

namespace urank {

namespace {

double l1_diff(std::span<const double> x, std::span<const double> y) {
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += std::fabs(x[i] - y[i]);
  return sum;
}

void check_dims(const RowStochasticMatrix& a, const ProbabilityVector& v) {
  if (v.dim() != a.dim())
    fail(ErrorCode::dimension_mismatch,
         "personalization has dimension " + std::to_string(v.dim()) +
             ", matrix has " + std::to_string(a.dim()));
}

ProbabilityVector finalize(std::vector<double> x) {
  // A loose-tolerance stop can sit measurably off the simplex (the linear
  // route reaches unit sum only in the limit), so project back here; tight
  // solves land within 1e-12 of unit sum and keep their bits.
  double sum = 0.0;
  for (double value : x) sum += value;
  if (std::fabs(sum - 1.0) > 1e-12) {
    if (!(sum > 0.0))
      fail(ErrorCode::internal, "iterate collapsed to a nonpositive sum");
    for (double& value : x) value /= sum;
  }
  return ProbabilityVector::from_entries(std::move(x));
}

}  // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::power: return "power";
    case Method::linear: return "linear";
    case Method::dense_oracle: return "oracle";
  }
  return "?";
}

void PageRankConfig::validate() const {
  if (!(c > 0.0) || !(c < 1.0) || !std::isfinite(c))
    fail(ErrorCode::invalid_argument,
         "damping constant must satisfy 0 < c < 1, got " + format_real(c));
  if (!(tol > 0.0) || !std::isfinite(tol))
    fail(ErrorCode::invalid_argument,
         "tolerance must be positive, got " + format_real(tol));
  if (max_iter < 1)
    fail(ErrorCode::invalid_argument,
         "max_iter must be at least 1, got " + std::to_string(max_iter));
}

double linear_residual(const RowStochasticMatrix& a, double c,
                       std::span<const double> v, std::span<const double> pi) {
  const std::vector<double> t = a.apply_transposed(pi);
  double sum = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i)
    sum += std::fabs(pi[i] - c * t[i] - (1.0 - c) * v[i]);
  return sum;
}

PageRankResult pagerank_power(const RowStochasticMatrix& a,
                              const PageRankConfig& cfg,
                              const ProbabilityVector& v,
                              const IterationObserver& observer) {
  cfg.validate();
  check_dims(a, v);
  const double c = cfg.c;
  const double stop = cfg.tol * (1.0 - c);

  std::vector<double> x(v.entries().begin(), v.entries().end());
  std::vector<double> y(x.size());
  std::int64_t iterations = 0;
  bool converged = false;
  for (std::int64_t k = 1; k <= cfg.max_iter; ++k) {
    a.apply_transposed(x, y);
    for (std::size_t i = 0; i < y.size(); ++i)
      y[i] = c * y[i] + (1.0 - c) * v.entries()[i];
    const double diff = l1_diff(x, y);
    if (observer) observer(k, y, diff);
    x.swap(y);
    iterations = k;
    if (diff <= stop) {
      converged = true;
      break;
    }
  }

  PageRankResult result{finalize(std::move(x)), iterations, 0.0, Method::power,
                        converged};
  result.residual = linear_residual(a, c, v.entries(), result.pi.entries());
  return result;
}

PageRankResult pagerank_linear(const RowStochasticMatrix& a,
                               const PageRankConfig& cfg,
                               const ProbabilityVector& v,
                               const IterationObserver& observer) {
  cfg.validate();
  check_dims(a, v);
  const double c = cfg.c;
  const double stop = cfg.tol * (1.0 - c);

  std::vector<double> x(v.dim());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = (1.0 - c) * v.entries()[i];
  std::vector<double> y(x.size());
  std::int64_t iterations = 0;
  bool converged = false;
  for (std::int64_t k = 1; k <= cfg.max_iter; ++k) {
    a.apply_transposed(x, y);
    for (std::size_t i = 0; i < y.size(); ++i)
      y[i] = c * y[i] + (1.0 - c) * v.entries()[i];
    // One sweep maps x to (1-c)v + c*A^T x, so y - x is (component by
    // component) the residual of x; no separate residual pass needed here.
    const double diff = l1_diff(x, y);
    if (observer) observer(k, y, diff);
    x.swap(y);
    iterations = k;
    if (diff <= stop) {
      converged = true;
      break;
    }
  }

  PageRankResult result{finalize(std::move(x)), iterations, 0.0, Method::linear,
                        converged};
  result.residual = linear_residual(a, c, v.entries(), result.pi.entries());
  return result;
}

std::vector<double> pagerank_dense_oracle(const RowStochasticMatrix& a,
                                          double c,
                                          const ProbabilityVector& v) {
  PageRankConfig probe;
  probe.c = c;
  probe.validate();
  check_dims(a, v);
  if (a.dim() > kDenseCap)
    fail(ErrorCode::cap_exceeded,
         "dense ground-truth solve is capped at " + std::to_string(kDenseCap) +
             " vertices, got " + std::to_string(a.dim()));

  DenseMatrix m = dense_difference_operator(a, c);
  std::vector<double> rhs(v.entries().begin(), v.entries().end());
  for (double& value : rhs) value *= (1.0 - c);
  return solve_dense(std::move(m), std::move(rhs));
}

PageRankResult solve(const RowStochasticMatrix& a, Method method,
                     const PageRankConfig& cfg, const ProbabilityVector& v) {
  switch (method) {
    case Method::power:
      return pagerank_power(a, cfg, v);
    case Method::linear:
      return pagerank_linear(a, cfg, v);
    case Method::dense_oracle: {
      PageRankResult result{
          ProbabilityVector::from_entries(pagerank_dense_oracle(a, cfg.c, v)),
          0, 0.0, Method::dense_oracle, true};
      result.residual = linear_residual(a, cfg.c, v.entries(), result.pi.entries());
      return result;
    }
  }
  fail(ErrorCode::internal, "unknown solve method");
}

}  // namespace urank
