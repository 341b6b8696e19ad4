#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "core/transition.hpp"

namespace urank {

enum class Method { power, linear, dense_oracle };

// CLI-facing name: "power", "linear", "oracle".
std::string method_name(Method m);

struct PageRankConfig {
  double c = 0.85;              // damping, strictly inside (0, 1)
  double tol = 1e-12;           // L1 tolerance, scaled by (1-c) at the stop test
  std::int64_t max_iter = 100000;

  void validate() const;
};

struct PageRankResult {
  ProbabilityVector pi;
  std::int64_t iterations = 0;
  double residual = 0.0;  // || (I - c*A^T) pi - (1-c) v ||_1, measured on pi
  Method method = Method::power;
  bool converged = false;
};

// Called once per iteration with the fresh iterate and the L1 distance to
// its predecessor; used by diagnostics and property tests.
using IterationObserver =
    std::function<void(std::int64_t iteration, std::span<const double> iterate,
                       double difference)>;

// Damped fixed-point iteration x <- c*A^T x + (1-c) v starting at x0 = v.
// Iterates keep entry sum 1 (no renormalization on the way); the loop stops
// when successive iterates are within tol*(1-c) in L1, which bounds the
// distance to the fixed point by c*tol. Only the final vector gets a single
// multiplicative cleanup.
PageRankResult pagerank_power(const RowStochasticMatrix& a,
                              const PageRankConfig& cfg,
                              const ProbabilityVector& v,
                              const IterationObserver& observer = {});

// Solves the linear system (I - c*A^T) x = (1-c) v by Jacobi iteration,
// equivalently summing the Neumann series; works for any row-stochastic
// matrix since ||c*A^T||_1 = c < 1. Starts at (1-c) v, so iterates are the
// partial sums and the successive L1 difference IS the residual of the
// previous iterate, exactly.
PageRankResult pagerank_linear(const RowStochasticMatrix& a,
                               const PageRankConfig& cfg,
                               const ProbabilityVector& v,
                               const IterationObserver& observer = {});

// Dense ground truth: materializes I - c*A^T and runs Gaussian elimination
// with partial pivoting on the right-hand side (1-c) v. Shares no code with
// the iterative paths. Capped at kDenseCap vertices; returns the raw solve
// (no renormalization).
std::vector<double> pagerank_dense_oracle(const RowStochasticMatrix& a,
                                          double c,
                                          const ProbabilityVector& v);

inline constexpr Vertex kDenseCap = 64;

// Residual of an arbitrary candidate vector for the damped system.
double linear_residual(const RowStochasticMatrix& a, double c,
                       std::span<const double> v, std::span<const double> pi);

// Dispatch by method; the dense route is wrapped into a PageRankResult with
// zero iterations.
PageRankResult solve(const RowStochasticMatrix& a, Method method,
                     const PageRankConfig& cfg, const ProbabilityVector& v);

}  // namespace urank
