#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "core/solver.hpp"
#include "core/transition.hpp"

namespace urank {

// Verdict for the two-sided L1 bound
//   (1-c)/(1+c) * ||v - f||_1  <=  ||pi - f||_1  <=  ||v - f||_1,
// which holds whenever f is stationary for A^T and pi solves the damped
// system for (a, c, v). pass means both inequalities hold within slack.
struct BoundReport {
  double c = 0.0;
  double distance_vf = 0.0;   // ||v - f||_1
  double distance_pif = 0.0;  // ||pi - f||_1
  double lower = 0.0;
  double upper = 0.0;
  double slack = 0.0;
  bool pass = false;

  std::string to_json() const;
};

// Measured vs. expected operator norms of I - c*A^T and its inverse. For a
// zero-diagonal row-stochastic A the forward norm is exactly 1 + c (every
// column sums to it) and the inverse norm is exactly 1/(1-c) (the Neumann
// series has unit column sums at every power).
struct NormReport {
  double c = 0.0;
  double norm_forward = 0.0;
  double norm_inverse = 0.0;
  double expected_forward = 0.0;
  double expected_inverse = 0.0;
  double deviation_forward = 0.0;
  double deviation_inverse = 0.0;

  std::string to_json() const;
};

double l1_distance(std::span<const double> x, std::span<const double> y);

// (lower, upper) of the two-sided bound above; pure arithmetic on
// ||v - f||_1, no solve involved.
std::pair<double, double> difference_bounds(const ProbabilityVector& v,
                                            const ProbabilityVector& f,
                                            double c);

// Validates the premises before judging the inequality: f must be stationary
// for A^T within slack, and pi must actually solve the damped system for
// (a, c, v) within slack (checked through the difference identity below).
// Premise violations throw; the verdict only reflects the sandwich.
BoundReport check_bounds(const RowStochasticMatrix& a, double c,
                         const ProbabilityVector& v, const ProbabilityVector& f,
                         const ProbabilityVector& pi, double slack);

// Dense measurement of both operator norms; capped at kDenseCap vertices.
NormReport norm_identities(const RowStochasticMatrix& a, double c);

// || (I - c*A^T)(pi - f) - (1-c)(v - f) ||_1, evaluated sparsely. Zero in
// exact arithmetic when pi solves the damped system and A^T f = f.
double difference_identity_defect(const RowStochasticMatrix& a, double c,
                                  const ProbabilityVector& v,
                                  const ProbabilityVector& f,
                                  const ProbabilityVector& pi);

// Undamped iteration x <- A^T x from the uniform start; returns the iterate
// once ||A^T x - x||_1 <= tol, or nothing if that never happens (periodic or
// slowly mixing chains). This is how a stationary vector is obtained for
// matrices that do not come from a graph.
std::optional<ProbabilityVector> stationary_vector(
    const RowStochasticMatrix& a, double tol = 1e-12,
    std::int64_t max_iter = 100000);

}  // namespace urank
