#include "core/analysis.hpp"

#include <cmath>
#include <json.hpp>

#include "core/dense.hpp"
#include "core/error.hpp"
#include "core/format.hpp"

namespace urank {

namespace {

void check_same_dim(std::span<const double> x, std::span<const double> y,
                    const char* what) {
  if (x.size() != y.size())
    fail(ErrorCode::dimension_mismatch,
         std::string(what) + ": dimensions " + std::to_string(x.size()) +
             " and " + std::to_string(y.size()) + " differ");
}

void check_damping(double c) {
  if (!(c > 0.0) || !(c < 1.0) || !std::isfinite(c))
    fail(ErrorCode::invalid_argument,
         "damping constant must satisfy 0 < c < 1, got " + format_real(c));
}

}  // namespace

double l1_distance(std::span<const double> x, std::span<const double> y) {
  check_same_dim(x, y, "l1_distance");
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += std::fabs(x[i] - y[i]);
  return sum;
}

std::pair<double, double> difference_bounds(const ProbabilityVector& v,
                                            const ProbabilityVector& f,
                                            double c) {
  check_damping(c);
  const double distance = l1_distance(v.entries(), f.entries());
  return {(1.0 - c) / (1.0 + c) * distance, distance};
}

double difference_identity_defect(const RowStochasticMatrix& a, double c,
                                  const ProbabilityVector& v,
                                  const ProbabilityVector& f,
                                  const ProbabilityVector& pi) {
  check_damping(c);
  check_same_dim(pi.entries(), f.entries(), "difference_identity_defect");
  check_same_dim(v.entries(), f.entries(), "difference_identity_defect");
  if (pi.dim() != a.dim())
    fail(ErrorCode::dimension_mismatch,
         "difference_identity_defect: vectors do not match the matrix");

  std::vector<double> w(static_cast<std::size_t>(pi.dim()));
  for (std::size_t i = 0; i < w.size(); ++i)
    w[i] = pi.entries()[i] - f.entries()[i];
  const std::vector<double> t = a.apply_transposed(w);
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double lhs = w[i] - c * t[i];
    const double rhs = (1.0 - c) * (v.entries()[i] - f.entries()[i]);
    sum += std::fabs(lhs - rhs);
  }
  return sum;
}

BoundReport check_bounds(const RowStochasticMatrix& a, double c,
                         const ProbabilityVector& v, const ProbabilityVector& f,
                         const ProbabilityVector& pi, double slack) {
  check_damping(c);
  if (!(slack >= 0.0) || !std::isfinite(slack))
    fail(ErrorCode::invalid_argument,
         "slack must be nonnegative, got " + format_real(slack));
  if (v.dim() != a.dim() || f.dim() != a.dim() || pi.dim() != a.dim())
    fail(ErrorCode::dimension_mismatch,
         "check_bounds: vector dimensions do not match the matrix");

  // Premise 1: f is stationary for A^T. A wrong f silently breaks both
  // inequalities, so reject loudly instead of reporting a bogus verdict.
  const double stationarity_defect =
      l1_distance(a.apply_transposed(f.entries()), f.entries());
  if (stationarity_defect > slack)
    fail(ErrorCode::precondition,
         "f is not stationary for A^T: ||A^T f - f||_1 = " +
             format_real(stationarity_defect) + " exceeds slack " +
             format_real(slack));

  // Premise 2: pi actually solves the damped system for (a, c, v), checked
  // through the difference identity so a sloppy or mismatched solve cannot
  // masquerade as a bound violation.
  const double defect = difference_identity_defect(a, c, v, f, pi);
  if (defect > slack)
    fail(ErrorCode::precondition,
         "pi does not solve the damped system for this (c, v): "
         "difference-identity defect " +
             format_real(defect) + " exceeds slack " + format_real(slack));

  BoundReport report;
  report.c = c;
  report.slack = slack;
  report.distance_vf = l1_distance(v.entries(), f.entries());
  report.distance_pif = l1_distance(pi.entries(), f.entries());
  report.lower = (1.0 - c) / (1.0 + c) * report.distance_vf;
  report.upper = report.distance_vf;
  report.pass = report.distance_pif >= report.lower - slack &&
                report.distance_pif <= report.upper + slack;
  return report;
}

NormReport norm_identities(const RowStochasticMatrix& a, double c) {
  check_damping(c);
  if (a.dim() > kDenseCap)
    fail(ErrorCode::cap_exceeded,
         "norm measurement is capped at " + std::to_string(kDenseCap) +
             " vertices, got " + std::to_string(a.dim()));

  const DenseMatrix m = dense_difference_operator(a, c);
  NormReport report;
  report.c = c;
  report.norm_forward = l1_operator_norm(m);
  report.norm_inverse = l1_operator_norm(invert_dense(m));
  report.expected_forward = 1.0 + c;
  report.expected_inverse = 1.0 / (1.0 - c);
  report.deviation_forward = std::fabs(report.norm_forward - report.expected_forward);
  report.deviation_inverse = std::fabs(report.norm_inverse - report.expected_inverse);
  return report;
}

std::optional<ProbabilityVector> stationary_vector(const RowStochasticMatrix& a,
                                                   double tol,
                                                   std::int64_t max_iter) {
  if (!(tol > 0.0) || !std::isfinite(tol))
    fail(ErrorCode::invalid_argument,
         "tolerance must be positive, got " + format_real(tol));
  if (max_iter < 1)
    fail(ErrorCode::invalid_argument, "max_iter must be at least 1");

  const ProbabilityVector start = uniform_vector(a.dim());
  std::vector<double> x(start.entries().begin(), start.entries().end());
  std::vector<double> y(x.size());
  for (std::int64_t k = 1; k <= max_iter; ++k) {
    a.apply_transposed(x, y);
    double defect = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) defect += std::fabs(y[i] - x[i]);
    x.swap(y);
    if (defect <= tol) return ProbabilityVector::from_entries(std::move(x));
  }
  return std::nullopt;
}

std::string BoundReport::to_json() const {
  nlohmann::ordered_json j;
  j["c"] = c;
  j["distance_vf"] = distance_vf;
  j["distance_pif"] = distance_pif;
  j["lower"] = lower;
  j["upper"] = upper;
  j["slack"] = slack;
  j["verdict"] = pass ? "pass" : "fail";
  return j.dump();
}

std::string NormReport::to_json() const {
  nlohmann::ordered_json j;
  j["c"] = c;
  j["norm_forward"] = norm_forward;
  j["norm_inverse"] = norm_inverse;
  j["expected_forward"] = expected_forward;
  j["expected_inverse"] = expected_inverse;
  j["deviations"] = {{"forward", deviation_forward}, {"inverse", deviation_inverse}};
  return j.dump();
}

}  // namespace urank
