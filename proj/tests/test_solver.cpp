#include <doctest.h>

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "core/analysis.hpp"
#include "core/error.hpp"
#include "core/graph.hpp"
#include "core/solver.hpp"
#include "core/transition.hpp"
#include "test_corpus.hpp"

using urank::Error;
using urank::ErrorCode;
using urank::Graph;
using urank::Method;
using urank::PageRankConfig;
using urank::PageRankResult;
using urank::ProbabilityVector;
using urank::RowStochasticMatrix;

namespace {

template <class Fn>
std::optional<ErrorCode> thrown_code(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

double l1(std::span<const double> x, std::span<const double> y) {
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += std::fabs(x[i] - y[i]);
  return sum;
}

double entry_sum(std::span<const double> x) {
  double sum = 0.0;
  for (double value : x) sum += value;
  return sum;
}

PageRankConfig config(double c, double tol = 1e-12,
                      std::int64_t max_iter = 100000) {
  PageRankConfig cfg;
  cfg.c = c;
  cfg.tol = tol;
  cfg.max_iter = max_iter;
  return cfg;
}

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("frozen rank vectors") {
  SUBCASE("three-path, c=0.85, uniform personalization") {
    const RowStochasticMatrix a =
        urank::transition_matrix(testutil::gen("path:3"));
    const ProbabilityVector v = urank::uniform_vector(3);
    const std::vector<double> want = {19.0 / 74, 36.0 / 74, 19.0 / 74};
    for (Method m : {Method::power, Method::linear, Method::dense_oracle}) {
      const PageRankResult r = urank::solve(a, m, config(0.85), v);
      CHECK(r.converged);
      CHECK(l1(r.pi.entries(), want) <= 1e-12);
    }
  }
  SUBCASE("four-star, c=0.85, uniform personalization") {
    const RowStochasticMatrix a =
        urank::transition_matrix(testutil::gen("star:4"));
    const ProbabilityVector v = urank::uniform_vector(4);
    const std::vector<double> want = {71.0 / 148, 77.0 / 444, 77.0 / 444,
                                      77.0 / 444};
    for (Method m : {Method::power, Method::linear, Method::dense_oracle}) {
      const PageRankResult r = urank::solve(a, m, config(0.85), v);
      CHECK(r.converged);
      CHECK(l1(r.pi.entries(), want) <= 1e-12);
    }
  }
  SUBCASE("triangle, c=0.5, point mass at vertex 0") {
    const RowStochasticMatrix a =
        urank::transition_matrix(testutil::gen("complete:3"));
    const ProbabilityVector v =
        ProbabilityVector::from_entries({1.0, 0.0, 0.0});
    const std::vector<double> want = {0.6, 0.2, 0.2};
    for (Method m : {Method::power, Method::linear, Method::dense_oracle}) {
      const PageRankResult r = urank::solve(a, m, config(0.5), v);
      CHECK(l1(r.pi.entries(), want) <= 1e-12);
    }
  }
  SUBCASE("single edge is invariant for every damping value") {
    const RowStochasticMatrix a =
        urank::transition_matrix(testutil::gen("path:2"));
    const ProbabilityVector v = urank::uniform_vector(2);
    for (double c : {0.3, 0.85, 0.99}) {
      const PageRankResult r = urank::pagerank_power(a, config(c), v);
      CHECK(r.pi[0] == 0.5);
      CHECK(r.pi[1] == 0.5);
    }
  }
}

TEST_CASE("stationary personalization is already the answer") {
  for (const Graph& g : testutil::mixed_corpus(12, 64)) {
    const RowStochasticMatrix a = urank::transition_matrix(g);
    const ProbabilityVector f = urank::degree_distribution(g);
    for (double c : {0.5, 0.99}) {
      const PageRankConfig cfg = config(c);
      const PageRankResult p = urank::pagerank_power(a, cfg, f);
      const PageRankResult q = urank::pagerank_linear(a, cfg, f);
      CHECK(p.converged);
      CHECK(q.converged);
      CHECK(l1(p.pi.entries(), f.entries()) <= 10 * cfg.tol);
      CHECK(l1(q.pi.entries(), f.entries()) <= 10 * cfg.tol);
    }
  }
}

TEST_CASE("iterative routes agree with the dense route") {
  for (const Graph& g : testutil::mixed_corpus(8, 60)) {
    const RowStochasticMatrix a = urank::transition_matrix(g);
    const ProbabilityVector v = urank::uniform_vector(g.order());
    for (double c : {0.1, 0.85}) {
      const PageRankConfig cfg = config(c);
      const std::vector<double> oracle = urank::pagerank_dense_oracle(a, c, v);
      const PageRankResult p = urank::pagerank_power(a, cfg, v);
      const PageRankResult q = urank::pagerank_linear(a, cfg, v);
      CHECK(l1(p.pi.entries(), oracle) <= 10 * cfg.tol);
      CHECK(l1(q.pi.entries(), oracle) <= 10 * cfg.tol);
      CHECK(l1(p.pi.entries(), q.pi.entries()) <= 10 * cfg.tol);
    }
  }
}

TEST_CASE("accuracy does not degrade as damping grows") {
  const RowStochasticMatrix a =
      urank::transition_matrix(testutil::gen("cycle:24"));
  const ProbabilityVector v =
      ProbabilityVector::from_entries([] {
        std::vector<double> x(24, 0.5 / 23);
        x[7] = 0.5;
        return x;
      }());
  for (double c : {0.1, 0.5, 0.85, 0.99}) {
    const PageRankConfig cfg = config(c);
    const std::vector<double> oracle = urank::pagerank_dense_oracle(a, c, v);
    CHECK(l1(urank::pagerank_power(a, cfg, v).pi.entries(), oracle) <=
          2 * cfg.tol);
    CHECK(l1(urank::pagerank_linear(a, cfg, v).pi.entries(), oracle) <=
          2 * cfg.tol);
  }
}

TEST_CASE("power iterates stay on the simplex and contract") {
  const double c = 0.85;
  for (const char* spec : {"path:3", "star:6", "erdos_renyi:30,0.2"}) {
    const RowStochasticMatrix a = urank::transition_matrix(testutil::gen(spec));
    const ProbabilityVector v = urank::uniform_vector(a.dim());
    std::vector<double> diffs;
    std::vector<double> last;
    std::int64_t calls = 0;
    const PageRankResult r = urank::pagerank_power(
        a, config(c), v,
        [&](std::int64_t k, std::span<const double> iterate, double diff) {
          ++calls;
          CHECK(k == calls);
          CHECK(std::fabs(entry_sum(iterate) - 1.0) <= 1e-12);
          diffs.push_back(diff);
          last.assign(iterate.begin(), iterate.end());
        });
    CHECK(r.converged);
    CHECK(calls == r.iterations);
    CHECK(l1(r.pi.entries(), last) == 0.0);
    for (std::size_t k = 0; k + 1 < diffs.size(); ++k)
      CHECK(diffs[k + 1] <= (c + 1e-12) * diffs[k] + 1e-12);
  }
}

TEST_CASE("linear iterates contract geometrically") {
  const double c = 0.85;
  const RowStochasticMatrix a =
      urank::transition_matrix(testutil::gen("star:6"));
  const ProbabilityVector v = urank::uniform_vector(6);
  std::vector<double> diffs;
  urank::pagerank_linear(
      a, config(c), v,
      [&](std::int64_t, std::span<const double>, double diff) {
        diffs.push_back(diff);
      });
  REQUIRE(diffs.size() > 3);
  for (std::size_t k = 0; k + 1 < diffs.size(); ++k)
    CHECK(diffs[k + 1] <= (c + 1e-12) * diffs[k] + 1e-12);
}

TEST_CASE("iteration budget and convergence flag") {
  const RowStochasticMatrix a =
      urank::transition_matrix(testutil::gen("star:4"));
  const ProbabilityVector v = urank::uniform_vector(4);
  const PageRankResult r = urank::pagerank_power(a, config(0.99, 1e-12, 2), v);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 2);
  CHECK(std::fabs(entry_sum(r.pi.entries()) - 1.0) <= 1e-12);
  CHECK(r.residual > 1e-12);

  SUBCASE("the same problem converges once the stop threshold is reachable") {
    // At c = 0.99 the successive-difference threshold is tol * 0.01; with
    // tol = 1e-12 that sits below the rounding-noise floor on a bipartite
    // graph (noise re-excites the -1 eigendirection with gain 1/(1-c)), so
    // the honest flag stays false no matter the budget. One notch looser
    // clears the floor.
    const PageRankResult ok = urank::pagerank_power(a, config(0.99, 1e-10), v);
    CHECK(ok.converged);
    CHECK(ok.iterations > 2);
    CHECK(ok.residual <= 10 * 1e-10);
  }
}

TEST_CASE("configuration validation") {
  for (double c : {0.0, 1.0, -0.1, 1.5}) {
    CHECK(thrown_code([&] { config(c).validate(); }) ==
          ErrorCode::invalid_argument);
  }
  CHECK(thrown_code([] { config(std::nan("")).validate(); }) ==
        ErrorCode::invalid_argument);
  CHECK(thrown_code([] { config(0.85, 0.0).validate(); }) ==
        ErrorCode::invalid_argument);
  CHECK(thrown_code([] { config(0.85, -1e-9).validate(); }) ==
        ErrorCode::invalid_argument);
  CHECK(thrown_code([] { config(0.85, 1e-12, 0).validate(); }) ==
        ErrorCode::invalid_argument);

  SUBCASE("solvers run the same validation") {
    const RowStochasticMatrix a =
        urank::transition_matrix(testutil::gen("path:3"));
    const ProbabilityVector v = urank::uniform_vector(3);
    CHECK(thrown_code([&] { urank::pagerank_power(a, config(1.0), v); }) ==
          ErrorCode::invalid_argument);
    CHECK(thrown_code([&] { urank::pagerank_linear(a, config(0.0), v); }) ==
          ErrorCode::invalid_argument);
    CHECK(thrown_code([&] { urank::pagerank_dense_oracle(a, 2.0, v); }) ==
          ErrorCode::invalid_argument);
  }
  SUBCASE("personalization dimension must match") {
    const RowStochasticMatrix a =
        urank::transition_matrix(testutil::gen("path:3"));
    const ProbabilityVector v4 = urank::uniform_vector(4);
    CHECK(thrown_code([&] { urank::pagerank_power(a, config(0.85), v4); }) ==
          ErrorCode::dimension_mismatch);
    CHECK(thrown_code([&] { urank::pagerank_linear(a, config(0.85), v4); }) ==
          ErrorCode::dimension_mismatch);
    CHECK(thrown_code([&] { urank::pagerank_dense_oracle(a, 0.85, v4); }) ==
          ErrorCode::dimension_mismatch);
  }
}

TEST_CASE("dense route cap") {
  const ProbabilityVector v65 = urank::uniform_vector(65);
  const RowStochasticMatrix over =
      urank::transition_matrix(testutil::gen("path:65"));
  CHECK(thrown_code([&] { urank::pagerank_dense_oracle(over, 0.85, v65); }) ==
        ErrorCode::cap_exceeded);

  const RowStochasticMatrix at =
      urank::transition_matrix(testutil::gen("path:64"));
  const std::vector<double> x =
      urank::pagerank_dense_oracle(at, 0.85, urank::uniform_vector(64));
  CHECK(x.size() == 64);
  CHECK(std::fabs(entry_sum(x) - 1.0) <= 1e-12);
}

TEST_CASE("residuals certify every result") {
  for (const Graph& g : testutil::mixed_corpus(10, 100)) {
    const RowStochasticMatrix a = urank::transition_matrix(g);
    const ProbabilityVector v = urank::uniform_vector(g.order());
    const PageRankConfig cfg = config(0.85);
    for (Method m : {Method::power, Method::linear}) {
      const PageRankResult r = urank::solve(a, m, cfg, v);
      CHECK(r.converged);
      CHECK(r.residual <= 10 * cfg.tol);
      CHECK(r.residual ==
            urank::linear_residual(a, cfg.c, v.entries(), r.pi.entries()));
    }
  }
  SUBCASE("the dense route reports machine-level residuals") {
    const RowStochasticMatrix a =
        urank::transition_matrix(testutil::gen("complete:12"));
    const PageRankResult r = urank::solve(a, Method::dense_oracle, config(0.85),
                                          urank::uniform_vector(12));
    CHECK(r.residual <= 1e-12);
  }
}

TEST_CASE("dispatch and method names") {
  CHECK(urank::method_name(Method::power) == "power");
  CHECK(urank::method_name(Method::linear) == "linear");
  CHECK(urank::method_name(Method::dense_oracle) == "oracle");

  const RowStochasticMatrix a =
      urank::transition_matrix(testutil::gen("cycle:5"));
  const ProbabilityVector v = urank::uniform_vector(5);
  const PageRankResult p = urank::solve(a, Method::power, config(0.85), v);
  const PageRankResult q = urank::solve(a, Method::linear, config(0.85), v);
  const PageRankResult d =
      urank::solve(a, Method::dense_oracle, config(0.85), v);
  CHECK(p.method == Method::power);
  CHECK(q.method == Method::linear);
  CHECK(d.method == Method::dense_oracle);
  CHECK(p.iterations >= 1);
  CHECK(q.iterations >= 1);
  CHECK(d.iterations == 0);
  CHECK(d.converged);
}

}  // TEST_SUITE
