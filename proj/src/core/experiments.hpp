#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/analysis.hpp"
#include "core/graph.hpp"
#include "core/transition.hpp"

namespace urank {

enum class VStrategyKind { uniform, degree, point_mass, dirichlet_random };

// How the personalization vector of a sweep row is built.
//   uniform | degree | point_mass[:vertex] | dirichlet_random[:seed]
// point_mass defaults to vertex 0; dirichlet_random without an explicit seed
// derives one from the instance seed, so rows stay reproducible.
struct VStrategy {
  VStrategyKind kind = VStrategyKind::uniform;
  Vertex vertex = 0;
  std::optional<std::uint64_t> seed;

  static VStrategy parse(std::string_view text);
  std::string to_string() const;
};

ProbabilityVector make_personalization(const VStrategy& strategy, const Graph& g,
                                       std::uint64_t instance_seed);

struct SweepSpec {
  std::vector<GeneratorSpec> families;
  std::vector<double> c_values;
  std::vector<VStrategy> v_strategies;
  std::int64_t trials = 5;
  std::uint64_t seed = 1;
  double slack = 1e-9;
  double tol = 1e-12;
  std::int64_t max_iter = 100000;

  // Built-in corpus: paths, cycles, stars, complete graphs, 4-regular
  // circulants and Erdos-Renyi samples at n in {10, 50, 200}, crossed with
  // c in {0.1, 0.5, 0.85, 0.99} and all four strategies, 5 trials each.
  static SweepSpec defaults();

  // JSON object mirroring the flag grammar; missing keys keep their
  // defaults, unknown keys are rejected.
  static SweepSpec from_json(std::string_view text);
  std::string to_json() const;

  void validate() const;
};

enum class RowVerdict { pass, fail, skip };

struct SweepRow {
  std::string family;
  Vertex n = 0;
  std::uint64_t seed = 0;  // instance seed: spec seed XOR instance counter
  double c = 0.0;
  std::string strategy;
  double distance_vf = 0.0;
  double distance_pif = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double tightness_ratio = 0.0;  // distance_pif / distance_vf, 1 when exact 0
  bool converged = false;
  RowVerdict verdict = RowVerdict::skip;
};

// Runs every (family instance, trial, c, strategy) combination in a fixed
// order with seeds split deterministically from spec.seed, so two runs of
// the same spec produce byte-identical output. Instances whose generator
// assumption is unsatisfiable (or that cannot carry a walk at all) yield
// rows marked skip rather than disappearing.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

struct TightnessSummary {
  struct PerDamping {
    double c = 0.0;
    double min = 0.0;
    double median = 0.0;  // mean of the middle two for even counts
    double max = 0.0;
    std::int64_t rows = 0;
  };
  std::vector<PerDamping> per_c;
  std::int64_t pass_count = 0;
  std::int64_t fail_count = 0;
  std::int64_t skip_count = 0;

  std::string to_text() const;
};

TightnessSummary tightness_summary(const std::vector<SweepRow>& rows);

// CSV with the exact header
//   family,n,seed,c,strategy,distance_vf,distance_pif,lower,upper,
//   tightness_ratio,converged,verdict
// reals at 17 significant digits; the JSON form mirrors the same fields.
std::string sweep_to_csv(const std::vector<SweepRow>& rows);
std::string sweep_to_json(const std::vector<SweepRow>& rows);

}  // namespace urank
