#include "core/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <json.hpp>

#include "core/error.hpp"
#include "core/format.hpp"
#include "core/rng.hpp"
#include "core/solver.hpp"

namespace urank {

namespace {

// Salt separating the dirichlet draw stream from the graph draw stream of
// the same instance (otherwise an Erdos-Renyi instance and its
// personalization would consume the same values).
constexpr std::uint64_t kDirichletSalt = 0x9e3779b97f4a7c15ull;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const char* verdict_name(RowVerdict v) {
  switch (v) {
    case RowVerdict::pass: return "pass";
    case RowVerdict::fail: return "fail";
    case RowVerdict::skip: return "skip";
  }
  return "?";
}

}  // namespace

VStrategy VStrategy::parse(std::string_view text) {
  const std::size_t colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  const std::string_view arg =
      colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);

  VStrategy strategy;
  if (name == "uniform") strategy.kind = VStrategyKind::uniform;
  else if (name == "degree") strategy.kind = VStrategyKind::degree;
  else if (name == "point_mass") strategy.kind = VStrategyKind::point_mass;
  else if (name == "dirichlet_random") strategy.kind = VStrategyKind::dirichlet_random;
  else
    fail(ErrorCode::parse,
         "unknown personalization strategy '" + std::string(name) +
             "' (expected uniform, degree, point_mass, dirichlet_random)");

  if (colon == std::string_view::npos) return strategy;
  if (strategy.kind == VStrategyKind::uniform || strategy.kind == VStrategyKind::degree)
    fail(ErrorCode::parse,
         "'" + std::string(name) + "' does not take an argument");

  if (strategy.kind == VStrategyKind::point_mass) {
    Vertex vertex = 0;
    auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), vertex);
    if (ec != std::errc{} || ptr != arg.data() + arg.size() || vertex < 0)
      fail(ErrorCode::parse,
           "cannot parse point_mass vertex '" + std::string(arg) + "'");
    strategy.vertex = vertex;
  } else {
    std::uint64_t seed = 0;
    auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), seed);
    if (ec != std::errc{} || ptr != arg.data() + arg.size())
      fail(ErrorCode::parse,
           "cannot parse dirichlet_random seed '" + std::string(arg) + "'");
    strategy.seed = seed;
  }
  return strategy;
}

std::string VStrategy::to_string() const {
  switch (kind) {
    case VStrategyKind::uniform: return "uniform";
    case VStrategyKind::degree: return "degree";
    case VStrategyKind::point_mass:
      return "point_mass:" + std::to_string(vertex);
    case VStrategyKind::dirichlet_random:
      return seed ? "dirichlet_random:" + std::to_string(*seed)
                  : "dirichlet_random";
  }
  return "?";
}

ProbabilityVector make_personalization(const VStrategy& strategy, const Graph& g,
                                       std::uint64_t instance_seed) {
  const Vertex n = g.order();
  switch (strategy.kind) {
    case VStrategyKind::uniform:
      return uniform_vector(n);
    case VStrategyKind::degree:
      return degree_distribution(g);
    case VStrategyKind::point_mass: {
      if (strategy.vertex >= n)
        fail(ErrorCode::invalid_argument,
             "point_mass vertex " + std::to_string(strategy.vertex) +
                 " out of range [0, " + std::to_string(n) + ")");
      std::vector<double> entries(static_cast<std::size_t>(n), 0.0);
      entries[static_cast<std::size_t>(strategy.vertex)] = 1.0;
      return ProbabilityVector::from_entries(std::move(entries));
    }
    case VStrategyKind::dirichlet_random: {
      // Flat Dirichlet sample: one exponential variate per index, drawn in
      // index order, then normalized.
      Rng rng(strategy.seed.value_or(instance_seed ^ kDirichletSalt));
      std::vector<double> entries(static_cast<std::size_t>(n));
      double sum = 0.0;
      for (double& value : entries) {
        value = -std::log1p(-rng.next_double());
        sum += value;
      }
      if (!(sum > 0.0))
        fail(ErrorCode::internal, "degenerate dirichlet draw (all zeros)");
      for (double& value : entries) value /= sum;
      return ProbabilityVector::from_entries(std::move(entries));
    }
  }
  fail(ErrorCode::internal, "unknown personalization strategy");
}

// ---- sweep spec --------------------------------------------------------

SweepSpec SweepSpec::defaults() {
  SweepSpec spec;
  const char* families[] = {
      "path:10",       "path:50",       "path:200",
      "cycle:10",      "cycle:50",      "cycle:200",
      "star:10",       "star:50",       "star:200",
      "complete:10",   "complete:50",   "complete:200",
      "k_regular_circulant:10,4", "k_regular_circulant:50,4",
      "k_regular_circulant:200,4",
      "erdos_renyi:10,0.4", "erdos_renyi:50,0.15", "erdos_renyi:200,0.05",
  };
  for (const char* text : families)
    spec.families.push_back(GeneratorSpec::parse(text));
  spec.c_values = {0.1, 0.5, 0.85, 0.99};
  spec.v_strategies = {VStrategy::parse("uniform"), VStrategy::parse("degree"),
                       VStrategy::parse("point_mass:0"),
                       VStrategy::parse("dirichlet_random")};
  return spec;
}

void SweepSpec::validate() const {
  if (families.empty())
    fail(ErrorCode::invalid_argument, "sweep spec has no graph families");
  if (c_values.empty())
    fail(ErrorCode::invalid_argument, "sweep spec has no damping values");
  for (double c : c_values)
    if (!(c > 0.0) || !(c < 1.0) || !std::isfinite(c))
      fail(ErrorCode::invalid_argument,
           "damping constant must satisfy 0 < c < 1, got " + format_real(c));
  if (v_strategies.empty())
    fail(ErrorCode::invalid_argument, "sweep spec has no personalization strategies");
  if (trials < 1)
    fail(ErrorCode::invalid_argument, "sweep needs at least one trial");
  if (!(slack >= 0.0) || !std::isfinite(slack))
    fail(ErrorCode::invalid_argument, "slack must be nonnegative");
  if (!(tol > 0.0) || !std::isfinite(tol))
    fail(ErrorCode::invalid_argument, "tolerance must be positive");
  if (max_iter < 1)
    fail(ErrorCode::invalid_argument, "max_iter must be at least 1");
}

SweepSpec SweepSpec::from_json(std::string_view text) {
  nlohmann::json parsed = nlohmann::json::parse(text, nullptr, false);
  if (parsed.is_discarded() || !parsed.is_object())
    fail(ErrorCode::parse, "sweep spec must be a JSON object");

  SweepSpec spec = defaults();
  for (const auto& [key, value] : parsed.items()) {
    try {
      if (key == "families") {
        spec.families.clear();
        for (const auto& item : value)
          spec.families.push_back(GeneratorSpec::parse(item.get<std::string>()));
      } else if (key == "c_values") {
        spec.c_values = value.get<std::vector<double>>();
      } else if (key == "strategies") {
        spec.v_strategies.clear();
        for (const auto& item : value)
          spec.v_strategies.push_back(VStrategy::parse(item.get<std::string>()));
      } else if (key == "trials") {
        spec.trials = value.get<std::int64_t>();
      } else if (key == "seed") {
        spec.seed = value.get<std::uint64_t>();
      } else if (key == "slack") {
        spec.slack = value.get<double>();
      } else if (key == "tol") {
        spec.tol = value.get<double>();
      } else if (key == "max_iter") {
        spec.max_iter = value.get<std::int64_t>();
      } else {
        fail(ErrorCode::parse, "unknown sweep spec key '" + key + "'");
      }
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::parse, "sweep spec key '" + key + "': " + e.what());
    }
  }
  spec.validate();
  return spec;
}

std::string SweepSpec::to_json() const {
  nlohmann::ordered_json j;
  j["families"] = nlohmann::json::array();
  for (const GeneratorSpec& family : families)
    j["families"].push_back(family.to_string());
  j["c_values"] = c_values;
  j["strategies"] = nlohmann::json::array();
  for (const VStrategy& strategy : v_strategies)
    j["strategies"].push_back(strategy.to_string());
  j["trials"] = trials;
  j["seed"] = seed;
  j["slack"] = slack;
  j["tol"] = tol;
  j["max_iter"] = max_iter;
  return j.dump(2) + "\n";
}

// ---- sweep execution ---------------------------------------------------

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  spec.validate();

  std::vector<SweepRow> rows;
  rows.reserve(spec.families.size() * static_cast<std::size_t>(spec.trials) *
               spec.c_values.size() * spec.v_strategies.size());

  std::uint64_t counter = 0;
  for (const GeneratorSpec& family : spec.families) {
    for (std::int64_t trial = 0; trial < spec.trials; ++trial) {
      const std::uint64_t instance_seed = spec.seed ^ counter;
      ++counter;

      // An instance that cannot satisfy its generator assumption (or cannot
      // carry a walk because of isolated vertices) is recorded as skipped
      // rows, never silently dropped.
      std::optional<Graph> graph;
      std::optional<RowStochasticMatrix> matrix;
      std::optional<ProbabilityVector> f;
      try {
        graph = generate(family, instance_seed);
        matrix = transition_matrix(*graph);
        f = degree_distribution(*graph);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::unsatisfiable &&
            e.code() != ErrorCode::isolated_vertex)
          throw;
        graph.reset();
      }

      for (double c : spec.c_values) {
        for (const VStrategy& strategy : spec.v_strategies) {
          SweepRow row;
          row.family = family.family_name();
          row.n = family.n;
          row.seed = instance_seed;
          row.c = c;
          row.strategy = strategy.to_string();

          if (!graph) {
            row.distance_vf = row.distance_pif = kNaN;
            row.lower = row.upper = row.tightness_ratio = kNaN;
            row.converged = false;
            row.verdict = RowVerdict::skip;
            rows.push_back(std::move(row));
            continue;
          }

          const ProbabilityVector v =
              make_personalization(strategy, *graph, instance_seed);
          PageRankConfig cfg;
          cfg.c = c;
          cfg.tol = spec.tol;
          cfg.max_iter = spec.max_iter;
          const PageRankResult result = pagerank_linear(*matrix, cfg, v);

          row.distance_vf = l1_distance(v.entries(), f->entries());
          row.distance_pif = l1_distance(result.pi.entries(), f->entries());
          row.lower = (1.0 - c) / (1.0 + c) * row.distance_vf;
          row.upper = row.distance_vf;
          row.tightness_ratio = row.distance_vf > 0.0
                                    ? row.distance_pif / row.distance_vf
                                    : 1.0;
          row.converged = result.converged;
          if (!result.converged) {
            row.verdict = RowVerdict::fail;
          } else {
            try {
              const BoundReport report =
                  check_bounds(*matrix, c, v, *f, result.pi, spec.slack);
              row.verdict = report.pass ? RowVerdict::pass : RowVerdict::fail;
            } catch (const Error&) {
              row.verdict = RowVerdict::fail;
            }
          }
          rows.push_back(std::move(row));
        }
      }
    }
  }
  return rows;
}

// ---- summaries and serialization ---------------------------------------

TightnessSummary tightness_summary(const std::vector<SweepRow>& rows) {
  if (rows.empty())
    fail(ErrorCode::invalid_argument, "cannot summarize an empty sweep");

  TightnessSummary summary;
  std::vector<double> c_seen;
  for (const SweepRow& row : rows) {
    switch (row.verdict) {
      case RowVerdict::pass: ++summary.pass_count; break;
      case RowVerdict::fail: ++summary.fail_count; break;
      case RowVerdict::skip: ++summary.skip_count; break;
    }
    if (row.verdict != RowVerdict::skip &&
        std::find(c_seen.begin(), c_seen.end(), row.c) == c_seen.end())
      c_seen.push_back(row.c);
  }
  std::sort(c_seen.begin(), c_seen.end());

  for (double c : c_seen) {
    std::vector<double> ratios;
    for (const SweepRow& row : rows)
      if (row.verdict != RowVerdict::skip && row.c == c)
        ratios.push_back(row.tightness_ratio);
    std::sort(ratios.begin(), ratios.end());
    TightnessSummary::PerDamping stats;
    stats.c = c;
    stats.rows = static_cast<std::int64_t>(ratios.size());
    stats.min = ratios.front();
    stats.max = ratios.back();
    const std::size_t mid = ratios.size() / 2;
    stats.median = ratios.size() % 2 == 1
                       ? ratios[mid]
                       : 0.5 * (ratios[mid - 1] + ratios[mid]);
    summary.per_c.push_back(stats);
  }
  return summary;
}

std::string TightnessSummary::to_text() const {
  std::string out = "rows=" + std::to_string(pass_count + fail_count + skip_count) +
                    " pass=" + std::to_string(pass_count) +
                    " fail=" + std::to_string(fail_count) +
                    " skip=" + std::to_string(skip_count) + "\n";
  for (const PerDamping& stats : per_c) {
    out += "c=" + format_real(stats.c) + ": ratio min=" + format_real(stats.min) +
           " median=" + format_real(stats.median) +
           " max=" + format_real(stats.max) +
           " (rows=" + std::to_string(stats.rows) + ")\n";
  }
  return out;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::string out =
      "family,n,seed,c,strategy,distance_vf,distance_pif,lower,upper,"
      "tightness_ratio,converged,verdict\n";
  for (const SweepRow& row : rows) {
    out += row.family;
    out += ',';
    out += std::to_string(row.n);
    out += ',';
    out += std::to_string(row.seed);
    out += ',';
    out += format_real(row.c);
    out += ',';
    out += row.strategy;
    out += ',';
    out += format_real(row.distance_vf);
    out += ',';
    out += format_real(row.distance_pif);
    out += ',';
    out += format_real(row.lower);
    out += ',';
    out += format_real(row.upper);
    out += ',';
    out += format_real(row.tightness_ratio);
    out += ',';
    out += row.converged ? "true" : "false";
    out += ',';
    out += verdict_name(row.verdict);
    out += '\n';
  }
  return out;
}

std::string sweep_to_json(const std::vector<SweepRow>& rows) {
  nlohmann::ordered_json array = nlohmann::json::array();
  for (const SweepRow& row : rows) {
    nlohmann::ordered_json j;
    j["family"] = row.family;
    j["n"] = row.n;
    j["seed"] = row.seed;
    j["c"] = row.c;
    j["strategy"] = row.strategy;
    j["distance_vf"] = row.distance_vf;
    j["distance_pif"] = row.distance_pif;
    j["lower"] = row.lower;
    j["upper"] = row.upper;
    j["tightness_ratio"] = row.tightness_ratio;
    j["converged"] = row.converged;
    j["verdict"] = verdict_name(row.verdict);
    array.push_back(std::move(j));
  }
  return array.dump();
}

}  // namespace urank
