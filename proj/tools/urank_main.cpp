// urank command-line tool. Everything flows through the C interface in
// urank.h; this file only parses flags, moves bytes, and maps outcomes to
// the exit-code contract:
//   0  success / check passed
//   1  a check or sweep reported failures
//   2  invalid input (flags, files, graph specs, caps)
//   3  the solver ran out of iterations
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "urank.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitNoConvergence = 3;

// Thrown where a command must stop; main() prints the line and exits.
struct CliError {
  int exit_code;
  std::string line;
};

CliError status_error(urank_status status) {
  return CliError{kExitInputError,
                  std::string("error[") + urank_status_name(status) +
                      "]: " + urank_last_error()};
}

CliError usage_error(const std::string& message) {
  return CliError{kExitInputError, "error[invalid_argument]: " + message};
}

struct GraphDeleter {
  void operator()(urank_graph* g) const { urank_graph_free(g); }
};
struct ResultDeleter {
  void operator()(urank_result* r) const { urank_result_free(r); }
};
struct SweepDeleter {
  void operator()(urank_sweep* s) const { urank_sweep_free(s); }
};
struct StringDeleter {
  void operator()(char* s) const { urank_string_free(s); }
};
struct BufferDeleter {
  void operator()(double* p) const { urank_buffer_free(p); }
};

using GraphPtr = std::unique_ptr<urank_graph, GraphDeleter>;
using ResultPtr = std::unique_ptr<urank_result, ResultDeleter>;
using SweepPtr = std::unique_ptr<urank_sweep, SweepDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;
using BufferPtr = std::unique_ptr<double, BufferDeleter>;

std::string fmt(double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

// Flags shared by the graph-consuming subcommands.
struct Options {
  std::string gen;
  std::string input;
  double c = 0.85;
  double tol = 1e-12;
  std::int64_t max_iter = 100000;
  std::string method;
  std::string v = "uniform";
  std::string format = "text";
  std::uint64_t seed = 1;
  double slack = 1e-9;
};

void add_graph_source(CLI::App* cmd, Options& o) {
  cmd->add_option("--gen", o.gen,
                  "generator spec: path:N | cycle:N | complete:N | star:N | "
                  "k_regular_circulant:N,K | erdos_renyi:N,P[,any]");
  cmd->add_option("--input", o.input, "edge-list file");
  cmd->add_option("--seed", o.seed, "seed for --gen sampling")->capture_default_str();
}

void add_format(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "text | json | csv")
      ->capture_default_str()
      ->check(CLI::IsMember({"text", "json", "csv"}));
}

void add_solver_flags(CLI::App* cmd, Options& o, const char* default_method) {
  o.method = default_method;
  cmd->add_option("--c", o.c, "damping constant, strictly inside (0,1)")->capture_default_str();
  cmd->add_option("--tol", o.tol, "solver L1 tolerance")->capture_default_str();
  cmd->add_option("--max-iter", o.max_iter, "iteration cap")->capture_default_str();
  cmd->add_option("--method", o.method, "power | linear | oracle")
      ->capture_default_str()
      ->check(CLI::IsMember({"power", "linear", "oracle"}));
  cmd->add_option("--v", o.v, "personalization: uniform | degree | file:<path>")
      ->capture_default_str();
}

GraphPtr load_graph(const Options& o) {
  if (o.gen.empty() == o.input.empty())
    throw usage_error("exactly one of --gen and --input is required");
  urank_graph* g = nullptr;
  const urank_status status =
      o.gen.empty() ? urank_graph_read(o.input.c_str(), &g)
                    : urank_graph_generate(o.gen.c_str(), o.seed, &g);
  if (status != URANK_OK) throw status_error(status);
  return GraphPtr(g);
}

// uniform is represented as (nullptr, 0) — the C interface's own default.
std::pair<BufferPtr, size_t> load_personalization(const std::string& spec,
                                                  const urank_graph* g) {
  if (spec == "uniform") return {nullptr, 0};
  double* buffer = nullptr;
  size_t len = 0;
  urank_status status;
  if (spec == "degree") {
    status = urank_degree_distribution(g, &buffer, &len);
  } else if (spec.rfind("file:", 0) == 0) {
    status = urank_vector_read(spec.c_str() + 5, &buffer, &len);
  } else {
    throw usage_error("--v must be uniform, degree, or file:<path>, got '" +
                      spec + "'");
  }
  if (status != URANK_OK) throw status_error(status);
  return {BufferPtr(buffer), len};
}

ResultPtr solve(const Options& o, const urank_graph* g, const double* v,
                size_t v_len) {
  urank_result* r = nullptr;
  const urank_status status =
      urank_pagerank(g, o.method.c_str(), o.c, o.tol, o.max_iter, v, v_len, &r);
  if (status != URANK_OK) throw status_error(status);
  return ResultPtr(r);
}

void print_solver_summary(const urank_result* r) {
  std::fprintf(stderr, "rank: method=%s iterations=%" PRId64
                       " residual=%s converged=%s\n",
               urank_result_method(r), urank_result_iterations(r),
               fmt(urank_result_residual(r)).c_str(),
               urank_result_converged(r) ? "true" : "false");
}

int cmd_rank(const Options& o) {
  const GraphPtr g = load_graph(o);
  const auto [v, v_len] = load_personalization(o.v, g.get());
  const ResultPtr r = solve(o, g.get(), v.get(), v_len);

  size_t n = 0;
  const double* pi = urank_result_pi(r.get(), &n);
  print_solver_summary(r.get());

  if (o.format == "text") {
    for (size_t i = 0; i < n; ++i) std::printf("%s\n", fmt(pi[i]).c_str());
  } else if (o.format == "json") {
    nlohmann::ordered_json j;
    j["pi"] = std::vector<double>(pi, pi + n);
    j["method"] = urank_result_method(r.get());
    j["iterations"] = urank_result_iterations(r.get());
    j["residual"] = urank_result_residual(r.get());
    j["converged"] = urank_result_converged(r.get()) != 0;
    std::printf("%s\n", j.dump().c_str());
  } else {
    std::printf("vertex,pi\n");
    for (size_t i = 0; i < n; ++i)
      std::printf("%zu,%s\n", i, fmt(pi[i]).c_str());
  }

  if (!urank_result_converged(r.get())) {
    std::fprintf(stderr,
                 "error[no_convergence]: stop rule not met within %" PRId64
                 " iterations (final residual %s, tolerance %s)\n",
                 urank_result_iterations(r.get()),
                 fmt(urank_result_residual(r.get())).c_str(),
                 fmt(o.tol).c_str());
    return kExitNoConvergence;
  }
  return kExitPass;
}

int cmd_check(const Options& o) {
  const GraphPtr g = load_graph(o);
  if (!urank_graph_connected(g.get()))
    std::fprintf(stderr,
                 "warning: graph is disconnected; the classical random-walk "
                 "setting assumes a connected graph, but the two-sided bound "
                 "needs only a stationary degree distribution and still "
                 "applies\n");
  if (urank_graph_bipartite(g.get()))
    std::fprintf(stderr,
                 "warning: graph is bipartite; the undamped walk is periodic, "
                 "but the two-sided bound is unaffected\n");

  const auto [v, v_len] = load_personalization(o.v, g.get());

  // Convergence is judged first so a starved solver exits 3, not as a
  // failed premise of the bound check.
  const ResultPtr r = solve(o, g.get(), v.get(), v_len);
  if (!urank_result_converged(r.get())) {
    std::fprintf(stderr,
                 "error[no_convergence]: stop rule not met within %" PRId64
                 " iterations (final residual %s, tolerance %s)\n",
                 urank_result_iterations(r.get()),
                 fmt(urank_result_residual(r.get())).c_str(),
                 fmt(o.tol).c_str());
    return kExitNoConvergence;
  }

  urank_bound_report report;
  const urank_status status =
      urank_check_bounds(g.get(), o.method.c_str(), o.c, o.tol, o.max_iter,
                         v.get(), v_len, o.slack, &report);
  if (status != URANK_OK) throw status_error(status);

  if (o.format == "text") {
    std::printf("c            = %s\n", fmt(report.c).c_str());
    std::printf("distance_vf  = %s\n", fmt(report.distance_vf).c_str());
    std::printf("distance_pif = %s\n", fmt(report.distance_pif).c_str());
    std::printf("lower        = %s\n", fmt(report.lower).c_str());
    std::printf("upper        = %s\n", fmt(report.upper).c_str());
    std::printf("slack        = %s\n", fmt(report.slack).c_str());
    std::printf("verdict      = %s\n", report.pass ? "pass" : "fail");
  } else if (o.format == "json") {
    char* json = nullptr;
    const urank_status js = urank_bound_report_json(&report, &json);
    if (js != URANK_OK) throw status_error(js);
    const StringPtr owned(json);
    std::printf("%s\n", json);
  } else {
    std::printf("c,distance_vf,distance_pif,lower,upper,slack,verdict\n");
    std::printf("%s,%s,%s,%s,%s,%s,%s\n", fmt(report.c).c_str(),
                fmt(report.distance_vf).c_str(),
                fmt(report.distance_pif).c_str(), fmt(report.lower).c_str(),
                fmt(report.upper).c_str(), fmt(report.slack).c_str(),
                report.pass ? "pass" : "fail");
  }
  return report.pass ? kExitPass : kExitCheckFailed;
}

int cmd_norms(const Options& o) {
  const GraphPtr g = load_graph(o);
  urank_norm_report report;
  const urank_status status = urank_norm_identities(g.get(), o.c, &report);
  if (status != URANK_OK) throw status_error(status);

  const bool pass = report.deviation_forward <= o.slack &&
                    report.deviation_inverse <= o.slack;
  if (o.format == "text") {
    std::printf("c                 = %s\n", fmt(report.c).c_str());
    std::printf("norm_forward      = %s\n", fmt(report.norm_forward).c_str());
    std::printf("expected_forward  = %s\n",
                fmt(report.expected_forward).c_str());
    std::printf("norm_inverse      = %s\n", fmt(report.norm_inverse).c_str());
    std::printf("expected_inverse  = %s\n",
                fmt(report.expected_inverse).c_str());
    std::printf("deviation_forward = %s\n",
                fmt(report.deviation_forward).c_str());
    std::printf("deviation_inverse = %s\n",
                fmt(report.deviation_inverse).c_str());
    std::printf("verdict           = %s\n", pass ? "pass" : "fail");
  } else if (o.format == "json") {
    char* json = nullptr;
    const urank_status js = urank_norm_report_json(&report, &json);
    if (js != URANK_OK) throw status_error(js);
    const StringPtr owned(json);
    std::printf("%s\n", json);
  } else {
    std::printf(
        "c,norm_forward,norm_inverse,expected_forward,expected_inverse,"
        "deviation_forward,deviation_inverse,verdict\n");
    std::printf("%s,%s,%s,%s,%s,%s,%s,%s\n", fmt(report.c).c_str(),
                fmt(report.norm_forward).c_str(),
                fmt(report.norm_inverse).c_str(),
                fmt(report.expected_forward).c_str(),
                fmt(report.expected_inverse).c_str(),
                fmt(report.deviation_forward).c_str(),
                fmt(report.deviation_inverse).c_str(), pass ? "pass" : "fail");
  }
  return pass ? kExitPass : kExitCheckFailed;
}

struct SweepOptions {
  std::string spec_path;
  std::vector<std::string> families;
  std::vector<double> c_values;
  std::vector<std::string> strategies;
  std::int64_t trials = 0;
  bool dump_spec = false;
};

int cmd_sweep(const Options& o, const SweepOptions& s, const CLI::App* cmd) {
  nlohmann::json spec = nlohmann::json::object();
  if (!s.spec_path.empty()) {
    std::ifstream in(s.spec_path, std::ios::binary);
    if (!in)
      throw CliError{kExitInputError, "error[io]: cannot open '" +
                                          s.spec_path + "' for reading"};
    std::ostringstream buffer;
    buffer << in.rdbuf();
    spec = nlohmann::json::parse(buffer.str(), nullptr, false);
    if (spec.is_discarded() || !spec.is_object())
      throw CliError{kExitInputError, "error[parse]: '" + s.spec_path +
                                          "' is not a JSON object"};
  }
  // Explicit flags override the file (and the built-in defaults).
  if (!s.families.empty()) spec["families"] = s.families;
  if (!s.c_values.empty()) spec["c_values"] = s.c_values;
  if (!s.strategies.empty()) spec["strategies"] = s.strategies;
  if (cmd->count("--trials") > 0) spec["trials"] = s.trials;
  if (cmd->count("--seed") > 0) spec["seed"] = o.seed;
  if (cmd->count("--slack") > 0) spec["slack"] = o.slack;
  if (cmd->count("--tol") > 0) spec["tol"] = o.tol;
  if (cmd->count("--max-iter") > 0) spec["max_iter"] = o.max_iter;
  const std::string spec_json = spec.empty() ? "" : spec.dump();

  if (s.dump_spec) {
    char* rendered = nullptr;
    const urank_status status =
        urank_sweep_render_spec(spec_json.c_str(), &rendered);
    if (status != URANK_OK) throw status_error(status);
    const StringPtr owned(rendered);
    std::printf("%s", rendered);
    return kExitPass;
  }

  urank_sweep* raw = nullptr;
  const urank_status status = urank_sweep_run(spec_json.c_str(), &raw);
  if (status != URANK_OK) throw status_error(status);
  const SweepPtr sweep(raw);

  char* rendered = nullptr;
  urank_status rs;
  if (o.format == "csv") rs = urank_sweep_csv(sweep.get(), &rendered);
  else if (o.format == "json") rs = urank_sweep_json(sweep.get(), &rendered);
  else rs = urank_sweep_summary(sweep.get(), &rendered);
  if (rs != URANK_OK) throw status_error(rs);
  const StringPtr owned(rendered);
  std::printf("%s", rendered);
  if (o.format == "json") std::printf("\n");

  const std::int64_t failures = urank_sweep_fail_count(sweep.get());
  if (failures > 0)
    std::fprintf(stderr, "sweep: %" PRId64 " of %" PRId64 " rows failed\n",
                 failures, urank_sweep_rows(sweep.get()));
  return failures == 0 ? kExitPass : kExitCheckFailed;
}

int cmd_gen(const Options& o) {
  if (o.gen.empty()) throw usage_error("gen requires --gen <family:params>");
  urank_graph* raw = nullptr;
  const urank_status status = urank_graph_generate(o.gen.c_str(), o.seed, &raw);
  if (status != URANK_OK) throw status_error(status);
  const GraphPtr g(raw);

  if (o.format == "text") {
    char* text = nullptr;
    const urank_status fs = urank_graph_format(g.get(), &text);
    if (fs != URANK_OK) throw status_error(fs);
    const StringPtr owned(text);
    std::printf("%s", text);
    return kExitPass;
  }

  const std::int64_t edge_count = urank_graph_size(g.get());
  std::vector<std::int64_t> pairs(static_cast<size_t>(2 * edge_count));
  if (edge_count > 0) {
    const urank_status es = urank_graph_edges(g.get(), pairs.data());
    if (es != URANK_OK) throw status_error(es);
  }
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["n"] = urank_graph_order(g.get());
    auto edges = nlohmann::json::array();
    for (std::int64_t i = 0; i < edge_count; ++i)
      edges.push_back({pairs[2 * i], pairs[2 * i + 1]});
    j["edges"] = std::move(edges);
    std::printf("%s\n", j.dump().c_str());
  } else {
    std::printf("u,w\n");
    for (std::int64_t i = 0; i < edge_count; ++i)
      std::printf("%" PRId64 ",%" PRId64 "\n", pairs[2 * i], pairs[2 * i + 1]);
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"personalized PageRank on undirected graphs: solvers, "
               "two-sided bound checks, norm identities, and sweeps"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "urank 0.1.0");

  Options rank_opts, check_opts, norms_opts, sweep_opts, gen_opts;
  SweepOptions sweep_extra;

  CLI::App* rank = app.add_subcommand("rank", "compute the PageRank vector");
  add_graph_source(rank, rank_opts);
  add_solver_flags(rank, rank_opts, "power");
  add_format(rank, rank_opts);

  CLI::App* check = app.add_subcommand(
      "check", "verify the two-sided L1 bound on ||pi - f||_1");
  add_graph_source(check, check_opts);
  add_solver_flags(check, check_opts, "linear");
  add_format(check, check_opts);
  check->add_option("--slack", check_opts.slack,
                    "tolerance applied to both inequalities")->capture_default_str();

  CLI::App* norms = app.add_subcommand(
      "norms", "measure the operator-norm identities (dense, order <= 64)");
  add_graph_source(norms, norms_opts);
  norms->add_option("--c", norms_opts.c, "damping constant")->capture_default_str();
  norms->add_option("--slack", norms_opts.slack,
                    "largest acceptable deviation")->capture_default_str();
  add_format(norms, norms_opts);

  CLI::App* sweep = app.add_subcommand(
      "sweep", "run a family x damping x strategy sweep of bound checks");
  sweep->add_option("--spec", sweep_extra.spec_path, "sweep spec JSON file");
  sweep->add_option("--family", sweep_extra.families,
                    "generator spec (repeatable; replaces the default list)")
      ->delimiter(',');
  sweep->add_option("--c", sweep_extra.c_values,
                    "damping constant (repeatable; replaces the default list)")
      ->delimiter(',');
  sweep->add_option("--strategy", sweep_extra.strategies,
                    "personalization strategy: uniform | degree | "
                    "point_mass[:vertex] | dirichlet_random[:seed] "
                    "(repeatable; replaces the default list)")
      ->delimiter(',');
  sweep->add_option("--trials", sweep_extra.trials, "instances per family");
  sweep->add_option("--seed", sweep_opts.seed, "sweep master seed");
  sweep->add_option("--slack", sweep_opts.slack, "per-row bound slack");
  sweep->add_option("--tol", sweep_opts.tol, "solver tolerance");
  sweep->add_option("--max-iter", sweep_opts.max_iter, "iteration cap");
  sweep->add_flag("--dump-spec", sweep_extra.dump_spec,
                  "print the fully populated spec and exit");
  sweep_opts.format = "csv";
  add_format(sweep, sweep_opts);

  CLI::App* gen = app.add_subcommand("gen", "generate a graph and print it");
  gen->add_option("--gen", gen_opts.gen, "generator spec")->required();
  gen->add_option("--seed", gen_opts.seed, "sampling seed")->capture_default_str();
  add_format(gen, gen_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (rank->parsed()) return cmd_rank(rank_opts);
    if (check->parsed()) return cmd_check(check_opts);
    if (norms->parsed()) return cmd_norms(norms_opts);
    if (sweep->parsed()) return cmd_sweep(sweep_opts, sweep_extra, sweep);
    if (gen->parsed()) return cmd_gen(gen_opts);
  } catch (const CliError& e) {
    std::fprintf(stderr, "%s\n", e.line.c_str());
    return e.exit_code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error[internal]: %s\n", e.what());
    return kExitInputError;
  }
  return kExitInputError;
}
