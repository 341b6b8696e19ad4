#include "urank.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "core/analysis.hpp"
#include "core/error.hpp"
#include "core/experiments.hpp"
#include "core/graph.hpp"
#include "core/solver.hpp"
#include "core/transition.hpp"

struct urank_graph {
  urank::Graph g;
};

struct urank_result {
  urank::PageRankResult r;
  std::string method;
};

struct urank_sweep {
  std::vector<urank::SweepRow> rows;
  std::int64_t fail_count = 0;
  std::int64_t skip_count = 0;
};

namespace {

thread_local std::string t_last_error;

urank_status map_code(urank::ErrorCode code) {
  using urank::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_argument: return URANK_ERR_INVALID_ARGUMENT;
    case ErrorCode::parse: return URANK_ERR_PARSE;
    case ErrorCode::isolated_vertex: return URANK_ERR_ISOLATED_VERTEX;
    case ErrorCode::dimension_mismatch: return URANK_ERR_DIMENSION_MISMATCH;
    case ErrorCode::unsatisfiable: return URANK_ERR_UNSATISFIABLE;
    case ErrorCode::cap_exceeded: return URANK_ERR_CAP_EXCEEDED;
    case ErrorCode::precondition: return URANK_ERR_PRECONDITION;
    case ErrorCode::io: return URANK_ERR_IO;
    case ErrorCode::internal: return URANK_ERR_INTERNAL;
  }
  return URANK_ERR_INTERNAL;
}

urank_status set_error(urank_status status, const char* message) {
  t_last_error = message;
  return status;
}

// Runs fn inside the library's exception boundary; every failure becomes a
// status code plus a thread-local message.
template <class Fn>
urank_status guarded(Fn&& fn) {
  try {
    fn();
    return URANK_OK;
  } catch (const urank::Error& e) {
    return set_error(map_code(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(URANK_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(URANK_ERR_INTERNAL, e.what());
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

double* copy_buffer(std::span<const double> values, size_t* out_len) {
  double* out = static_cast<double*>(std::malloc(values.size() * sizeof(double)));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, values.data(), values.size() * sizeof(double));
  *out_len = values.size();
  return out;
}

template <class T>
void require(const T* pointer, const char* name) {
  if (!pointer)
    urank::fail(urank::ErrorCode::invalid_argument,
                std::string(name) + " must not be null");
}

urank::ProbabilityVector vector_or_uniform(const urank_graph* g,
                                           const double* v, size_t v_len) {
  if (!v) return urank::uniform_vector(g->g.order());
  if (static_cast<std::int64_t>(v_len) != g->g.order())
    urank::fail(urank::ErrorCode::dimension_mismatch,
                "personalization vector has " + std::to_string(v_len) +
                    " entries but the graph has " +
                    std::to_string(g->g.order()) + " vertices");
  return urank::ProbabilityVector::from_entries(
      std::vector<double>(v, v + v_len));
}

urank::Method parse_method(const char* method) {
  require(method, "method");
  const std::string_view name(method);
  if (name == "power") return urank::Method::power;
  if (name == "linear") return urank::Method::linear;
  if (name == "oracle") return urank::Method::dense_oracle;
  urank::fail(urank::ErrorCode::invalid_argument,
              "unknown method '" + std::string(name) +
                  "' (expected power, linear, oracle)");
}

std::string read_file(const char* path) {
  require(path, "path");
  std::ifstream in(path, std::ios::binary);
  if (!in)
    urank::fail(urank::ErrorCode::io,
                "cannot open '" + std::string(path) + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad())
    urank::fail(urank::ErrorCode::io,
                "read failure on '" + std::string(path) + "'");
  return std::move(buffer).str();
}

urank::BoundReport to_core(const urank_bound_report& report) {
  urank::BoundReport core;
  core.c = report.c;
  core.distance_vf = report.distance_vf;
  core.distance_pif = report.distance_pif;
  core.lower = report.lower;
  core.upper = report.upper;
  core.slack = report.slack;
  core.pass = report.pass != 0;
  return core;
}

urank::NormReport to_core(const urank_norm_report& report) {
  urank::NormReport core;
  core.c = report.c;
  core.norm_forward = report.norm_forward;
  core.norm_inverse = report.norm_inverse;
  core.expected_forward = report.expected_forward;
  core.expected_inverse = report.expected_inverse;
  core.deviation_forward = report.deviation_forward;
  core.deviation_inverse = report.deviation_inverse;
  return core;
}

}  // namespace

extern "C" {

const char* urank_status_name(urank_status status) {
  switch (status) {
    case URANK_OK: return "ok";
    case URANK_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case URANK_ERR_PARSE: return "parse";
    case URANK_ERR_ISOLATED_VERTEX: return "isolated_vertex";
    case URANK_ERR_DIMENSION_MISMATCH: return "dimension_mismatch";
    case URANK_ERR_UNSATISFIABLE: return "unsatisfiable";
    case URANK_ERR_CAP_EXCEEDED: return "cap_exceeded";
    case URANK_ERR_PRECONDITION: return "precondition";
    case URANK_ERR_IO: return "io";
    case URANK_ERR_INTERNAL: return "internal";
  }
  return "internal";
}

const char* urank_last_error(void) { return t_last_error.c_str(); }

int urank_abi_version(void) { return 1; }

void urank_string_free(char* s) { std::free(s); }
void urank_buffer_free(double* buffer) { std::free(buffer); }

/* ---- graphs ---------------------------------------------------------- */

urank_status urank_graph_from_edges(const int64_t* pairs, size_t n_pairs,
                                    int64_t n_hint, urank_graph** out) {
  return guarded([&] {
    require(out, "out");
    if (n_pairs > 0) require(pairs, "pairs");
    std::vector<urank::Edge> edges;
    edges.reserve(n_pairs);
    for (size_t i = 0; i < n_pairs; ++i)
      edges.push_back({pairs[2 * i], pairs[2 * i + 1]});
    std::optional<urank::Vertex> hint;
    if (n_hint >= 0) hint = n_hint;
    *out = new urank_graph{urank::Graph::from_edge_list(edges, hint)};
  });
}

urank_status urank_graph_generate(const char* spec, uint64_t seed,
                                  urank_graph** out) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "out");
    *out = new urank_graph{
        urank::generate(urank::GeneratorSpec::parse(spec), seed)};
  });
}

urank_status urank_graph_parse(const char* text, urank_graph** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new urank_graph{urank::parse_edge_list(text)};
  });
}

urank_status urank_graph_read(const char* path, urank_graph** out) {
  return guarded([&] {
    require(out, "out");
    *out = new urank_graph{urank::read_edge_list(path ? path : "")};
  });
}

void urank_graph_free(urank_graph* g) { delete g; }

int64_t urank_graph_order(const urank_graph* g) { return g ? g->g.order() : 0; }
int64_t urank_graph_size(const urank_graph* g) { return g ? g->g.size() : 0; }
int urank_graph_connected(const urank_graph* g) {
  return g && urank::is_connected(g->g) ? 1 : 0;
}
int urank_graph_bipartite(const urank_graph* g) {
  return g && urank::is_bipartite(g->g) ? 1 : 0;
}

urank_status urank_graph_degrees(const urank_graph* g, int64_t* out_degrees) {
  return guarded([&] {
    require(g, "graph");
    require(out_degrees, "out_degrees");
    const urank::DegreeVector d = urank::degrees(g->g);
    for (size_t i = 0; i < d.d.size(); ++i) out_degrees[i] = d.d[i];
  });
}

urank_status urank_graph_edges(const urank_graph* g, int64_t* out_pairs) {
  return guarded([&] {
    require(g, "graph");
    require(out_pairs, "out_pairs");
    size_t i = 0;
    for (const urank::Edge& e : g->g.edges()) {
      out_pairs[i++] = e.u;
      out_pairs[i++] = e.w;
    }
  });
}

urank_status urank_graph_format(const urank_graph* g, char** out_text) {
  return guarded([&] {
    require(g, "graph");
    require(out_text, "out_text");
    *out_text = copy_string(urank::to_edge_list(g->g));
  });
}

/* ---- probability vectors --------------------------------------------- */

urank_status urank_degree_distribution(const urank_graph* g, double** out,
                                       size_t* out_len) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    require(out_len, "out_len");
    const urank::ProbabilityVector f = urank::degree_distribution(g->g);
    *out = copy_buffer(f.entries(), out_len);
  });
}

urank_status urank_uniform_vector(int64_t n, double** out, size_t* out_len) {
  return guarded([&] {
    require(out, "out");
    require(out_len, "out_len");
    const urank::ProbabilityVector u = urank::uniform_vector(n);
    *out = copy_buffer(u.entries(), out_len);
  });
}

urank_status urank_vector_read(const char* path, double** out,
                               size_t* out_len) {
  return guarded([&] {
    require(out, "out");
    require(out_len, "out_len");
    const std::string text = read_file(path);
    const size_t first = text.find_first_not_of(" \t\r\n");
    const bool json = first != std::string::npos && text[first] == '[';
    const urank::ProbabilityVector v =
        json ? urank::ProbabilityVector::from_json(text)
             : urank::ProbabilityVector::from_text(text);
    *out = copy_buffer(v.entries(), out_len);
  });
}

/* ---- PageRank --------------------------------------------------------- */

urank_status urank_pagerank(const urank_graph* g, const char* method,
                            double c, double tol, int64_t max_iter,
                            const double* v, size_t v_len,
                            urank_result** out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    const urank::Method m = parse_method(method);
    const urank::RowStochasticMatrix a = urank::transition_matrix(g->g);
    const urank::ProbabilityVector pv = vector_or_uniform(g, v, v_len);
    urank::PageRankConfig cfg;
    cfg.c = c;
    cfg.tol = tol;
    cfg.max_iter = max_iter;
    urank::PageRankResult r = urank::solve(a, m, cfg, pv);
    *out = new urank_result{std::move(r), urank::method_name(m)};
  });
}

const double* urank_result_pi(const urank_result* r, size_t* out_len) {
  if (!r) {
    if (out_len) *out_len = 0;
    return nullptr;
  }
  if (out_len) *out_len = r->r.pi.entries().size();
  return r->r.pi.entries().data();
}

int64_t urank_result_iterations(const urank_result* r) {
  return r ? r->r.iterations : 0;
}
double urank_result_residual(const urank_result* r) {
  return r ? r->r.residual : 0.0;
}
int urank_result_converged(const urank_result* r) {
  return r && r->r.converged ? 1 : 0;
}
const char* urank_result_method(const urank_result* r) {
  return r ? r->method.c_str() : "";
}
void urank_result_free(urank_result* r) { delete r; }

/* ---- bound and norm checks -------------------------------------------- */

urank_status urank_check_bounds(const urank_graph* g, const char* method,
                                double c, double tol, int64_t max_iter,
                                const double* v, size_t v_len, double slack,
                                urank_bound_report* out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    const urank::Method m = parse_method(method);
    const urank::RowStochasticMatrix a = urank::transition_matrix(g->g);
    const urank::ProbabilityVector pv = vector_or_uniform(g, v, v_len);
    const urank::ProbabilityVector f = urank::degree_distribution(g->g);
    urank::PageRankConfig cfg;
    cfg.c = c;
    cfg.tol = tol;
    cfg.max_iter = max_iter;
    const urank::PageRankResult r = urank::solve(a, m, cfg, pv);
    const urank::BoundReport report =
        urank::check_bounds(a, c, pv, f, r.pi, slack);
    out->c = report.c;
    out->distance_vf = report.distance_vf;
    out->distance_pif = report.distance_pif;
    out->lower = report.lower;
    out->upper = report.upper;
    out->slack = report.slack;
    out->pass = report.pass ? 1 : 0;
  });
}

urank_status urank_norm_identities(const urank_graph* g, double c,
                                   urank_norm_report* out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    const urank::RowStochasticMatrix a = urank::transition_matrix(g->g);
    const urank::NormReport report = urank::norm_identities(a, c);
    out->c = report.c;
    out->norm_forward = report.norm_forward;
    out->norm_inverse = report.norm_inverse;
    out->expected_forward = report.expected_forward;
    out->expected_inverse = report.expected_inverse;
    out->deviation_forward = report.deviation_forward;
    out->deviation_inverse = report.deviation_inverse;
  });
}

urank_status urank_bound_report_json(const urank_bound_report* report,
                                     char** out_json) {
  return guarded([&] {
    require(report, "report");
    require(out_json, "out_json");
    *out_json = copy_string(to_core(*report).to_json());
  });
}

urank_status urank_norm_report_json(const urank_norm_report* report,
                                    char** out_json) {
  return guarded([&] {
    require(report, "report");
    require(out_json, "out_json");
    *out_json = copy_string(to_core(*report).to_json());
  });
}

/* ---- sweeps ------------------------------------------------------------ */

urank_status urank_sweep_run(const char* spec_json, urank_sweep** out) {
  return guarded([&] {
    require(out, "out");
    const urank::SweepSpec spec =
        (spec_json && *spec_json) ? urank::SweepSpec::from_json(spec_json)
                                  : urank::SweepSpec::defaults();
    auto sweep = std::make_unique<urank_sweep>();
    sweep->rows = urank::run_sweep(spec);
    for (const urank::SweepRow& row : sweep->rows) {
      if (row.verdict == urank::RowVerdict::fail) ++sweep->fail_count;
      if (row.verdict == urank::RowVerdict::skip) ++sweep->skip_count;
    }
    *out = sweep.release();
  });
}

void urank_sweep_free(urank_sweep* sweep) { delete sweep; }

int64_t urank_sweep_rows(const urank_sweep* sweep) {
  return sweep ? static_cast<std::int64_t>(sweep->rows.size()) : 0;
}
int64_t urank_sweep_fail_count(const urank_sweep* sweep) {
  return sweep ? sweep->fail_count : 0;
}
int64_t urank_sweep_skip_count(const urank_sweep* sweep) {
  return sweep ? sweep->skip_count : 0;
}

urank_status urank_sweep_csv(const urank_sweep* sweep, char** out_csv) {
  return guarded([&] {
    require(sweep, "sweep");
    require(out_csv, "out_csv");
    *out_csv = copy_string(urank::sweep_to_csv(sweep->rows));
  });
}

urank_status urank_sweep_json(const urank_sweep* sweep, char** out_json) {
  return guarded([&] {
    require(sweep, "sweep");
    require(out_json, "out_json");
    *out_json = copy_string(urank::sweep_to_json(sweep->rows));
  });
}

urank_status urank_sweep_summary(const urank_sweep* sweep, char** out_text) {
  return guarded([&] {
    require(sweep, "sweep");
    require(out_text, "out_text");
    *out_text = copy_string(urank::tightness_summary(sweep->rows).to_text());
  });
}

urank_status urank_sweep_default_spec(char** out_json) {
  return guarded([&] {
    require(out_json, "out_json");
    *out_json = copy_string(urank::SweepSpec::defaults().to_json());
  });
}

urank_status urank_sweep_render_spec(const char* spec_json, char** out_json) {
  return guarded([&] {
    require(out_json, "out_json");
    const urank::SweepSpec spec =
        (spec_json && *spec_json) ? urank::SweepSpec::from_json(spec_json)
                                  : urank::SweepSpec::defaults();
    *out_json = copy_string(spec.to_json());
  });
}

} /* extern "C" */
