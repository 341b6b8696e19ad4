/* urank — personalized PageRank on undirected graphs, C interface.
 *
 * Every function that can fail returns a urank_status and reports details
 * through urank_last_error(), which is thread-local. Out-parameters are
 * written only on URANK_OK. Objects returned through handle out-parameters
 * must be released with the matching *_free function; strings and numeric
 * buffers allocated by the library must be released with urank_string_free
 * and urank_buffer_free respectively. Handles are immutable once created
 * and may be shared across threads.
 */
#ifndef URANK_H
#define URANK_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum urank_status {
  URANK_OK = 0,
  URANK_ERR_INVALID_ARGUMENT = 1, /* bad parameter value or range */
  URANK_ERR_PARSE = 2,            /* malformed text input */
  URANK_ERR_ISOLATED_VERTEX = 3,  /* degree-0 vertex; walk undefined */
  URANK_ERR_DIMENSION_MISMATCH = 4,
  URANK_ERR_UNSATISFIABLE = 5,    /* generator retry budget exhausted */
  URANK_ERR_CAP_EXCEEDED = 6,     /* dense-path size cap */
  URANK_ERR_PRECONDITION = 7,     /* premise of a check does not hold */
  URANK_ERR_IO = 8,
  URANK_ERR_INTERNAL = 9
} urank_status;

/* Stable lowercase name of a status code ("ok", "parse", ...). */
const char* urank_status_name(urank_status status);

/* Message from the most recent failing call on this thread; empty string
 * if nothing failed yet. The pointer stays valid until the next failing
 * call on the same thread. */
const char* urank_last_error(void);

/* Interface version; bumped on any incompatible change. */
int urank_abi_version(void);

void urank_string_free(char* s);
void urank_buffer_free(double* buffer);

/* ---- graphs ---------------------------------------------------------- */

typedef struct urank_graph urank_graph;

/* pairs holds n_pairs edges as (u, w) couples, flattened; duplicates and
 * reversed duplicates collapse into one undirected edge. n_hint < 0 means
 * "derive the vertex count from the largest endpoint". */
urank_status urank_graph_from_edges(const int64_t* pairs, size_t n_pairs,
                                    int64_t n_hint, urank_graph** out);

/* spec grammar: path:N | cycle:N | complete:N | star:N |
 * k_regular_circulant:N,K | erdos_renyi:N,P[,any]. Erdos-Renyi samples are
 * retried until connected and non-bipartite unless the ",any" suffix lifts
 * that requirement; a hopeless (spec, seed) fails with
 * URANK_ERR_UNSATISFIABLE. */
urank_status urank_graph_generate(const char* spec, uint64_t seed,
                                  urank_graph** out);

/* Edge-list text: one "u w" pair per line, '#' comments, blank lines
 * ignored, optional first header line "n <count>". */
urank_status urank_graph_parse(const char* text, urank_graph** out);
urank_status urank_graph_read(const char* path, urank_graph** out);

void urank_graph_free(urank_graph* g);

int64_t urank_graph_order(const urank_graph* g); /* vertex count */
int64_t urank_graph_size(const urank_graph* g);  /* edge count */
int urank_graph_connected(const urank_graph* g); /* 1 / 0 */
int urank_graph_bipartite(const urank_graph* g); /* 1 / 0 */

/* Writes order(g) entries. */
urank_status urank_graph_degrees(const urank_graph* g, int64_t* out_degrees);

/* Writes 2 * size(g) entries: each edge as a sorted (u, w) couple, edges
 * in lexicographic order. */
urank_status urank_graph_edges(const urank_graph* g, int64_t* out_pairs);

/* Canonical edge-list rendering (header line plus sorted pairs). */
urank_status urank_graph_format(const urank_graph* g, char** out_text);

/* ---- probability vectors --------------------------------------------- */

/* Vectors cross this interface as plain double arrays of the graph's
 * order, in vertex index order, summing to 1. */

/* f: entry i is degree(i) / (2 |E|). Fails on graphs with no edges or
 * with isolated vertices (through the operations that need the walk). */
urank_status urank_degree_distribution(const urank_graph* g, double** out,
                                       size_t* out_len);
urank_status urank_uniform_vector(int64_t n, double** out, size_t* out_len);

/* Reads a vector file: JSON array if the first non-space byte is '[',
 * otherwise one real per line with '#' comments. Entries must be
 * nonnegative and sum to 1 within 1e-9 (renormalized when off by less). */
urank_status urank_vector_read(const char* path, double** out,
                               size_t* out_len);

/* ---- PageRank --------------------------------------------------------- */

typedef struct urank_result urank_result;

/* method: "power" (fixed-point iteration), "linear" (Jacobi on the damped
 * system), or "oracle" (dense elimination, order capped at 64). v may be
 * NULL for the uniform vector, otherwise v_len must equal the graph order.
 * Requires 0 < c < 1, tol > 0, max_iter >= 1. A solve that runs out of
 * iterations still succeeds; inspect urank_result_converged. */
urank_status urank_pagerank(const urank_graph* g, const char* method,
                            double c, double tol, int64_t max_iter,
                            const double* v, size_t v_len,
                            urank_result** out);

/* Borrowed view, valid while the result lives. */
const double* urank_result_pi(const urank_result* r, size_t* out_len);
int64_t urank_result_iterations(const urank_result* r);
double urank_result_residual(const urank_result* r);
int urank_result_converged(const urank_result* r);
const char* urank_result_method(const urank_result* r);
void urank_result_free(urank_result* r);

/* ---- bound and norm checks -------------------------------------------- */

typedef struct urank_bound_report {
  double c;
  double distance_vf;  /* ||v - f||_1 */
  double distance_pif; /* ||pi - f||_1 */
  double lower;        /* (1-c)/(1+c) * distance_vf */
  double upper;        /* distance_vf */
  double slack;
  int pass; /* lower - slack <= distance_pif <= upper + slack */
} urank_bound_report;

typedef struct urank_norm_report {
  double c;
  double norm_forward;      /* measured ||I - c A^T||_1 */
  double norm_inverse;      /* measured ||(I - c A^T)^{-1}||_1 */
  double expected_forward;  /* 1 + c */
  double expected_inverse;  /* 1 / (1 - c) */
  double deviation_forward; /* absolute differences */
  double deviation_inverse;
} urank_norm_report;

/* Solves PageRank for (g, c, v) with the given method and judges the
 * two-sided L1 bound  (1-c)/(1+c) ||v-f||_1 <= ||pi-f||_1 <= ||v-f||_1
 * against the graph's degree distribution f. Premises (f stationary, pi
 * consistent with the damped system) are verified internally and fail
 * with URANK_ERR_PRECONDITION rather than producing a verdict. */
urank_status urank_check_bounds(const urank_graph* g, const char* method,
                                double c, double tol, int64_t max_iter,
                                const double* v, size_t v_len, double slack,
                                urank_bound_report* out);

/* Dense measurement of both operator norms; order capped at 64. */
urank_status urank_norm_identities(const urank_graph* g, double c,
                                   urank_norm_report* out);

/* Canonical JSON renderings (fixed key order, 17 significant digits). */
urank_status urank_bound_report_json(const urank_bound_report* report,
                                     char** out_json);
urank_status urank_norm_report_json(const urank_norm_report* report,
                                    char** out_json);

/* ---- sweeps ------------------------------------------------------------ */

typedef struct urank_sweep urank_sweep;

/* spec_json NULL or empty selects the built-in default corpus; otherwise a
 * JSON object with any of the keys families, c_values, strategies, trials,
 * seed, slack, tol, max_iter (missing keys keep their defaults). */
urank_status urank_sweep_run(const char* spec_json, urank_sweep** out);
void urank_sweep_free(urank_sweep* sweep);

int64_t urank_sweep_rows(const urank_sweep* sweep);
int64_t urank_sweep_fail_count(const urank_sweep* sweep);
int64_t urank_sweep_skip_count(const urank_sweep* sweep);

urank_status urank_sweep_csv(const urank_sweep* sweep, char** out_csv);
urank_status urank_sweep_json(const urank_sweep* sweep, char** out_json);
urank_status urank_sweep_summary(const urank_sweep* sweep, char** out_text);

/* The default spec as JSON, for inspection or as an editing template. */
urank_status urank_sweep_default_spec(char** out_json);

/* Parses spec_json (NULL or empty for the defaults), validates it, and
 * renders the fully populated spec that urank_sweep_run would execute. */
urank_status urank_sweep_render_spec(const char* spec_json, char** out_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* URANK_H */
