#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>
#include <thread>
#include <vector>

#include "urank.h"

namespace {

struct GraphDeleter {
  void operator()(urank_graph* g) const { urank_graph_free(g); }
};
struct ResultDeleter {
  void operator()(urank_result* r) const { urank_result_free(r); }
};
struct SweepDeleter {
  void operator()(urank_sweep* s) const { urank_sweep_free(s); }
};
using GraphPtr = std::unique_ptr<urank_graph, GraphDeleter>;
using ResultPtr = std::unique_ptr<urank_result, ResultDeleter>;
using SweepPtr = std::unique_ptr<urank_sweep, SweepDeleter>;

GraphPtr make_graph(const char* spec) {
  urank_graph* g = nullptr;
  REQUIRE(urank_graph_generate(spec, 1, &g) == URANK_OK);
  return GraphPtr(g);
}

std::string take_string(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  urank_string_free(s);
  return out;
}

std::filesystem::path temp_file(const char* name, const std::string& content) {
  const std::filesystem::path path =
      std::filesystem::temp_directory_path() / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  return path;
}

}  // namespace

TEST_SUITE("capi") {

TEST_CASE("interface version and status names") {
  CHECK(urank_abi_version() == 1);
  CHECK(std::string(urank_status_name(URANK_OK)) == "ok");
  CHECK(std::string(urank_status_name(URANK_ERR_INVALID_ARGUMENT)) ==
        "invalid_argument");
  CHECK(std::string(urank_status_name(URANK_ERR_PARSE)) == "parse");
  CHECK(std::string(urank_status_name(URANK_ERR_ISOLATED_VERTEX)) ==
        "isolated_vertex");
  CHECK(std::string(urank_status_name(URANK_ERR_DIMENSION_MISMATCH)) ==
        "dimension_mismatch");
  CHECK(std::string(urank_status_name(URANK_ERR_UNSATISFIABLE)) ==
        "unsatisfiable");
  CHECK(std::string(urank_status_name(URANK_ERR_CAP_EXCEEDED)) ==
        "cap_exceeded");
  CHECK(std::string(urank_status_name(URANK_ERR_PRECONDITION)) ==
        "precondition");
  CHECK(std::string(urank_status_name(URANK_ERR_IO)) == "io");
  CHECK(std::string(urank_status_name(URANK_ERR_INTERNAL)) == "internal");
  urank_string_free(nullptr);
  urank_buffer_free(nullptr);
}

TEST_CASE("graph lifecycle through flattened edge pairs") {
  const std::int64_t pairs[] = {0, 1, 1, 2, 1, 0};  // reversed duplicate
  urank_graph* raw = nullptr;
  REQUIRE(urank_graph_from_edges(pairs, 3, -1, &raw) == URANK_OK);
  GraphPtr g(raw);

  CHECK(urank_graph_order(g.get()) == 3);
  CHECK(urank_graph_size(g.get()) == 2);
  CHECK(urank_graph_connected(g.get()) == 1);
  CHECK(urank_graph_bipartite(g.get()) == 1);

  std::int64_t degrees[3] = {};
  REQUIRE(urank_graph_degrees(g.get(), degrees) == URANK_OK);
  CHECK(degrees[0] == 1);
  CHECK(degrees[1] == 2);
  CHECK(degrees[2] == 1);

  std::int64_t out_pairs[4] = {};
  REQUIRE(urank_graph_edges(g.get(), out_pairs) == URANK_OK);
  CHECK(out_pairs[0] == 0);
  CHECK(out_pairs[1] == 1);
  CHECK(out_pairs[2] == 1);
  CHECK(out_pairs[3] == 2);

  char* text = nullptr;
  REQUIRE(urank_graph_format(g.get(), &text) == URANK_OK);
  CHECK(take_string(text).rfind("n 3\n", 0) == 0);

  SUBCASE("n_hint extends the vertex count") {
    urank_graph* wide = nullptr;
    REQUIRE(urank_graph_from_edges(pairs, 3, 5, &wide) == URANK_OK);
    CHECK(urank_graph_order(wide) == 5);
    urank_graph_free(wide);
  }
  SUBCASE("argument validation leaves the out pointer untouched") {
    urank_graph* out = nullptr;
    CHECK(urank_graph_from_edges(nullptr, 3, -1, &out) ==
          URANK_ERR_INVALID_ARGUMENT);
    CHECK(out == nullptr);
    CHECK(urank_graph_from_edges(pairs, 3, -1, nullptr) ==
          URANK_ERR_INVALID_ARGUMENT);
    const std::int64_t loop[] = {2, 2};
    CHECK(urank_graph_from_edges(loop, 1, -1, &out) ==
          URANK_ERR_INVALID_ARGUMENT);
    CHECK(out == nullptr);
    CHECK(std::string(urank_last_error()).find("self-loop") !=
          std::string::npos);
  }
}

TEST_CASE("generation, parsing and file io") {
  GraphPtr path = make_graph("path:3");
  CHECK(urank_graph_order(path.get()) == 3);

  urank_graph* out = nullptr;
  REQUIRE(urank_graph_parse("# two edges\n0 1\n1 2\n", &out) == URANK_OK);
  GraphPtr parsed(out);
  CHECK(urank_graph_size(parsed.get()) == 2);

  SUBCASE("parse errors carry line diagnostics") {
    urank_graph* bad = nullptr;
    CHECK(urank_graph_parse("0 1\n0\n", &bad) == URANK_ERR_PARSE);
    CHECK(bad == nullptr);
    CHECK(std::string(urank_last_error()).find("line 2") != std::string::npos);
  }
  SUBCASE("generator failures map onto distinct codes") {
    urank_graph* bad = nullptr;
    CHECK(urank_graph_generate("mystery:3", 1, &bad) == URANK_ERR_PARSE);
    CHECK(urank_graph_generate("erdos_renyi:2,1.0", 1, &bad) ==
          URANK_ERR_UNSATISFIABLE);
    CHECK(urank_graph_generate(nullptr, 1, &bad) ==
          URANK_ERR_INVALID_ARGUMENT);
  }
  SUBCASE("reading a missing file is an io error") {
    urank_graph* bad = nullptr;
    CHECK(urank_graph_read("/nonexistent/edge.list", &bad) == URANK_ERR_IO);
  }
  SUBCASE("round trip through format and read") {
    char* text = nullptr;
    REQUIRE(urank_graph_format(path.get(), &text) == URANK_OK);
    const std::filesystem::path file =
        temp_file("urank_capi_roundtrip.edges", take_string(text));
    urank_graph* again = nullptr;
    REQUIRE(urank_graph_read(file.string().c_str(), &again) == URANK_OK);
    CHECK(urank_graph_order(again) == 3);
    CHECK(urank_graph_size(again) == 2);
    urank_graph_free(again);
    std::filesystem::remove(file);
  }
}

TEST_CASE("vector helpers") {
  GraphPtr star = make_graph("star:4");

  double* f = nullptr;
  size_t f_len = 0;
  REQUIRE(urank_degree_distribution(star.get(), &f, &f_len) == URANK_OK);
  REQUIRE(f_len == 4);
  CHECK(f[0] == 0.5);
  CHECK(f[1] == doctest::Approx(1.0 / 6).epsilon(1e-15));
  urank_buffer_free(f);

  double* u = nullptr;
  size_t u_len = 0;
  REQUIRE(urank_uniform_vector(4, &u, &u_len) == URANK_OK);
  REQUIRE(u_len == 4);
  CHECK(u[0] == 0.25);
  urank_buffer_free(u);
  CHECK(urank_uniform_vector(0, &u, &u_len) == URANK_ERR_INVALID_ARGUMENT);

  SUBCASE("vector files sniff json against plain text") {
    const std::filesystem::path json_file =
        temp_file("urank_capi_vec.json", "  [0.25, 0.5, 0.25]\n");
    const std::filesystem::path text_file =
        temp_file("urank_capi_vec.txt", "# f\n0.25\n0.5\n0.25\n");
    for (const auto& file : {json_file, text_file}) {
      double* v = nullptr;
      size_t v_len = 0;
      REQUIRE(urank_vector_read(file.string().c_str(), &v, &v_len) ==
              URANK_OK);
      REQUIRE(v_len == 3);
      CHECK(v[1] == 0.5);
      urank_buffer_free(v);
      std::filesystem::remove(file);
    }
  }
  SUBCASE("vector files must describe a distribution") {
    const std::filesystem::path bad =
        temp_file("urank_capi_vec_bad.txt", "0.5\n0.9\n");
    double* v = nullptr;
    size_t v_len = 0;
    CHECK(urank_vector_read(bad.string().c_str(), &v, &v_len) ==
          URANK_ERR_INVALID_ARGUMENT);
    std::filesystem::remove(bad);
  }
}

TEST_CASE("pagerank through the interface") {
  GraphPtr path = make_graph("path:3");

  for (const char* method : {"power", "linear", "oracle"}) {
    urank_result* raw = nullptr;
    REQUIRE(urank_pagerank(path.get(), method, 0.85, 1e-12, 100000, nullptr, 0,
                           &raw) == URANK_OK);
    ResultPtr r(raw);
    size_t len = 0;
    const double* pi = urank_result_pi(r.get(), &len);
    REQUIRE(len == 3);
    CHECK(std::fabs(pi[0] - 19.0 / 74) <= 1e-12);
    CHECK(std::fabs(pi[1] - 36.0 / 74) <= 1e-12);
    CHECK(urank_result_converged(r.get()) == 1);
    CHECK(urank_result_residual(r.get()) <= 1e-11);
    CHECK(std::string(urank_result_method(r.get())) == method);
  }

  SUBCASE("an explicit personalization vector is honored") {
    GraphPtr k3 = make_graph("complete:3");
    const double v[] = {1.0, 0.0, 0.0};
    urank_result* raw = nullptr;
    REQUIRE(urank_pagerank(k3.get(), "linear", 0.5, 1e-12, 100000, v, 3,
                           &raw) == URANK_OK);
    ResultPtr r(raw);
    size_t len = 0;
    const double* pi = urank_result_pi(r.get(), &len);
    CHECK(std::fabs(pi[0] - 0.6) <= 1e-12);
    CHECK(std::fabs(pi[1] - 0.2) <= 1e-12);
  }
  SUBCASE("failures map onto codes") {
    urank_result* raw = nullptr;
    CHECK(urank_pagerank(path.get(), "bogus", 0.85, 1e-12, 100000, nullptr, 0,
                         &raw) == URANK_ERR_INVALID_ARGUMENT);
    CHECK(urank_pagerank(path.get(), "power", 1.5, 1e-12, 100000, nullptr, 0,
                         &raw) == URANK_ERR_INVALID_ARGUMENT);
    const double v2[] = {0.5, 0.5};
    CHECK(urank_pagerank(path.get(), "power", 0.85, 1e-12, 100000, v2, 2,
                         &raw) == URANK_ERR_DIMENSION_MISMATCH);
    CHECK(urank_pagerank(nullptr, "power", 0.85, 1e-12, 100000, nullptr, 0,
                         &raw) == URANK_ERR_INVALID_ARGUMENT);
    GraphPtr big = make_graph("path:65");
    CHECK(urank_pagerank(big.get(), "oracle", 0.85, 1e-12, 100000, nullptr, 0,
                         &raw) == URANK_ERR_CAP_EXCEEDED);
    CHECK(raw == nullptr);
  }
  SUBCASE("running out of iterations is reported, not failed") {
    GraphPtr star = make_graph("star:4");
    urank_result* raw = nullptr;
    REQUIRE(urank_pagerank(star.get(), "power", 0.99, 1e-12, 2, nullptr, 0,
                           &raw) == URANK_OK);
    ResultPtr r(raw);
    CHECK(urank_result_converged(r.get()) == 0);
    CHECK(urank_result_iterations(r.get()) == 2);
  }
}

TEST_CASE("bound and norm reports") {
  GraphPtr star = make_graph("star:4");

  urank_bound_report bounds{};
  REQUIRE(urank_check_bounds(star.get(), "linear", 0.85, 1e-12, 100000,
                             nullptr, 0, 1e-9, &bounds) == URANK_OK);
  CHECK(bounds.pass == 1);
  CHECK(bounds.c == 0.85);
  CHECK(bounds.distance_vf == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(bounds.lower == doctest::Approx(3.0 / 74).epsilon(1e-13));
  CHECK(bounds.upper == bounds.distance_vf);
  CHECK(std::fabs(bounds.distance_pif - 3.0 / 74) <= 1e-10);
  CHECK(bounds.slack == 1e-9);

  char* bound_json = nullptr;
  REQUIRE(urank_bound_report_json(&bounds, &bound_json) == URANK_OK);
  const nlohmann::json bj = nlohmann::json::parse(take_string(bound_json));
  CHECK(bj.at("verdict").get<std::string>() == "pass");
  CHECK(bj.at("lower").get<double>() == bounds.lower);

  SUBCASE("a truncated solve trips the premise check") {
    urank_bound_report report{};
    CHECK(urank_check_bounds(star.get(), "power", 0.99, 1e-12, 1, nullptr, 0,
                             1e-9, &report) == URANK_ERR_PRECONDITION);
  }
  SUBCASE("norm identities") {
    GraphPtr k3 = make_graph("complete:3");
    urank_norm_report norms{};
    REQUIRE(urank_norm_identities(k3.get(), 0.85, &norms) == URANK_OK);
    CHECK(norms.expected_forward == 1.85);
    CHECK(norms.expected_inverse == doctest::Approx(1.0 / 0.15).epsilon(1e-15));
    CHECK(norms.deviation_forward <= 1e-12);
    CHECK(norms.deviation_inverse <= 1e-12);

    char* norm_json = nullptr;
    REQUIRE(urank_norm_report_json(&norms, &norm_json) == URANK_OK);
    const nlohmann::json nj = nlohmann::json::parse(take_string(norm_json));
    CHECK(nj.at("norm_forward").get<double>() == norms.norm_forward);
    CHECK(nj.at("deviations").at("forward").get<double>() ==
          norms.deviation_forward);

    GraphPtr big = make_graph("path:65");
    CHECK(urank_norm_identities(big.get(), 0.85, &norms) ==
          URANK_ERR_CAP_EXCEEDED);
    CHECK(urank_norm_identities(k3.get(), 0.85, nullptr) ==
          URANK_ERR_INVALID_ARGUMENT);
  }
}

TEST_CASE("sweeps through the interface") {
  const char* small_spec =
      "{\"families\": [\"path:3\", \"star:4\"], \"c_values\": [0.85],"
      " \"strategies\": [\"uniform\", \"degree\"], \"trials\": 2,"
      " \"seed\": 9}";

  urank_sweep* raw = nullptr;
  REQUIRE(urank_sweep_run(small_spec, &raw) == URANK_OK);
  SweepPtr sweep(raw);
  CHECK(urank_sweep_rows(sweep.get()) == 8);
  CHECK(urank_sweep_fail_count(sweep.get()) == 0);
  CHECK(urank_sweep_skip_count(sweep.get()) == 0);

  char* csv = nullptr;
  REQUIRE(urank_sweep_csv(sweep.get(), &csv) == URANK_OK);
  const std::string csv_text = take_string(csv);
  CHECK(csv_text.rfind("family,n,seed,c,strategy,", 0) == 0);

  char* json_text = nullptr;
  REQUIRE(urank_sweep_json(sweep.get(), &json_text) == URANK_OK);
  CHECK(nlohmann::json::parse(take_string(json_text)).size() == 8);

  char* summary = nullptr;
  REQUIRE(urank_sweep_summary(sweep.get(), &summary) == URANK_OK);
  CHECK(take_string(summary).rfind("rows=8 pass=8 fail=0 skip=0", 0) == 0);

  SUBCASE("reruns are byte-identical") {
    urank_sweep* again = nullptr;
    REQUIRE(urank_sweep_run(small_spec, &again) == URANK_OK);
    SweepPtr second(again);
    char* csv2 = nullptr;
    REQUIRE(urank_sweep_csv(second.get(), &csv2) == URANK_OK);
    CHECK(take_string(csv2) == csv_text);
  }
  SUBCASE("skips are counted") {
    urank_sweep* skippy = nullptr;
    REQUIRE(urank_sweep_run(
                "{\"families\": [\"erdos_renyi:2,1.0\"], \"trials\": 1,"
                " \"c_values\": [0.85], \"strategies\": [\"uniform\"]}",
                &skippy) == URANK_OK);
    SweepPtr s(skippy);
    CHECK(urank_sweep_rows(s.get()) == 1);
    CHECK(urank_sweep_skip_count(s.get()) == 1);
  }
  SUBCASE("spec handling") {
    urank_sweep* bad = nullptr;
    CHECK(urank_sweep_run("{\"nope\": 1}", &bad) == URANK_ERR_PARSE);
    CHECK(bad == nullptr);

    char* defaults_json = nullptr;
    REQUIRE(urank_sweep_default_spec(&defaults_json) == URANK_OK);
    const std::string defaults_text = take_string(defaults_json);
    CHECK(nlohmann::json::parse(defaults_text).at("families").size() == 18);

    char* rendered = nullptr;
    REQUIRE(urank_sweep_render_spec(nullptr, &rendered) == URANK_OK);
    CHECK(take_string(rendered) == defaults_text);

    REQUIRE(urank_sweep_render_spec("{\"trials\": 3}", &rendered) == URANK_OK);
    CHECK(nlohmann::json::parse(take_string(rendered)).at("trials") == 3);
  }
}

TEST_CASE("error messages are thread-local") {
  double* buffer = nullptr;
  size_t len = 0;
  REQUIRE(urank_uniform_vector(-1, &buffer, &len) ==
          URANK_ERR_INVALID_ARGUMENT);
  const std::string main_message = urank_last_error();
  CHECK(main_message.find("uniform vector") != std::string::npos);

  std::string worker_initial = "sentinel";
  std::string worker_message;
  std::thread worker([&] {
    worker_initial = urank_last_error();  // fresh thread: nothing failed yet
    urank_graph* g = nullptr;
    if (urank_graph_generate("mystery:3", 1, &g) == URANK_ERR_PARSE)
      worker_message = urank_last_error();
  });
  worker.join();

  CHECK(worker_initial.empty());
  CHECK(worker_message.find("mystery") != std::string::npos);
  CHECK(std::string(urank_last_error()) == main_message);
}

}  // TEST_SUITE
