#include "core/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <utility>

#include "core/error.hpp"
#include "core/format.hpp"
#include "core/rng.hpp"

namespace urank {

namespace {

// How many fresh draws an Erdos-Renyi sample gets to satisfy the
// connected/non-bipartite constraint before we give up. Retries continue the
// same draw stream, so the whole procedure is one deterministic function of
// (n, p, seed).
constexpr int kErRetryBudget = 64;

std::string describe_pair(Vertex u, Vertex w) {
  return "(" + std::to_string(u) + ", " + std::to_string(w) + ")";
}

}  // namespace

Graph Graph::from_edge_list(std::span<const Edge> pairs,
                            std::optional<Vertex> n_hint) {
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  Vertex max_index = -1;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    Vertex u = pairs[i].u;
    Vertex w = pairs[i].w;
    if (u < 0 || w < 0)
      fail(ErrorCode::invalid_argument,
           "negative vertex index in pair " + std::to_string(i) + " " +
               describe_pair(u, w));
    if (u == w)
      fail(ErrorCode::invalid_argument,
           "self-loop " + describe_pair(u, w) + " at pair " +
               std::to_string(i) + "; self-loops are not allowed");
    if (u > w) std::swap(u, w);
    edges.push_back({u, w});
    max_index = std::max(max_index, w);
  }

  const Vertex n = std::max(n_hint.value_or(0), max_index + 1);
  if (n <= 0)
    fail(ErrorCode::invalid_argument,
         "vertex count is zero; pass at least one edge or a positive count");

  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  Graph g;
  g.n_ = n;
  g.edges_ = std::move(edges);

  g.adj_offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const Edge& e : g.edges_) {
    ++g.adj_offsets_[static_cast<std::size_t>(e.u) + 1];
    ++g.adj_offsets_[static_cast<std::size_t>(e.w) + 1];
  }
  for (Vertex v = 0; v < n; ++v)
    g.adj_offsets_[static_cast<std::size_t>(v) + 1] +=
        g.adj_offsets_[static_cast<std::size_t>(v)];

  // Filling from the (u, w)-sorted edge list leaves every neighbor list
  // ascending: for a fixed vertex, partners below it arrive first (ordered by
  // their own index), partners above it after (ordered by the second key).
  g.adj_.resize(static_cast<std::size_t>(g.adj_offsets_[static_cast<std::size_t>(n)]));
  std::vector<std::int64_t> cursor(g.adj_offsets_.begin(), g.adj_offsets_.end() - 1);
  for (const Edge& e : g.edges_) {
    g.adj_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(e.u)]++)] = e.w;
    g.adj_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(e.w)]++)] = e.u;
  }
  return g;
}

std::span<const Vertex> Graph::neighbors(Vertex u) const {
  if (u < 0 || u >= n_)
    fail(ErrorCode::invalid_argument,
         "vertex " + std::to_string(u) + " out of range [0, " +
             std::to_string(n_) + ")");
  const auto begin = adj_offsets_[static_cast<std::size_t>(u)];
  const auto end = adj_offsets_[static_cast<std::size_t>(u) + 1];
  return {adj_.data() + begin, static_cast<std::size_t>(end - begin)};
}

std::int64_t Graph::degree(Vertex u) const {
  if (u < 0 || u >= n_)
    fail(ErrorCode::invalid_argument,
         "vertex " + std::to_string(u) + " out of range [0, " +
             std::to_string(n_) + ")");
  return adj_offsets_[static_cast<std::size_t>(u) + 1] -
         adj_offsets_[static_cast<std::size_t>(u)];
}

DegreeVector degrees(const Graph& g) {
  DegreeVector dv;
  dv.d.resize(static_cast<std::size_t>(g.order()));
  for (Vertex v = 0; v < g.order(); ++v)
    dv.d[static_cast<std::size_t>(v)] = g.degree(v);
  dv.m2 = 2 * g.size();
  return dv;
}

bool is_connected(const Graph& g) {
  const Vertex n = g.order();
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<Vertex> queue{0};
  seen[0] = 1;
  std::int64_t reached = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (Vertex w : g.neighbors(queue[head])) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        ++reached;
        queue.push_back(w);
      }
    }
  }
  return reached == n;
}

bool is_bipartite(const Graph& g) {
  const Vertex n = g.order();
  std::vector<signed char> color(static_cast<std::size_t>(n), -1);
  std::vector<Vertex> queue;
  for (Vertex start = 0; start < n; ++start) {
    if (color[static_cast<std::size_t>(start)] != -1) continue;
    color[static_cast<std::size_t>(start)] = 0;
    queue.assign(1, start);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex v = queue[head];
      const signed char next = static_cast<signed char>(
          1 - color[static_cast<std::size_t>(v)]);
      for (Vertex w : g.neighbors(v)) {
        signed char& cw = color[static_cast<std::size_t>(w)];
        if (cw == -1) {
          cw = next;
          queue.push_back(w);
        } else if (cw != next) {
          return false;
        }
      }
    }
  }
  return true;
}

// ---- generators ------------------------------------------------------

namespace {

Graph build_from(std::vector<Edge> edges, Vertex n) {
  return Graph::from_edge_list(edges, n);
}

Graph make_path(Vertex n) {
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n - 1));
  for (Vertex i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return build_from(std::move(edges), n);
}

Graph make_cycle(Vertex n) {
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n));
  for (Vertex i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  edges.push_back({0, n - 1});
  return build_from(std::move(edges), n);
}

Graph make_complete(Vertex n) {
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) edges.push_back({i, j});
  return build_from(std::move(edges), n);
}

Graph make_star(Vertex n) {
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n - 1));
  for (Vertex i = 1; i < n; ++i) edges.push_back({Vertex{0}, i});
  return build_from(std::move(edges), n);
}

// Circulant: offsets 1..k/2 each contribute a full ring; odd k adds the
// antipodal matching (which is why n*k must be even). Offsets stay below n/2,
// so no ring degenerates and the result is exactly k-regular.
Graph make_circulant(Vertex n, Vertex k) {
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n * k / 2));
  for (Vertex off = 1; off <= k / 2; ++off)
    for (Vertex i = 0; i < n; ++i) edges.push_back({i, (i + off) % n});
  if (k % 2 == 1)
    for (Vertex i = 0; i < n / 2; ++i) edges.push_back({i, i + n / 2});
  return build_from(std::move(edges), n);
}

Graph sample_erdos_renyi(Vertex n, double p, std::uint64_t seed,
                         ErConstraint constraint) {
  // One draw per unordered pair, pairs (i, j) with i < j visited in
  // lexicographic order. The order is part of the format: it makes a
  // (n, p, seed) triple reproducible across implementations.
  Rng rng(seed);
  const int attempts = constraint == ErConstraint::none ? 1 : kErRetryBudget;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    std::vector<Edge> edges;
    for (Vertex i = 0; i < n; ++i)
      for (Vertex j = i + 1; j < n; ++j)
        if (rng.next_double() < p) edges.push_back({i, j});
    Graph g = build_from(std::move(edges), n);
    if (constraint == ErConstraint::none) return g;
    if (is_connected(g) && !is_bipartite(g)) return g;
  }
  fail(ErrorCode::unsatisfiable,
       "erdos_renyi(n=" + std::to_string(n) + ", p=" + format_real(p) +
           ") produced no connected non-bipartite sample in " +
           std::to_string(kErRetryBudget) + " draws");
}

[[noreturn]] void bad_params(const std::string& detail) {
  fail(ErrorCode::invalid_argument, "invalid generator parameters: " + detail);
}

}  // namespace

Graph generate(const GeneratorSpec& spec, std::uint64_t seed) {
  switch (spec.family) {
    case Family::path:
      if (spec.n < 2) bad_params("path needs n >= 2");
      return make_path(spec.n);
    case Family::cycle:
      if (spec.n < 3) bad_params("cycle needs n >= 3");
      return make_cycle(spec.n);
    case Family::complete:
      if (spec.n < 2) bad_params("complete needs n >= 2");
      return make_complete(spec.n);
    case Family::star:
      if (spec.n < 2) bad_params("star needs n >= 2");
      return make_star(spec.n);
    case Family::k_regular_circulant:
      if (spec.n < 2 || spec.k <= 0 || spec.k >= spec.n)
        bad_params("k_regular_circulant needs 0 < k < n");
      if ((spec.n * spec.k) % 2 != 0)
        bad_params("k_regular_circulant needs n*k even");
      return make_circulant(spec.n, spec.k);
    case Family::erdos_renyi:
      if (spec.n < 1) bad_params("erdos_renyi needs n >= 1");
      if (!(spec.p >= 0.0 && spec.p <= 1.0))
        bad_params("erdos_renyi needs p in [0, 1]");
      return sample_erdos_renyi(spec.n, spec.p, seed, spec.constraint);
  }
  fail(ErrorCode::internal, "unknown generator family");
}

// ---- generator spec grammar ------------------------------------------

namespace {

Vertex parse_int_param(std::string_view token, std::string_view what) {
  Vertex value = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end)
    fail(ErrorCode::parse,
         "cannot parse " + std::string(what) + " '" + std::string(token) + "'");
  return value;
}

double parse_real_param(std::string_view token, std::string_view what) {
  double value = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end)
    fail(ErrorCode::parse,
         "cannot parse " + std::string(what) + " '" + std::string(token) + "'");
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = text.find(sep, pos);
    if (next == std::string_view::npos) {
      out.push_back(text.substr(pos));
      return out;
    }
    out.push_back(text.substr(pos, next - pos));
    pos = next + 1;
  }
}

}  // namespace

GeneratorSpec GeneratorSpec::parse(std::string_view text) {
  const std::size_t colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  const std::string_view params =
      colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);

  GeneratorSpec spec;
  if (name == "path") spec.family = Family::path;
  else if (name == "cycle") spec.family = Family::cycle;
  else if (name == "complete") spec.family = Family::complete;
  else if (name == "star") spec.family = Family::star;
  else if (name == "k_regular_circulant") spec.family = Family::k_regular_circulant;
  else if (name == "erdos_renyi") spec.family = Family::erdos_renyi;
  else
    fail(ErrorCode::parse,
         "unknown graph family '" + std::string(name) +
             "' (expected path, cycle, complete, star, k_regular_circulant, "
             "erdos_renyi)");

  if (colon == std::string_view::npos || params.empty())
    fail(ErrorCode::parse,
         "generator spec '" + std::string(text) + "' is missing parameters");

  const auto parts = split(params, ',');
  switch (spec.family) {
    case Family::path:
    case Family::cycle:
    case Family::complete:
    case Family::star:
      if (parts.size() != 1)
        fail(ErrorCode::parse, "'" + std::string(name) + "' takes exactly one parameter (n)");
      spec.n = parse_int_param(parts[0], "vertex count");
      break;
    case Family::k_regular_circulant:
      if (parts.size() != 2)
        fail(ErrorCode::parse, "'k_regular_circulant' takes two parameters (n, k)");
      spec.n = parse_int_param(parts[0], "vertex count");
      spec.k = parse_int_param(parts[1], "degree");
      break;
    case Family::erdos_renyi:
      if (parts.size() != 2 && parts.size() != 3)
        fail(ErrorCode::parse, "'erdos_renyi' takes parameters (n, p[, any])");
      spec.n = parse_int_param(parts[0], "vertex count");
      spec.p = parse_real_param(parts[1], "edge probability");
      if (parts.size() == 3) {
        if (parts[2] == "any") spec.constraint = ErConstraint::none;
        else if (parts[2] == "assume") spec.constraint = ErConstraint::connected_non_bipartite;
        else
          fail(ErrorCode::parse,
               "unknown erdos_renyi mode '" + std::string(parts[2]) +
                   "' (expected 'any' or 'assume')");
      }
      break;
  }
  return spec;
}

std::string GeneratorSpec::family_name() const {
  switch (family) {
    case Family::path: return "path";
    case Family::cycle: return "cycle";
    case Family::complete: return "complete";
    case Family::star: return "star";
    case Family::k_regular_circulant: return "k_regular_circulant";
    case Family::erdos_renyi: return "erdos_renyi";
  }
  return "?";
}

std::string GeneratorSpec::to_string() const {
  std::string out = family_name() + ":" + std::to_string(n);
  if (family == Family::k_regular_circulant) out += "," + std::to_string(k);
  if (family == Family::erdos_renyi) {
    out += "," + format_real(p);
    if (constraint == ErConstraint::none) out += ",any";
  }
  return out;
}

// ---- edge-list text format -------------------------------------------

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') ++pos;
    if (pos > start) tokens.push_back(line.substr(start, pos - start));
  }
  return tokens;
}

Vertex parse_vertex(std::string_view token, std::int64_t line_no) {
  Vertex value = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end)
    fail(ErrorCode::parse, "line " + std::to_string(line_no) +
                               ": expected a vertex index, got '" +
                               std::string(token) + "'");
  return value;
}

}  // namespace

Graph parse_edge_list(std::string_view text) {
  std::vector<Edge> edges;
  std::optional<Vertex> n_hint;
  bool saw_edge = false;

  std::int64_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    line = trim(line);
    if (line.empty() || line.front() == '#') continue;

    const auto tokens = tokenize(line);
    if (tokens[0] == "n") {
      if (saw_edge || n_hint)
        fail(ErrorCode::parse,
             "line " + std::to_string(line_no) +
                 ": 'n' header must appear once, before any edge");
      if (tokens.size() != 2)
        fail(ErrorCode::parse, "line " + std::to_string(line_no) +
                                   ": 'n' header takes exactly one count");
      const Vertex count = parse_vertex(tokens[1], line_no);
      if (count <= 0)
        fail(ErrorCode::parse, "line " + std::to_string(line_no) +
                                   ": vertex count must be positive");
      n_hint = count;
      continue;
    }

    if (tokens.size() != 2)
      fail(ErrorCode::parse, "line " + std::to_string(line_no) +
                                 ": expected 'u w', got " +
                                 std::to_string(tokens.size()) + " token(s)");
    const Vertex u = parse_vertex(tokens[0], line_no);
    const Vertex w = parse_vertex(tokens[1], line_no);
    if (u < 0 || w < 0)
      fail(ErrorCode::parse, "line " + std::to_string(line_no) +
                                 ": negative vertex index " + describe_pair(u, w));
    if (u == w)
      fail(ErrorCode::parse, "line " + std::to_string(line_no) + ": self-loop " +
                                 describe_pair(u, w) + " is not allowed");
    edges.push_back({u, w});
    saw_edge = true;
  }

  if (!saw_edge && !n_hint)
    fail(ErrorCode::parse, "edge list is empty (no edges and no 'n' header)");
  return Graph::from_edge_list(edges, n_hint);
}

Graph read_edge_list(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    fail(ErrorCode::io, "cannot open edge list '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_edge_list(buffer.str());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::parse)
      fail(ErrorCode::parse, path + ": " + e.what());
    throw;
  }
}

std::string to_edge_list(const Graph& g) {
  std::string out = "n " + std::to_string(g.order()) + "\n";
  for (const Edge& e : g.edges())
    out += std::to_string(e.u) + " " + std::to_string(e.w) + "\n";
  return out;
}

}  // namespace urank
