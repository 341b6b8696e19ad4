#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace urank {

using Vertex = std::int64_t;

struct Edge {
  Vertex u = 0;
  Vertex w = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Simple undirected graph on vertices 0..n-1: no self-loops, no parallel
// edges. Edges are normalized (u < w), deduplicated and sorted; adjacency
// lists are built once at construction. Instances are immutable.
class Graph {
 public:
  // Pairs may arrive in any order and orientation; duplicates collapse.
  // n_hint extends the vertex count past the largest endpoint, so trailing
  // isolated vertices are representable (they are only rejected later, when
  // a transition matrix is requested).
  static Graph from_edge_list(std::span<const Edge> pairs,
                              std::optional<Vertex> n_hint = std::nullopt);

  Vertex order() const { return n_; }  // vertex count
  std::int64_t size() const { return static_cast<std::int64_t>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }

  std::span<const Vertex> neighbors(Vertex u) const;  // ascending
  std::int64_t degree(Vertex u) const;

 private:
  Graph() = default;

  Vertex n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::int64_t> adj_offsets_;  // size n_+1
  std::vector<Vertex> adj_;                // size 2|E|
};

struct DegreeVector {
  std::vector<std::int64_t> d;
  std::int64_t m2 = 0;  // sum of degrees, equals 2|E|
};

DegreeVector degrees(const Graph& g);
bool is_connected(const Graph& g);
bool is_bipartite(const Graph& g);

enum class Family { path, cycle, complete, star, k_regular_circulant, erdos_renyi };

// Whether an Erdos-Renyi draw is resampled until it is connected and
// non-bipartite (the standing assumption behind reading the degree
// distribution as the limit of the undamped walk).
enum class ErConstraint { none, connected_non_bipartite };

struct GeneratorSpec {
  Family family = Family::path;
  Vertex n = 0;
  Vertex k = 0;    // k_regular_circulant only
  double p = 0.0;  // erdos_renyi only
  ErConstraint constraint = ErConstraint::connected_non_bipartite;

  // Compact grammar shared by the CLI and sweep spec files:
  //   path:N | cycle:N | complete:N | star:N
  //   k_regular_circulant:N,K
  //   erdos_renyi:N,P[,any]     ("any" skips the connected/non-bipartite retries)
  static GeneratorSpec parse(std::string_view text);

  std::string family_name() const;
  std::string to_string() const;
};

Graph generate(const GeneratorSpec& spec, std::uint64_t seed);

// Edge-list text format: one "u w" pair per line, '#' comments and blank
// lines ignored, optional leading "n <count>" header fixing the vertex count.
Graph parse_edge_list(std::string_view text);
Graph read_edge_list(const std::string& path);
std::string to_edge_list(const Graph& g);

}  // namespace urank
