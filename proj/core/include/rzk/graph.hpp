#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rzk/gf3.hpp"

namespace rzk {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

/// Undirected edge; canonical form has u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  constexpr Edge canonical() const noexcept { return u < v ? Edge{u, v} : Edge{v, u}; }
  constexpr auto operator<=>(const Edge&) const = default;
};

/// Immutable simple undirected graph in canonical form: edges stored with
/// u < v and sorted lexicographically. Construction rejects self-loops,
/// duplicate edges and out-of-range endpoints.
class Graph {
 public:
  Graph(std::size_t num_vertices, std::vector<Edge> edges);

  std::size_t num_vertices() const noexcept { return num_vertices_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId id) const { return edges_.at(id); }

  /// Identifiers of the edges incident to `v`, ordered by the other endpoint.
  std::span<const EdgeId> incident(Vertex v) const;
  std::size_t degree(Vertex v) const { return incident(v).size(); }
  std::vector<Vertex> neighbours(Vertex v) const;

  std::optional<EdgeId> find_edge(Vertex a, Vertex b) const;
  bool adjacent(Vertex a, Vertex b) const { return find_edge(a, b).has_value(); }

  Graph without_edge(Edge e) const;
  Graph with_edge(Edge e) const;
  bool is_connected() const;

  bool operator==(const Graph& other) const {
    return num_vertices_ == other.num_vertices_ && edges_ == other.edges_;
  }

 private:
  std::size_t num_vertices_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;  // CSR offsets into incidence_
  std::vector<EdgeId> incidence_;
};

/// Assignment of a colour in {0,1,2} to each vertex.
class Colouring {
 public:
  Colouring() = default;
  explicit Colouring(std::vector<Trit> colours);

  std::size_t size() const noexcept { return colours_.size(); }
  Trit operator[](std::size_t v) const noexcept { return colours_[v]; }
  std::span<const Trit> colours() const noexcept { return colours_; }
  bool operator==(const Colouring&) const = default;

 private:
  std::vector<Trit> colours_;
};

/// True iff no edge is monochromatic. Throws ContractViolation when the
/// colouring length differs from |V|.
bool validate_colouring(const Graph& g, const Colouring& c);

/// Number of monochromatic edges; same length contract as validate_colouring.
std::size_t count_conflicts(const Graph& g, const Colouring& c);

inline constexpr std::size_t kDefaultOracleBound = 32;

/// Exhaustive 3-colouring search (backtracking, forward checking, colour
/// symmetry breaking, vertex 0 pinned to colour 0). Returns a valid
/// colouring or nullopt. Throws SizeLimitError when |V| > max_vertices.
std::optional<Colouring> brute_force_three_colour(const Graph& g,
                                                  std::size_t max_vertices = kDefaultOracleBound);

using NearFourClique = std::array<Vertex, 4>;

struct CriticalityReport {
  bool is_three_colourable = false;
  bool is_four_critical = false;
  /// One entry per edge when four-critical: each colouring is valid for the
  /// graph with that edge deleted. Empty otherwise.
  std::vector<std::pair<Edge, Colouring>> witness_colourings;
  std::optional<NearFourClique> near_four_clique;
  bool connected = true;
  std::vector<std::string> notes;
};

CriticalityReport is_four_critical(const Graph& g, std::size_t max_vertices = kDefaultOracleBound);

/// Lexicographically first 4-vertex set inducing at least 5 edges.
std::optional<NearFourClique> has_near_four_clique(const Graph& g);

/// Hajós join with the applied vertex maps. `e1 = (u, v)` and `e2 = (x, y)`
/// are read as oriented: u is identified with x, and the new edge is (v, y).
struct JoinResult {
  Graph graph;
  std::vector<Vertex> map_first;   // vertex of g1 -> vertex of the result
  std::vector<Vertex> map_second;  // vertex of g2 -> vertex of the result
  Edge bridge;                     // the added edge (v, y) in result numbering
};

JoinResult hajos_join(const Graph& g1, Edge e1, const Graph& g2, Edge e2);

/// Result of hajos_join, vertices renumbered by BFS from vertex 0.
/// Throws InvalidEdgeError when e1 is not in g1 or e2 is not in g2.
Graph assemble(const Graph& g1, Edge e1, const Graph& g2, Edge e2);

/// BFS order from vertex 0 (ties by index; unreached components appended in
/// index order). Returns old -> new.
std::vector<Vertex> bfs_order(const Graph& g);
Graph relabel(const Graph& g, std::span<const Vertex> old_to_new);

}  // namespace rzk
