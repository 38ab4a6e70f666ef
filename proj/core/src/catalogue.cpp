#include "rzk/catalogue.hpp"

#include "rzk/error.hpp"

namespace rzk::catalogue {

Graph complete(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) edges.push_back({i, j});
  return Graph(n, std::move(edges));
}

Graph cycle(std::size_t n) {
  if (n < 3) throw ContractViolation("a cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i) edges.push_back({i, static_cast<Vertex>((i + 1) % n)});
  return Graph(n, std::move(edges));
}

Graph wheel(std::size_t rim) {
  const Graph rim_cycle = cycle(rim);
  std::vector<Edge> edges(rim_cycle.edges().begin(), rim_cycle.edges().end());
  const auto hub = static_cast<Vertex>(rim);
  for (Vertex i = 0; i < rim; ++i) edges.push_back({i, hub});
  return Graph(rim + 1, std::move(edges));
}

Graph mycielskian(const Graph& g) {
  const auto n = static_cast<Vertex>(g.num_vertices());
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  for (const Edge& e : g.edges()) {
    edges.push_back({e.u, n + e.v});
    edges.push_back({e.v, n + e.u});
  }
  for (Vertex i = 0; i < n; ++i) edges.push_back({n + i, 2 * n});
  return Graph(2 * n + 1, std::move(edges));
}

Graph grotzsch() { return mycielskian(cycle(5)); }

Graph chvatal() {
  return Graph(12, {{0, 1},  {0, 4},  {0, 6},  {0, 9},  {1, 2},   {1, 5},
                    {1, 7},  {2, 3},  {2, 6},  {2, 8},  {3, 4},   {3, 7},
                    {3, 9},  {4, 5},  {4, 8},  {5, 10}, {5, 11},  {6, 10},
                    {6, 11}, {7, 8},  {7, 11}, {8, 10}, {9, 10},  {9, 11}});
}

Graph chvatal_critical() { return chvatal().without_edge({6, 11}).without_edge({7, 8}); }

Graph sparse_ten() {
  return Graph(10, {{0, 1}, {0, 3}, {0, 7}, {0, 9}, {1, 2}, {1, 5}, {1, 6}, {2, 3}, {2, 4},
                    {2, 5}, {3, 8}, {4, 6}, {4, 7}, {4, 9}, {5, 8}, {5, 9}, {6, 8}, {7, 8}});
}

Graph demo() {
  return Graph(6, {{0, 1}, {0, 3}, {0, 5}, {1, 2}, {1, 3},
                   {1, 5}, {2, 3}, {2, 4}, {3, 4}, {4, 5}});
}

Colouring demo_colouring() { return Colouring({0, 1, 0, 2, 1, 2}); }

std::vector<NamedGraph> hardness_seeds() {
  return {
      {"grotzsch", grotzsch()},
      {"chvatal-critical", chvatal_critical()},
      {"sparse-ten", sparse_ten()},
      {"mycielski-c7", mycielskian(cycle(7))},
  };
}

}  // namespace rzk::catalogue
