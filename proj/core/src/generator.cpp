#include "rzk/generator.hpp"

#include <algorithm>

#include "rzk/error.hpp"

namespace rzk {

namespace {

// A four-critical graph with, for every edge (same index as graph.edges()),
// a colouring valid for the graph minus that edge.
struct CriticalGraph {
  Graph graph;
  std::vector<Colouring> witnesses;
};

CriticalGraph prepare_seed(const Graph& seed, std::size_t index, const GenerationOptions& options) {
  const std::string label = "seed " + std::to_string(index);
  if (seed.num_vertices() > options.oracle_bound) {
    throw ConfigError(label + " exceeds the oracle bound; its witnesses cannot be computed");
  }
  CriticalityReport report = is_four_critical(seed, options.oracle_bound);
  if (!report.is_four_critical) throw ConfigError(label + " is not four-critical");
  if (report.near_four_clique && !options.allow_near_four_cliques) {
    throw ConfigError(label + " contains a near-four-clique");
  }
  CriticalGraph out{seed, {}};
  out.witnesses.reserve(report.witness_colourings.size());
  for (auto& [edge, colouring] : report.witness_colourings) out.witnesses.push_back(std::move(colouring));
  return out;
}

std::vector<Trit> shifted(const Colouring& c, Trit shift) {
  std::vector<Trit> out(c.colours().begin(), c.colours().end());
  for (auto& x : out) x = gf3::add(x, shift);
  return out;
}

// Glues a colouring of the first part and one of the second part, shifting
// the second so the identified vertex agrees.
Colouring glue(const JoinResult& joined, const Colouring& first, const Colouring& second,
               Vertex identified_first, Vertex identified_second) {
  const Trit shift = gf3::sub(first[identified_first], second[identified_second]);
  const std::vector<Trit> moved = shifted(second, shift);
  std::vector<Trit> colours(joined.graph.num_vertices(), 0);
  for (Vertex v = 0; v < first.size(); ++v) colours[joined.map_first[v]] = first[v];
  for (Vertex w = 0; w < moved.size(); ++w) colours[joined.map_second[w]] = moved[w];
  return Colouring(std::move(colours));
}

CriticalGraph join(const CriticalGraph& g, Edge e1, const CriticalGraph& s, Edge e2) {
  const JoinResult joined = hajos_join(g.graph, e1, s.graph, e2);
  const EdgeId id1 = *g.graph.find_edge(e1.u, e1.v);
  const EdgeId id2 = *s.graph.find_edge(e2.u, e2.v);

  // Witness for each edge of the joined graph, keyed by its canonical edge.
  std::vector<std::pair<Edge, Colouring>> keyed;
  keyed.reserve(joined.graph.num_edges());
  for (EdgeId f = 0; f < g.graph.num_edges(); ++f) {
    if (f == id1) continue;
    const Edge& e = g.graph.edge(f);
    keyed.emplace_back(Edge{joined.map_first[e.u], joined.map_first[e.v]}.canonical(),
                       glue(joined, g.witnesses[f], s.witnesses[id2], e1.u, e2.u));
  }
  for (EdgeId f = 0; f < s.graph.num_edges(); ++f) {
    if (f == id2) continue;
    const Edge& e = s.graph.edge(f);
    keyed.emplace_back(Edge{joined.map_second[e.u], joined.map_second[e.v]}.canonical(),
                       glue(joined, g.witnesses[id1], s.witnesses[f], e1.u, e2.u));
  }
  keyed.emplace_back(joined.bridge.canonical(),
                     glue(joined, g.witnesses[id1], s.witnesses[id2], e1.u, e2.u));

  // Canonical renumbering; witnesses follow their edges.
  const std::vector<Vertex> order = bfs_order(joined.graph);
  Graph renumbered = relabel(joined.graph, order);
  std::vector<Colouring> witnesses(renumbered.num_edges());
  for (auto& [edge, colouring] : keyed) {
    const auto id = renumbered.find_edge(order[edge.u], order[edge.v]);
    if (!id) throw InternalInvariantError("join lost track of an edge");
    std::vector<Trit> colours(colouring.size());
    for (Vertex v = 0; v < colouring.size(); ++v) colours[order[v]] = colouring[v];
    witnesses[*id] = Colouring(std::move(colours));
  }
  return {std::move(renumbered), std::move(witnesses)};
}

Edge random_oriented_edge(const Graph& g, Rng& rng) {
  Edge e = g.edge(static_cast<EdgeId>(rng.uniform(g.num_edges())));
  if (rng.bit()) std::swap(e.u, e.v);
  return e;
}

}  // namespace

GeneratedInstance generate_instance(std::span<const Graph> seed_pool, std::size_t target_vertices,
                                    Rng& rng, const GenerationOptions& options) {
  if (seed_pool.empty()) throw ConfigError("seed pool is empty");
  std::vector<CriticalGraph> seeds;
  seeds.reserve(seed_pool.size());
  for (std::size_t i = 0; i < seed_pool.size(); ++i) seeds.push_back(prepare_seed(seed_pool[i], i, options));

  // reachable[r]: r extra vertices can be added exactly by some join sequence.
  std::vector<bool> reachable(target_vertices + 1, false);
  reachable[0] = true;
  for (std::size_t r = 1; r <= target_vertices; ++r) {
    for (const auto& s : seeds) {
      const std::size_t inc = s.graph.num_vertices() - 1;
      if (inc > 0 && inc <= r && reachable[r - inc]) {
        reachable[r] = true;
        break;
      }
    }
  }

  const auto pick = [&](auto&& fits) -> const CriticalGraph& {
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < seeds.size(); ++i)
      if (fits(seeds[i].graph.num_vertices())) candidates.push_back(i);
    if (candidates.empty()) {
      for (std::size_t i = 0; i < seeds.size(); ++i) candidates.push_back(i);
    }
    return seeds[candidates[rng.uniform(candidates.size())]];
  };

  CriticalGraph current = pick([&](std::size_t n) {
    return n <= target_vertices && reachable[target_vertices - n];
  });
  std::size_t joins = 0;
  while (current.graph.num_vertices() < target_vertices) {
    const std::size_t remaining = target_vertices - current.graph.num_vertices();
    const CriticalGraph& seed = pick([&](std::size_t n) {
      return n - 1 <= remaining && reachable[remaining - (n - 1)];
    });
    if (seed.graph.num_vertices() < 2) throw ConfigError("seed cannot grow the graph");
    const Edge e1 = random_oriented_edge(current.graph, rng);
    const Edge e2 = random_oriented_edge(seed.graph, rng);
    current = join(current, e1, seed, e2);
    ++joins;
  }

  const auto removed = static_cast<EdgeId>(rng.uniform(current.graph.num_edges()));
  const Edge removed_edge = current.graph.edge(removed);
  GeneratedInstance out{current.graph.without_edge(removed_edge), current.witnesses[removed],
                        removed_edge, joins};
  if (!validate_colouring(out.graph, out.colouring)) {
    throw InternalInvariantError("tracked colouring is not valid for the generated instance");
  }
  return out;
}

}  // namespace rzk
