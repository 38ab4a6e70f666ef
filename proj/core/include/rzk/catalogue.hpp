#pragma once

// Named graphs used as generation seeds, demo instances and test fixtures.

#include <string>
#include <vector>

#include "rzk/graph.hpp"

namespace rzk::catalogue {

Graph complete(std::size_t n);
Graph cycle(std::size_t n);
/// Cycle on `rim` vertices plus a hub (vertex `rim`) joined to all of them.
Graph wheel(std::size_t rim);
/// Mycielski construction: n originals, n shadows, one apex (vertex 2n).
Graph mycielskian(const Graph& g);
/// Mycielskian of C5: 11 vertices, 20 edges, triangle-free, 4-critical.
Graph grotzsch();
/// 12 vertices, 24 edges, 4-regular, triangle-free, 4-chromatic. Not
/// 4-critical.
Graph chvatal();
/// Chvatal graph minus {6,11} and {7,8}: a 4-critical spanning subgraph
/// (12 vertices, 22 edges, triangle-free).
Graph chvatal_critical();
/// 10 vertices, 18 edges, 4-critical, no near-four-clique. Found by greedy
/// edge deletion from a random diamond-free 4-chromatic graph.
Graph sparse_ten();

/// The six-vertex, ten-edge three-colourable demonstration graph.
Graph demo();
/// Colouring (0,1,0,2,1,2) of demo().
Colouring demo_colouring();

struct NamedGraph {
  std::string name;
  Graph graph;
};

/// Four-critical, near-four-clique-free seeds used for hard instances.
std::vector<NamedGraph> hardness_seeds();

}  // namespace rzk::catalogue
