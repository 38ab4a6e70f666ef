#pragma once

#include <span>
#include <vector>

#include "rzk/graph.hpp"
#include "rzk/rng.hpp"

namespace rzk {

struct GenerationOptions {
  std::size_t oracle_bound = kDefaultOracleBound;
  /// Seeds containing a near-four-clique are rejected unless this is set.
  /// Only tests should set it (e.g. a pool of {K4}).
  bool allow_near_four_cliques = false;
};

struct GeneratedInstance {
  Graph graph;          // a four-critical graph with one edge removed
  Colouring colouring;  // valid for `graph`
  Edge removed_edge;    // adding it back restores the four-critical graph
  std::size_t joins = 0;
};

/// Grows a four-critical graph by Hajós joins of random seeds until it has at
/// least `target_vertices` (exactly that many when the seed sizes allow),
/// then deletes a uniformly random edge. A colouring of the graph minus each
/// edge is carried through every join, so the certificate is never searched
/// for.
///
/// Throws ConfigError for an empty pool or an unusable seed, and
/// InternalInvariantError if the tracked certificate fails validation.
GeneratedInstance generate_instance(std::span<const Graph> seed_pool, std::size_t target_vertices,
                                    Rng& rng, const GenerationOptions& options = {});

}  // namespace rzk
