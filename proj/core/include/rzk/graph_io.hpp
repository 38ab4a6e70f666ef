#pragma once

// Text instance format (LF line endings):
//
//   p edge <|V|> <|E|>
//   e <i> <j>            one per edge, 1-based, i < j, sorted
//   c <i> <colour>       optional, one per vertex, colour in {0,1,2}
//
// Lines starting with '#' are comments.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rzk/graph.hpp"

namespace rzk {

struct Instance {
  Graph graph;
  std::optional<Colouring> colouring;
};

/// Writes the instance. `comments` are emitted as '# ' lines right after the
/// problem line.
void write_instance(std::ostream& out, const Graph& g, const Colouring* colouring = nullptr,
                    const std::vector<std::string>& comments = {});
std::string serialize_instance(const Graph& g, const Colouring* colouring = nullptr);

/// Throws ParseError (with line number) on malformed input, duplicate edges,
/// self-loops, out-of-range indices or an incomplete colouring.
Instance parse_instance(std::istream& in);
Instance parse_instance(const std::string& text);

Instance load_instance(const std::string& path);

}  // namespace rzk
