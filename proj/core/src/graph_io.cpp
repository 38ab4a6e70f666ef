#include "rzk/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "rzk/error.hpp"

namespace rzk {

void write_instance(std::ostream& out, const Graph& g, const Colouring* colouring,
                    const std::vector<std::string>& comments) {
  out << "p edge " << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const auto& line : comments) out << "# " << line << '\n';
  for (const Edge& e : g.edges()) out << "e " << e.u + 1 << ' ' << e.v + 1 << '\n';
  if (colouring) {
    if (colouring->size() != g.num_vertices()) throw ContractViolation("colouring length mismatch");
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      out << "c " << v + 1 << ' ' << static_cast<int>((*colouring)[v]) << '\n';
    }
  }
}

std::string serialize_instance(const Graph& g, const Colouring* colouring) {
  std::ostringstream out;
  write_instance(out, g, colouring);
  return out.str();
}

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

std::uint64_t number(std::string_view field, std::size_t line_no) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError("expected a non-negative integer, got '" + std::string(field) + "'", line_no);
  }
  return value;
}

}  // namespace

Instance parse_instance(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> header;
  std::vector<Edge> edges;
  std::set<Edge> seen;
  std::vector<int> colours;
  std::size_t coloured = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') throw ParseError("CR line ending", line_no);
    const auto f = split(line);
    if (f.empty() || f[0].front() == '#') continue;
    if (f[0] == "p") {
      if (header) throw ParseError("second problem line", line_no);
      if (f.size() != 4 || f[1] != "edge") throw ParseError("expected 'p edge <V> <E>'", line_no);
      header = {number(f[2], line_no), number(f[3], line_no)};
      if (header->first == 0) throw ParseError("graph must have at least one vertex", line_no);
      colours.assign(header->first, -1);
      continue;
    }
    if (!header) throw ParseError("content before the problem line", line_no);
    const std::uint64_t n = header->first;
    if (f[0] == "e") {
      if (f.size() != 3) throw ParseError("expected 'e <i> <j>'", line_no);
      const auto i = number(f[1], line_no);
      const auto j = number(f[2], line_no);
      if (i < 1 || i > n || j < 1 || j > n) throw ParseError("edge endpoint out of range", line_no);
      if (i == j) throw ParseError("self-loop", line_no);
      const Edge e = Edge{static_cast<Vertex>(i - 1), static_cast<Vertex>(j - 1)}.canonical();
      if (!seen.insert(e).second) throw ParseError("duplicate edge", line_no);
      edges.push_back({static_cast<Vertex>(i - 1), static_cast<Vertex>(j - 1)});
    } else if (f[0] == "c") {
      if (f.size() != 3) throw ParseError("expected 'c <i> <colour>'", line_no);
      const auto i = number(f[1], line_no);
      const auto c = number(f[2], line_no);
      if (i < 1 || i > n) throw ParseError("coloured vertex out of range", line_no);
      if (c > 2) throw ParseError("colour must be 0, 1 or 2", line_no);
      if (colours[i - 1] != -1) throw ParseError("vertex coloured twice", line_no);
      colours[i - 1] = static_cast<int>(c);
      ++coloured;
    } else {
      throw ParseError("unknown record '" + std::string(f[0]) + "'", line_no);
    }
  }
  if (!header) throw ParseError("missing problem line");
  if (edges.size() != header->second) {
    throw ParseError("header declares " + std::to_string(header->second) + " edges, found " +
                     std::to_string(edges.size()));
  }
  Instance out{Graph(1, {}), std::nullopt};
  try {
    out.graph = Graph(header->first, std::move(edges));
  } catch (const InvalidEdgeError& e) {
    throw ParseError(e.what());
  }
  if (coloured > 0) {
    if (coloured != header->first) throw ParseError("colouring does not cover every vertex");
    out.colouring = Colouring(std::vector<Trit>(colours.begin(), colours.end()));
  }
  return out;
}

Instance parse_instance(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return parse_instance(in);
}

}  // namespace rzk
