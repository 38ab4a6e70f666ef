#include "rzk/graph.hpp"

#include <algorithm>
#include <bit>
#include <deque>

#include "rzk/error.hpp"

namespace rzk {

Graph::Graph(std::size_t num_vertices, std::vector<Edge> edges)
    : num_vertices_(num_vertices), edges_(std::move(edges)) {
  if (num_vertices_ == 0) throw ContractViolation("graph must have at least one vertex");
  for (auto& e : edges_) {
    if (e.u == e.v) throw InvalidEdgeError("self-loop on vertex " + std::to_string(e.u));
    if (e.u >= num_vertices_ || e.v >= num_vertices_) {
      throw InvalidEdgeError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                             ") out of range for " + std::to_string(num_vertices_) + " vertices");
    }
    e = e.canonical();
  }
  std::sort(edges_.begin(), edges_.end());
  if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
    throw InvalidEdgeError("duplicate edge (" + std::to_string(dup->u) + "," +
                           std::to_string(dup->v) + ")");
  }

  offsets_.assign(num_vertices_ + 1, 0);
  for (const auto& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (std::size_t v = 0; v < num_vertices_; ++v) offsets_[v + 1] += offsets_[v];
  incidence_.resize(offsets_.back());
  auto fill = offsets_;
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    incidence_[fill[edges_[id].u]++] = id;
    incidence_[fill[edges_[id].v]++] = id;
  }
  for (Vertex v = 0; v < num_vertices_; ++v) {
    auto first = incidence_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]);
    auto last = incidence_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]);
    std::sort(first, last, [&](EdgeId a, EdgeId b) {
      const auto other = [&](EdgeId id) { return edges_[id].u == v ? edges_[id].v : edges_[id].u; };
      return other(a) < other(b);
    });
  }
}

std::span<const EdgeId> Graph::incident(Vertex v) const {
  if (v >= num_vertices_) throw ContractViolation("vertex " + std::to_string(v) + " out of range");
  return std::span<const EdgeId>(incidence_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
}

std::vector<Vertex> Graph::neighbours(Vertex v) const {
  std::vector<Vertex> out;
  for (EdgeId id : incident(v)) out.push_back(edges_[id].u == v ? edges_[id].v : edges_[id].u);
  return out;
}

std::optional<EdgeId> Graph::find_edge(Vertex a, Vertex b) const {
  if (a >= num_vertices_ || b >= num_vertices_ || a == b) return std::nullopt;
  const Edge key = Edge{a, b}.canonical();
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return std::nullopt;
  return static_cast<EdgeId>(it - edges_.begin());
}

Graph Graph::without_edge(Edge e) const {
  auto id = find_edge(e.u, e.v);
  if (!id) throw InvalidEdgeError("edge not in graph");
  std::vector<Edge> rest;
  rest.reserve(edges_.size() - 1);
  for (EdgeId i = 0; i < edges_.size(); ++i)
    if (i != *id) rest.push_back(edges_[i]);
  return Graph(num_vertices_, std::move(rest));
}

Graph Graph::with_edge(Edge e) const {
  std::vector<Edge> all(edges_.begin(), edges_.end());
  all.push_back(e);
  return Graph(num_vertices_, std::move(all));
}

bool Graph::is_connected() const {
  std::vector<bool> seen(num_vertices_, false);
  std::deque<Vertex> queue{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : neighbours(v)) {
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        queue.push_back(w);
      }
    }
  }
  return count == num_vertices_;
}

Colouring::Colouring(std::vector<Trit> colours) : colours_(std::move(colours)) {
  for (std::size_t v = 0; v < colours_.size(); ++v) {
    if (!gf3::valid(colours_[v])) {
      throw ContractViolation("colour of vertex " + std::to_string(v) + " not in {0,1,2}");
    }
  }
}

std::size_t count_conflicts(const Graph& g, const Colouring& c) {
  if (c.size() != g.num_vertices()) {
    throw ContractViolation("colouring has " + std::to_string(c.size()) + " entries, graph has " +
                            std::to_string(g.num_vertices()) + " vertices");
  }
  return static_cast<std::size_t>(std::count_if(
      g.edges().begin(), g.edges().end(), [&](const Edge& e) { return c[e.u] == c[e.v]; }));
}

bool validate_colouring(const Graph& g, const Colouring& c) { return count_conflicts(g, c) == 0; }

namespace {

class ThreeColourSearch {
 public:
  explicit ThreeColourSearch(const Graph& g) : g_(g), colour_(g.num_vertices(), kUnset) {
    adj_.resize(g.num_vertices());
    for (Vertex v = 0; v < g.num_vertices(); ++v) adj_[v] = g.neighbours(v);
  }

  std::optional<Colouring> run() {
    std::vector<std::uint8_t> domains(g_.num_vertices(), 0b111);
    if (!assign(0, 0, domains)) return std::nullopt;
    if (!recurse(domains, 0, 1)) return std::nullopt;
    return Colouring(std::vector<Trit>(colour_.begin(), colour_.end()));
  }

 private:
  static constexpr std::uint8_t kUnset = 0xff;

  // Sets colour and prunes neighbour domains; false on a wipe-out.
  bool assign(Vertex v, std::uint8_t c, std::vector<std::uint8_t>& domains) {
    colour_[v] = c;
    domains[v] = static_cast<std::uint8_t>(1u << c);
    for (Vertex w : adj_[v]) {
      if (colour_[w] != kUnset) {
        if (colour_[w] == c) return false;
        continue;
      }
      domains[w] &= static_cast<std::uint8_t>(~(1u << c));
      if (domains[w] == 0) return false;
    }
    return true;
  }

  bool recurse(const std::vector<std::uint8_t>& domains, int max_used, std::size_t assigned) {
    if (assigned == g_.num_vertices()) return true;
    Vertex best = 0;
    int best_size = 4;
    std::size_t best_degree = 0;
    for (Vertex v = 0; v < g_.num_vertices(); ++v) {
      if (colour_[v] != kUnset) continue;
      const int size = std::popcount(domains[v]);
      const std::size_t degree = adj_[v].size();
      if (size < best_size || (size == best_size && degree > best_degree)) {
        best = v;
        best_size = size;
        best_degree = degree;
      }
    }
    for (int c = 0; c < 3 && c <= max_used + 1; ++c) {
      if (!(domains[best] & (1u << c))) continue;
      auto next = domains;
      if (assign(best, static_cast<std::uint8_t>(c), next) &&
          recurse(next, std::max(max_used, c), assigned + 1)) {
        return true;
      }
      colour_[best] = kUnset;
    }
    return false;
  }

  const Graph& g_;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::uint8_t> colour_;
};

}  // namespace

std::optional<Colouring> brute_force_three_colour(const Graph& g, std::size_t max_vertices) {
  if (g.num_vertices() > max_vertices) {
    throw SizeLimitError("oracle bound is " + std::to_string(max_vertices) + " vertices, graph has " +
                         std::to_string(g.num_vertices()));
  }
  return ThreeColourSearch(g).run();
}

CriticalityReport is_four_critical(const Graph& g, std::size_t max_vertices) {
  CriticalityReport report;
  report.is_three_colourable = brute_force_three_colour(g, max_vertices).has_value();
  report.near_four_clique = has_near_four_clique(g);
  report.connected = g.is_connected();
  if (!report.connected) report.notes.emplace_back("graph is not connected");

  if (report.is_three_colourable) return report;
  std::vector<std::pair<Edge, Colouring>> witnesses;
  for (const Edge& e : g.edges()) {
    auto c = brute_force_three_colour(g.without_edge(e), max_vertices);
    if (!c) return report;
    witnesses.emplace_back(e, std::move(*c));
  }
  report.is_four_critical = true;
  report.witness_colourings = std::move(witnesses);
  return report;
}

std::optional<NearFourClique> has_near_four_clique(const Graph& g) {
  std::optional<NearFourClique> best;
  std::vector<Vertex> common;
  for (const Edge& e : g.edges()) {
    const auto na = g.neighbours(e.u);
    const auto nb = g.neighbours(e.v);
    common.clear();
    std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(), std::back_inserter(common));
    for (std::size_t i = 0; i < common.size(); ++i) {
      for (std::size_t j = i + 1; j < common.size(); ++j) {
        NearFourClique q{e.u, e.v, common[i], common[j]};
        std::sort(q.begin(), q.end());
        if (!best || q < *best) best = q;
      }
    }
  }
  return best;
}

JoinResult hajos_join(const Graph& g1, Edge e1, const Graph& g2, Edge e2) {
  if (!g1.find_edge(e1.u, e1.v)) throw InvalidEdgeError("first join edge is not in the first graph");
  if (!g2.find_edge(e2.u, e2.v)) throw InvalidEdgeError("second join edge is not in the second graph");

  const std::size_t n1 = g1.num_vertices();
  const std::size_t n2 = g2.num_vertices();
  JoinResult out{Graph(1, {}), {}, {}, {}};
  out.map_first.resize(n1);
  for (Vertex v = 0; v < n1; ++v) out.map_first[v] = v;
  out.map_second.resize(n2);
  for (Vertex w = 0; w < n2; ++w) {
    if (w == e2.u) {
      out.map_second[w] = e1.u;
    } else {
      out.map_second[w] = static_cast<Vertex>(n1 + (w < e2.u ? w : w - 1));
    }
  }

  std::vector<Edge> edges;
  edges.reserve(g1.num_edges() + g2.num_edges() - 1);
  const Edge c1 = e1.canonical();
  const Edge c2 = e2.canonical();
  for (const Edge& e : g1.edges())
    if (e != c1) edges.push_back(e);
  for (const Edge& e : g2.edges())
    if (e != c2) edges.push_back({out.map_second[e.u], out.map_second[e.v]});
  out.bridge = {e1.v, out.map_second[e2.v]};
  edges.push_back(out.bridge);
  out.graph = Graph(n1 + n2 - 1, std::move(edges));
  return out;
}

std::vector<Vertex> bfs_order(const Graph& g) {
  constexpr Vertex kUnseen = ~Vertex{0};
  std::vector<Vertex> order(g.num_vertices(), kUnseen);
  Vertex next = 0;
  for (Vertex root = 0; root < g.num_vertices(); ++root) {
    if (order[root] != kUnseen) continue;
    std::deque<Vertex> queue{root};
    order[root] = next++;
    while (!queue.empty()) {
      const Vertex v = queue.front();
      queue.pop_front();
      for (Vertex w : g.neighbours(v)) {
        if (order[w] == kUnseen) {
          order[w] = next++;
          queue.push_back(w);
        }
      }
    }
  }
  return order;
}

Graph relabel(const Graph& g, std::span<const Vertex> old_to_new) {
  if (old_to_new.size() != g.num_vertices()) throw ContractViolation("relabel map has wrong size");
  std::vector<Edge> edges;
  edges.reserve(g.num_edges());
  for (const Edge& e : g.edges()) edges.push_back({old_to_new[e.u], old_to_new[e.v]});
  return Graph(g.num_vertices(), std::move(edges));
}

Graph assemble(const Graph& g1, Edge e1, const Graph& g2, Edge e2) {
  const JoinResult joined = hajos_join(g1, e1, g2, e2);
  return relabel(joined.graph, bfs_order(joined.graph));
}

}  // namespace rzk
