#include "rzk/attacks.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <ostream>

#include "rzk/error.hpp"

namespace rzk {

std::string to_string(const Rational& q) {
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

std::size_t challenge_index(const Graph& g, const Challenge& ch) {
  const auto id = g.find_edge(ch.i, ch.j);
  if (!id || (ch.r != 1 && ch.r != 2) || (ch.s != 1 && ch.s != 2)) {
    throw ContractViolation("challenge is not valid for this graph");
  }
  return ((std::size_t{*id} * 2 + (ch.i > ch.j ? 1 : 0)) * 2 + (ch.r - 1u)) * 2 + (ch.s - 1u);
}

Challenge challenge_from_index(const Graph& g, std::size_t index, std::uint32_t round) {
  if (index >= 8 * g.num_edges()) throw ContractViolation("challenge index out of range");
  const Edge& e = g.edge(static_cast<EdgeId>(index / 8));
  const bool swapped = (index / 4) % 2 != 0;
  return {round, swapped ? e.v : e.u, swapped ? e.u : e.v,
          static_cast<std::uint8_t>(1 + (index / 2) % 2), static_cast<std::uint8_t>(1 + index % 2)};
}

TableProver::TableProver(const Graph& g, std::vector<Answer> table)
    : graph_(&g), table_(std::move(table)) {
  if (table_.size() != 8 * g.num_edges()) throw ContractViolation("answer table must cover 8|E| challenges");
}

std::optional<Answer> TableProver::respond(const Challenge& ch) {
  return table_[challenge_index(*graph_, ch)];
}

namespace {

struct PairTerm {
  std::uint32_t left;
  std::uint32_t right;
  Mode mode;
  bool right_first;  // consistency: the shared vertex is in the right's first slot
  std::int64_t weight;
};

bool passes(const PairTerm& t, const Answer& l, const Answer& r) {
  if (t.mode == Mode::kColourTest) return gf3::add(l.a1, r.a1) != gf3::add(l.a2, r.a2);
  return (t.mode == Mode::kConsistFirst ? l.a1 : l.a2) == (t.right_first ? r.a1 : r.a2);
}

// Every (left, right) challenge pair with an integer weight; weights sum to
// `denominator`. A colour-test pair weighs 2L with L = lcm(degrees); a
// consistency pair through a shared vertex of degree d weighs L / d.
struct PairSpace {
  std::vector<PairTerm> terms;
  std::int64_t denominator = 0;
};

PairSpace build_pairs(const Graph& g, std::uint64_t max_pairs) {
  if (g.num_edges() == 0) throw ContractViolation("graph has no edges");
  std::uint64_t count = 0;
  std::int64_t lcm = 1;
  for (const Edge& e : g.edges()) count += 8 * (1 + 4 * g.degree(e.u) + 4 * g.degree(e.v));
  if (count > max_pairs) {
    throw SizeLimitError("enumeration needs " + std::to_string(count) + " challenge pairs, limit is " +
                         std::to_string(max_pairs));
  }
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (g.degree(v) == 0) continue;
    lcm = std::lcm(lcm, static_cast<std::int64_t>(g.degree(v)));
    if (lcm > (std::int64_t{1} << 31)) throw SizeLimitError("degree lcm too large for exact weights");
  }

  PairSpace space;
  space.terms.reserve(count);
  space.denominator = static_cast<std::int64_t>(8 * g.num_edges()) * 10 * lcm;
  for (std::size_t li = 0; li < 8 * g.num_edges(); ++li) {
    const Challenge l = challenge_from_index(g, li);
    const auto left = static_cast<std::uint32_t>(li);
    const Challenge colour{0, l.i, l.j, static_cast<std::uint8_t>(3 - l.r),
                           static_cast<std::uint8_t>(3 - l.s)};
    space.terms.push_back({left, static_cast<std::uint32_t>(challenge_index(g, colour)),
                           Mode::kColourTest, false, 2 * lcm});
    for (Mode mode : {Mode::kConsistFirst, Mode::kConsistSecond}) {
      const Vertex shared = mode == Mode::kConsistFirst ? l.i : l.j;
      const std::uint8_t fixed = mode == Mode::kConsistFirst ? l.r : l.s;
      const std::int64_t w = lcm / static_cast<std::int64_t>(g.degree(shared));
      for (Vertex other : g.neighbours(shared)) {
        for (std::uint8_t free = 1; free <= 2; ++free) {
          for (bool first : {true, false}) {
            const Challenge r = first ? Challenge{0, shared, other, fixed, free}
                                      : Challenge{0, other, shared, free, fixed};
            space.terms.push_back(
                {left, static_cast<std::uint32_t>(challenge_index(g, r)), mode, first, w});
          }
        }
      }
    }
  }
  return space;
}

std::int64_t pass_weight(const PairSpace& space, const std::vector<Answer>& left,
                         const std::vector<Answer>& right) {
  std::int64_t total = 0;
  for (const auto& t : space.terms)
    if (passes(t, left[t.left], right[t.right])) total += t.weight;
  return total;
}

void check_tables(const Graph& g, const StrategyProfile& p) {
  if (p.left_table.size() != 8 * g.num_edges() || p.right_table.size() != 8 * g.num_edges()) {
    throw ContractViolation("profile tables must cover 8|E| challenges");
  }
  for (const auto* table : {&p.left_table, &p.right_table})
    for (const Answer& a : *table)
      if (!a.valid()) throw ContractViolation("profile answer is not a pair of trits");
}

}  // namespace

Rational enumerate_pass_probability(const Graph& g, const StrategyProfile& profile,
                                    const EnumerationLimits& limits) {
  check_tables(g, profile);
  const PairSpace space = build_pairs(g, limits.max_pairs);
  return {pass_weight(space, profile.left_table, profile.right_table), space.denominator};
}

StrategyProfile colouring_profile(const Graph& g, const Colouring& colouring, std::uint64_t seed,
                                  std::string name) {
  const ProverSecret secret = make_prover_secret(g, colouring, seed);
  const RoundRandomness rr = secret.rounds->at(0);
  StrategyProfile p{std::move(name), {}, {}};
  p.left_table.reserve(8 * g.num_edges());
  for (std::size_t k = 0; k < 8 * g.num_edges(); ++k) {
    p.left_table.push_back(prover_answer(challenge_from_index(g, k), secret.colouring, *secret.sequence, rr));
  }
  p.right_table = p.left_table;
  return p;
}

StrategyProfile honest_profile(const Graph& g, std::uint64_t seed,
                               const std::optional<Colouring>& colouring) {
  if (colouring) {
    if (!validate_colouring(g, *colouring)) throw ConfigError("honest profile needs a proper colouring");
    return colouring_profile(g, *colouring, seed);
  }
  auto found = brute_force_three_colour(g, kDefaultOracleBound);
  if (!found) throw ConfigError("graph is not 3-colourable; no honest profile exists");
  return colouring_profile(g, *found, seed);
}

StrategyProfile fake_colouring_profile(const Graph& g, std::uint64_t seed) {
  for (const Edge& e : g.edges()) {
    auto c = brute_force_three_colour(g.without_edge(e), kDefaultOracleBound);
    if (c && count_conflicts(g, *c) == 1) return colouring_profile(g, *c, seed, "fake-colouring");
  }
  throw ConfigError("no colouring with exactly one monochromatic edge was found");
}

StrategyProfile constant_profile(const Graph& g) {
  StrategyProfile p{"constant", std::vector<Answer>(8 * g.num_edges(), Answer{0, 0}), {}};
  p.right_table = p.left_table;
  return p;
}

StrategyProfile consistency_only_profile(const Graph& g, std::uint64_t seed) {
  Rng rng(seed, Stream::kAttack);
  std::vector<std::array<Trit, 2>> t(g.num_vertices());
  for (auto& row : t) row = {rng.trit(), rng.trit()};
  StrategyProfile p{"consistency-only", {}, {}};
  for (std::size_t k = 0; k < 8 * g.num_edges(); ++k) {
    const Challenge ch = challenge_from_index(g, k);
    p.left_table.push_back({t[ch.i][ch.r - 1u], t[ch.j][ch.s - 1u]});
  }
  p.right_table = p.left_table;
  return p;
}

namespace {

class LocalSearch {
 public:
  LocalSearch(const Graph& g, const PairSpace& space, Rng& rng)
      : space_(space), rng_(rng), n_(8 * g.num_edges()), by_left_(n_), by_right_(n_) {
    for (std::uint32_t t = 0; t < space_.terms.size(); ++t) {
      by_left_[space_.terms[t].left].push_back(t);
      by_right_[space_.terms[t].right].push_back(t);
    }
  }

  // Coordinate ascent to a local optimum; returns the pass weight.
  std::int64_t climb(std::vector<Answer>& left, std::vector<Answer>& right) {
    std::vector<std::uint32_t> order(2 * n_);
    std::iota(order.begin(), order.end(), 0u);
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t k = order.size(); k > 1; --k) std::swap(order[k - 1], order[rng_.uniform(k)]);
      for (std::uint32_t coord : order) {
        const bool is_left = coord < n_;
        const std::uint32_t id = is_left ? coord : coord - static_cast<std::uint32_t>(n_);
        auto& table = is_left ? left : right;
        const auto& terms = is_left ? by_left_[id] : by_right_[id];
        const Answer old = table[id];
        std::int64_t best_gain = 0;
        Answer best = old;
        for (unsigned code = 0; code < 9; ++code) {
          const Answer cand{static_cast<Trit>(code % 3), static_cast<Trit>(code / 3)};
          if (cand == old) continue;
          std::int64_t gain = 0;
          for (std::uint32_t t : terms) {
            const auto& term = space_.terms[t];
            const Answer& l = is_left ? cand : left[term.left];
            const Answer& r = is_left ? right[term.right] : cand;
            const Answer& l0 = is_left ? old : left[term.left];
            const Answer& r0 = is_left ? right[term.right] : old;
            gain += term.weight * (static_cast<int>(passes(term, l, r)) -
                                   static_cast<int>(passes(term, l0, r0)));
          }
          if (gain > best_gain) {
            best_gain = gain;
            best = cand;
          }
        }
        if (best_gain > 0) {
          table[id] = best;
          improved = true;
        }
      }
    }
    return pass_weight(space_, left, right);
  }

  void perturb(std::vector<Answer>& table, std::size_t count) {
    for (std::size_t k = 0; k < count; ++k) {
      table[rng_.uniform(table.size())] = {rng_.trit(), rng_.trit()};
    }
  }

  std::size_t size() const noexcept { return n_; }

 private:
  const PairSpace& space_;
  Rng& rng_;
  std::size_t n_;
  std::vector<std::vector<std::uint32_t>> by_left_;
  std::vector<std::vector<std::uint32_t>> by_right_;
};

}  // namespace

SearchResult best_response_search(const Graph& g, const SearchOptions& options) {
  if (g.num_vertices() > options.max_vertices) {
    throw SizeLimitError("best-response search is limited to " + std::to_string(options.max_vertices) +
                         " vertices");
  }
  const PairSpace space = build_pairs(g, EnumerationLimits{}.max_pairs);
  Rng rng(options.seed, Stream::kAttack);
  LocalSearch search(g, space, rng);

  std::vector<StrategyProfile> starts;
  if (auto c = brute_force_three_colour(g, kDefaultOracleBound)) {
    starts.push_back(colouring_profile(g, *c, options.seed));
  } else {
    starts.push_back(fake_colouring_profile(g, options.seed));
  }
  starts.push_back(constant_profile(g));
  starts.push_back(consistency_only_profile(g, options.seed));
  for (std::size_t k = 0; k < options.restarts; ++k) {
    StrategyProfile random{"random", std::vector<Answer>(search.size()), {}};
    for (auto& a : random.left_table) a = {rng.trit(), rng.trit()};
    random.right_table = random.left_table;
    if (k % 2 == 1) search.perturb(random.right_table, search.size());
    starts.push_back(std::move(random));
  }

  std::int64_t best_weight = -1;
  StrategyProfile best;
  for (auto& start : starts) {
    auto left = start.left_table;
    auto right = start.right_table;
    std::int64_t w = search.climb(left, right);
    // Iterated local search: kick the local optimum and climb again.
    for (std::size_t kick = 0; kick < options.restarts; ++kick) {
      auto l2 = left;
      auto r2 = right;
      search.perturb(l2, std::max<std::size_t>(2, search.size() / 16));
      search.perturb(r2, std::max<std::size_t>(2, search.size() / 16));
      const std::int64_t w2 = search.climb(l2, r2);
      if (w2 >= w) {
        w = w2;
        left = std::move(l2);
        right = std::move(r2);
      }
    }
    if (w > best_weight) {
      best_weight = w;
      best = {"best-response", std::move(left), std::move(right)};
    }
  }
  return {best, enumerate_pass_probability(g, best)};
}

std::vector<std::string> profile_names() {
  return {"honest", "fake-colouring", "constant", "consistency-only", "best-response"};
}

StrategyProfile make_profile(const std::string& name, const Graph& g, std::uint64_t seed,
                             const std::optional<Colouring>& colouring) {
  if (name == "honest") return honest_profile(g, seed, colouring);
  if (name == "fake-colouring") return fake_colouring_profile(g, seed);
  if (name == "constant") return constant_profile(g);
  if (name == "consistency-only") return consistency_only_profile(g, seed);
  if (name == "best-response") return best_response_search(g, {.seed = seed}).profile;
  throw ConfigError("unknown profile '" + name + "'");
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  if (successes > trials) throw ContractViolation("successes exceed trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2 * n)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

std::optional<std::uint64_t> rounds_for_target_k(double p, double k) {
  if (p < 0.0 || p > 1.0 || k < 0.0) throw ContractViolation("need 0 <= p <= 1 and k >= 0");
  if (p >= 1.0) return std::nullopt;
  if (p <= 0.0 || k == 0.0) return std::uint64_t{k == 0.0 ? 0u : 1u};
  return static_cast<std::uint64_t>(std::ceil(k / -std::log(p)));
}

DetectionReport simulate_attack(const Graph& g, const StrategyProfile& profile,
                                std::uint64_t rounds, std::uint64_t seed) {
  check_tables(g, profile);
  DetectionReport rep;
  rep.profile = profile.name;
  rep.num_vertices = g.num_vertices();
  rep.num_edges = g.num_edges();
  try {
    rep.per_round_pass_probability = enumerate_pass_probability(g, profile);
  } catch (const SizeLimitError&) {
  }
  rep.rounds = rounds;
  if (rounds > 0) {
    TableProver left(g, profile.left_table);
    TableProver right(g, profile.right_table);
    SessionConfig cfg;
    cfg.seed = seed;
    cfg.rounds = rounds;
    cfg.abort_on_first_failure = false;
    const SessionResult res = run_session(g, cfg, left, right);
    rep.passes = res.rounds_run - res.failures;
    rep.sampled_estimate = static_cast<double>(rep.passes) / static_cast<double>(rounds);
  }
  rep.interval = wilson_interval(rep.passes, rounds, kZ99);
  return rep;
}

void write_detection_report(std::ostream& out, const DetectionReport& r) {
  char buf[64];
  auto dbl = [&](double v) {
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 6);
    return std::string(buf, p);
  };
  out << "profile=" << r.profile << '\n'
      << "vertices=" << r.num_vertices << '\n'
      << "edges=" << r.num_edges << '\n'
      << "exact=" << (r.per_round_pass_probability ? to_string(*r.per_round_pass_probability) : "n/a")
      << '\n'
      << "rounds=" << r.rounds << '\n'
      << "sampled=" << dbl(r.sampled_estimate) << '\n'
      << "interval99=[" << dbl(r.interval.low) << "," << dbl(r.interval.high) << "]\n";
  const double p = r.per_round_pass_probability
                       ? boost::rational_cast<double>(*r.per_round_pass_probability)
                       : r.sampled_estimate;
  for (int k : {1, 10, 100}) {
    const auto n = rounds_for_target_k(p, k);
    out << "rounds_for_k" << k << "=" << (n ? std::to_string(*n) : "unbounded") << '\n';
  }
}

}  // namespace rzk
