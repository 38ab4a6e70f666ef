#pragma once

// Dishonest classical provers. A deterministic strategy is a pair of answer
// tables, one per prover, each indexed by that prover's own challenge only;
// shared randomness is a convex mixture of such pairs, so the best classical
// pass probability is attained by some deterministic pair.

#include <boost/rational.hpp>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rzk/graph.hpp"
#include "rzk/protocol.hpp"

namespace rzk {

using Rational = boost::rational<std::int64_t>;

std::string to_string(const Rational& q);

/// Dense index of a challenge: ((edge * 2 + swapped) * 2 + r - 1) * 2 + s - 1,
/// where `swapped` means i > j. There are 8|E| challenges.
std::size_t challenge_index(const Graph& g, const Challenge& ch);
Challenge challenge_from_index(const Graph& g, std::size_t index, std::uint32_t round = 0);

struct StrategyProfile {
  std::string name;
  std::vector<Answer> left_table;   // size 8|E|
  std::vector<Answer> right_table;  // size 8|E|
};

/// Answers from its table; the round number is ignored.
class TableProver final : public Prover {
 public:
  TableProver(const Graph& g, std::vector<Answer> table);
  std::optional<Answer> respond(const Challenge& ch) override;

 private:
  const Graph* graph_;
  std::vector<Answer> table_;
};

struct EnumerationLimits {
  std::uint64_t max_pairs = 1'000'000;
};

/// Exact pass probability of the profile under the verifiers' distribution.
/// Throws SizeLimitError when the challenge pairs exceed the limit and
/// ContractViolation for tables of the wrong size.
Rational enumerate_pass_probability(const Graph& g, const StrategyProfile& profile,
                                    const EnumerationLimits& limits = {});

/// Honest answers for a fixed (colouring, randomness). With a proper
/// colouring it passes with probability 1.
StrategyProfile colouring_profile(const Graph& g, const Colouring& colouring, std::uint64_t seed,
                                  std::string name = "honest");
/// Honest profile; brute-forces a colouring when none is given. Throws
/// ConfigError when the graph is not 3-colourable.
StrategyProfile honest_profile(const Graph& g, std::uint64_t seed,
                               const std::optional<Colouring>& colouring = std::nullopt);
/// Honest answers from a colouring with exactly one monochromatic edge (a
/// proper colouring of g minus one edge). Throws ConfigError when no single
/// edge removal makes g 3-colourable.
StrategyProfile fake_colouring_profile(const Graph& g, std::uint64_t seed);
/// (0,0) for every challenge.
StrategyProfile constant_profile(const Graph& g);
/// Both provers answer t[vertex][randomiser] from one shared table, which
/// passes every consistency test and ignores the colour test.
StrategyProfile consistency_only_profile(const Graph& g, std::uint64_t seed);

struct SearchOptions {
  std::size_t max_vertices = 8;
  std::size_t restarts = 8;
  std::uint64_t seed = 0;
};

struct SearchResult {
  StrategyProfile profile;
  Rational pass_probability;
};

/// Coordinate ascent over both answer tables, started from the bundled
/// profiles and from random tables; the returned value is exact and is a
/// lower bound on the classical optimum. Throws SizeLimitError above
/// `max_vertices`.
SearchResult best_response_search(const Graph& g, const SearchOptions& options = {});

/// Names accepted by make_profile.
std::vector<std::string> profile_names();

/// Builds a bundled profile by name. `colouring` is used by "honest".
/// Throws ConfigError for an unknown name.
StrategyProfile make_profile(const std::string& name, const Graph& g, std::uint64_t seed,
                             const std::optional<Colouring>& colouring = std::nullopt);

struct Interval {
  double low = 0.0;
  double high = 1.0;
  bool contains(double x) const noexcept { return low <= x && x <= high; }
};

/// Wilson score interval for `successes` out of `trials` at normal quantile z.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z);
inline constexpr double kZ99 = 2.5758293035489004;

/// Smallest n with p^n <= e^-k; nullopt for p = 1. p = 0 needs one round.
std::optional<std::uint64_t> rounds_for_target_k(double p, double k);

struct DetectionReport {
  std::string profile;
  std::size_t num_vertices = 0;
  std::size_t num_edges = 0;
  std::optional<Rational> per_round_pass_probability;
  std::uint64_t rounds = 0;
  std::uint64_t passes = 0;
  double sampled_estimate = 0.0;
  Interval interval;  // Wilson 99%
  bool exact_inside_interval() const {
    if (!per_round_pass_probability) return true;
    return interval.contains(boost::rational_cast<double>(*per_round_pass_probability));
  }
};

/// Runs `rounds` protocol rounds (no abort) with the profile's tables in place
/// of honest provers. The exact value is filled in when enumerable.
DetectionReport simulate_attack(const Graph& g, const StrategyProfile& profile,
                                std::uint64_t rounds, std::uint64_t seed);

/// `key=value` lines: profile, |V|, |E|, exact, sampled estimate, interval,
/// and rounds_for_target_k for k = 1, 10, 100.
void write_detection_report(std::ostream& out, const DetectionReport& report);

}  // namespace rzk
