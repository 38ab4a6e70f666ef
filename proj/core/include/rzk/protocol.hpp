#pragma once

// One round: both verifiers send an oriented edge (i,j) and randomisers
// (r,s) in {1,2}; each prover answers a1 = b_i*r + c_i, a2 = b_j*s + c_j
// (mod 3) from the round's permuted colouring c and randomisers b.
//
// Mode of a pair, drawn with probabilities 1/5, 2/5, 2/5:
//   COLOUR_TEST     same edge, (r',s') = (-r,-s); accept iff a1+a1' != a2+a2'
//   CONSIST_FIRST   right edge uniform among those at i, in random orientation,
//                   with randomiser r in the slot holding i; accept iff the two
//                   answers for vertex i agree
//   CONSIST_SECOND  the same around j and s

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string_view>

#include "rzk/graph.hpp"
#include "rzk/randomness.hpp"
#include "rzk/rng.hpp"

namespace rzk {

struct Challenge {
  std::uint32_t round = 0;
  Vertex i = 0;
  Vertex j = 0;
  std::uint8_t r = 1;
  std::uint8_t s = 1;
  bool operator==(const Challenge&) const = default;
};

struct Answer {
  Trit a1 = 0;
  Trit a2 = 0;
  bool valid() const noexcept { return gf3::valid(a1) && gf3::valid(a2); }
  bool operator==(const Answer&) const = default;
};

enum class Mode : std::uint8_t { kColourTest, kConsistFirst, kConsistSecond };
enum class Reason : std::uint8_t { kColourOk, kColourFail, kConsistOk, kConsistFail };

std::string_view to_string(Mode m);
std::string_view to_string(Reason r);
std::optional<Mode> parse_mode(std::string_view s);
std::optional<Reason> parse_reason(std::string_view s);

struct ChallengePair {
  Challenge left;
  Challenge right;
  Mode mode = Mode::kColourTest;
  bool operator==(const ChallengePair&) const = default;
};

struct RoundVerdict {
  bool accepted = false;
  Mode mode = Mode::kColourTest;
  Reason reason = Reason::kColourFail;
  bool operator==(const RoundVerdict&) const = default;
};

/// 9 * num_edges * k. Throws ContractViolation unless both are positive.
std::uint64_t required_rounds(std::uint64_t num_edges, std::uint64_t k);

/// Verifiers' joint draw for `round`. Throws ContractViolation on a graph
/// without edges.
ChallengePair sample_challenge_pair(const Graph& g, Rng& rng, std::uint32_t round = 0);

/// True iff the challenge's edge is in g and r, s are in {1,2}.
bool is_valid_challenge(const Graph& g, const Challenge& c);
/// Challenge validity plus the mode's structural invariants.
bool is_valid_pair(const Graph& g, const ChallengePair& p);

Answer prover_answer(const Challenge& ch, const Colouring& colouring, const NodeSequence& seq,
                     const RoundRandomness& rr);

RoundVerdict check_colour_test(const Answer& left, const Answer& right);
/// True when the shared vertex sits in the right challenge's first slot.
/// Throws ContractViolation if the right edge misses the shared vertex.
bool right_slot_is_first(const ChallengePair& pair);
RoundVerdict check_consistency(const ChallengePair& pair, const Answer& left, const Answer& right);
RoundVerdict evaluate_round(const ChallengePair& pair, const Answer& left, const Answer& right);

/// A prover as seen by its verifier. Returning nullopt (or an answer with
/// entries outside {0,1,2}) aborts the session.
class Prover {
 public:
  virtual ~Prover() = default;
  virtual std::optional<Answer> respond(const Challenge& ch) = 0;
};

/// Pre-shared data held identically by both honest provers.
struct ProverSecret {
  Colouring colouring;
  std::shared_ptr<const NodeSequence> sequence;
  std::shared_ptr<const RoundSource> rounds;
};

/// Node sequence and per-round source both provers derive from one seed.
struct SharedMaterial {
  std::shared_ptr<const NodeSequence> sequence;
  std::shared_ptr<const RoundSource> rounds;
};

SharedMaterial make_shared_material(std::size_t num_vertices, std::uint64_t shared_seed);
ProverSecret make_prover_secret(const Graph& g, Colouring colouring, std::uint64_t shared_seed);

class HonestProver final : public Prover {
 public:
  explicit HonestProver(ProverSecret secret);
  std::optional<Answer> respond(const Challenge& ch) override;

 private:
  ProverSecret secret_;
};

struct SessionConfig {
  std::uint32_t security_k = 1;
  std::uint64_t seed = 0;  // verifier randomness
  std::optional<std::uint64_t> rounds;  // overrides 9|E|k when set
  bool abort_on_first_failure = true;
};

struct RoundTiming {
  std::int64_t t_emit_left = 0;
  std::int64_t t_recv_left = 0;
  std::int64_t t_emit_right = 0;
  std::int64_t t_recv_right = 0;
};

struct TranscriptRecord {
  ChallengePair pair;
  Answer left_answer;
  Answer right_answer;
  RoundVerdict verdict;
  RoundTiming timing;
  std::uint32_t round() const noexcept { return pair.left.round; }
  bool operator==(const TranscriptRecord& o) const {
    return pair == o.pair && left_answer == o.left_answer && right_answer == o.right_answer &&
           verdict == o.verdict && timing.t_emit_left == o.timing.t_emit_left &&
           timing.t_recv_left == o.timing.t_recv_left && timing.t_emit_right == o.timing.t_emit_right &&
           timing.t_recv_right == o.timing.t_recv_right;
  }
};

using TranscriptSink = std::function<void(const TranscriptRecord&)>;
using RoundClock = std::function<RoundTiming(std::uint32_t round)>;

struct SessionResult {
  std::uint64_t rounds_planned = 0;
  std::uint64_t rounds_run = 0;
  std::uint64_t failures = 0;
  std::array<std::uint64_t, 4> reason_counts{};  // indexed by Reason
  std::array<std::uint64_t, 3> mode_counts{};    // indexed by Mode
  std::optional<std::uint32_t> first_failure_round;
  bool aborted = false;
  double wall_seconds = 0.0;
  double rounds_per_second = 0.0;
};

/// Runs the session; challenges and answers cross the prover boundary as
/// wire frames. Throws ProtocolAbort when a prover reply is missing or
/// malformed.
SessionResult run_session(const Graph& g, const SessionConfig& cfg, Prover& left, Prover& right,
                          const TranscriptSink& sink = {}, const RoundClock& clock = {});

}  // namespace rzk
