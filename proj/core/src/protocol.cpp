#include "rzk/protocol.hpp"

#include <chrono>

#include "rzk/error.hpp"
#include "rzk/wire.hpp"

namespace rzk {

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::kColourTest: return "COLOUR_TEST";
    case Mode::kConsistFirst: return "CONSIST_FIRST";
    case Mode::kConsistSecond: return "CONSIST_SECOND";
  }
  return "?";
}

std::string_view to_string(Reason r) {
  switch (r) {
    case Reason::kColourOk: return "COLOUR_OK";
    case Reason::kColourFail: return "COLOUR_FAIL";
    case Reason::kConsistOk: return "CONSIST_OK";
    case Reason::kConsistFail: return "CONSIST_FAIL";
  }
  return "?";
}

std::optional<Mode> parse_mode(std::string_view s) {
  for (Mode m : {Mode::kColourTest, Mode::kConsistFirst, Mode::kConsistSecond})
    if (to_string(m) == s) return m;
  return std::nullopt;
}

std::optional<Reason> parse_reason(std::string_view s) {
  for (Reason r : {Reason::kColourOk, Reason::kColourFail, Reason::kConsistOk, Reason::kConsistFail})
    if (to_string(r) == s) return r;
  return std::nullopt;
}

std::uint64_t required_rounds(std::uint64_t num_edges, std::uint64_t k) {
  if (num_edges == 0 || k == 0) throw ContractViolation("required_rounds needs |E| > 0 and k > 0");
  return 9 * num_edges * k;
}

namespace {

Vertex other_end(const Edge& e, Vertex v) { return e.u == v ? e.v : e.u; }

std::uint8_t flip_randomiser(std::uint8_t r) { return static_cast<std::uint8_t>(3 - r); }

}  // namespace

ChallengePair sample_challenge_pair(const Graph& g, Rng& rng, std::uint32_t round) {
  if (g.num_edges() == 0) throw ContractViolation("cannot challenge a graph without edges");
  ChallengePair p;
  const Edge& e = g.edge(static_cast<EdgeId>(rng.uniform(g.num_edges())));
  const bool swap = rng.bit();
  p.left = {round, swap ? e.v : e.u, swap ? e.u : e.v, static_cast<std::uint8_t>(1 + rng.uniform(2)),
            static_cast<std::uint8_t>(1 + rng.uniform(2))};

  const auto branch = rng.uniform(5);
  if (branch == 0) {
    p.mode = Mode::kColourTest;
    p.right = {round, p.left.i, p.left.j, flip_randomiser(p.left.r), flip_randomiser(p.left.s)};
    return p;
  }
  p.mode = branch <= 2 ? Mode::kConsistFirst : Mode::kConsistSecond;
  const Vertex shared = p.mode == Mode::kConsistFirst ? p.left.i : p.left.j;
  const std::uint8_t fixed = p.mode == Mode::kConsistFirst ? p.left.r : p.left.s;
  const auto inc = g.incident(shared);
  const Vertex other = other_end(g.edge(inc[rng.uniform(inc.size())]), shared);
  const auto free = static_cast<std::uint8_t>(1 + rng.uniform(2));
  if (rng.bit()) {
    p.right = {round, other, shared, free, fixed};
  } else {
    p.right = {round, shared, other, fixed, free};
  }
  return p;
}

bool is_valid_challenge(const Graph& g, const Challenge& c) {
  return g.adjacent(c.i, c.j) && (c.r == 1 || c.r == 2) && (c.s == 1 || c.s == 2);
}

bool is_valid_pair(const Graph& g, const ChallengePair& p) {
  if (!is_valid_challenge(g, p.left) || !is_valid_challenge(g, p.right)) return false;
  if (p.left.round != p.right.round) return false;
  switch (p.mode) {
    case Mode::kColourTest:
      return p.left.i == p.right.i && p.left.j == p.right.j && p.right.r == flip_randomiser(p.left.r) &&
             p.right.s == flip_randomiser(p.left.s);
    case Mode::kConsistFirst:
    case Mode::kConsistSecond: {
      const Vertex shared = p.mode == Mode::kConsistFirst ? p.left.i : p.left.j;
      const std::uint8_t fixed = p.mode == Mode::kConsistFirst ? p.left.r : p.left.s;
      if (p.right.i == shared) return p.right.r == fixed;
      if (p.right.j == shared) return p.right.s == fixed;
      return false;
    }
  }
  return false;
}

Answer prover_answer(const Challenge& ch, const Colouring& colouring, const NodeSequence& seq,
                     const RoundRandomness& rr) {
  const Trit ci = rr.perm.apply(colouring[ch.i]);
  const Trit cj = rr.perm.apply(colouring[ch.j]);
  const Trit bi = expand_randomiser(seq, ch.i, rr);
  const Trit bj = expand_randomiser(seq, ch.j, rr);
  return {gf3::add(gf3::mul(bi, ch.r % 3), ci), gf3::add(gf3::mul(bj, ch.s % 3), cj)};
}

RoundVerdict check_colour_test(const Answer& left, const Answer& right) {
  const bool ok = gf3::add(left.a1, right.a1) != gf3::add(left.a2, right.a2);
  return {ok, Mode::kColourTest, ok ? Reason::kColourOk : Reason::kColourFail};
}

bool right_slot_is_first(const ChallengePair& pair) {
  const Vertex shared = pair.mode == Mode::kConsistFirst ? pair.left.i : pair.left.j;
  if (pair.right.i == shared) return true;
  if (pair.right.j == shared) return false;
  throw ContractViolation("consistency pair does not share the constrained vertex");
}

RoundVerdict check_consistency(const ChallengePair& pair, const Answer& left, const Answer& right) {
  if (pair.mode == Mode::kColourTest) {
    throw ContractViolation("check_consistency called on a colour-test pair");
  }
  const Trit mine = pair.mode == Mode::kConsistFirst ? left.a1 : left.a2;
  const Trit theirs = right_slot_is_first(pair) ? right.a1 : right.a2;
  const bool ok = mine == theirs;
  return {ok, pair.mode, ok ? Reason::kConsistOk : Reason::kConsistFail};
}

RoundVerdict evaluate_round(const ChallengePair& pair, const Answer& left, const Answer& right) {
  return pair.mode == Mode::kColourTest ? check_colour_test(left, right)
                                        : check_consistency(pair, left, right);
}

SharedMaterial make_shared_material(std::size_t num_vertices, std::uint64_t shared_seed) {
  Rng rng(shared_seed, Stream::kNodeSequence);
  auto seq = std::make_shared<const NodeSequence>(build_node_sequence(num_vertices, rng));
  auto rounds = std::make_shared<const SeededRoundSource>(shared_seed, seq->window_length());
  return {std::move(seq), std::move(rounds)};
}

ProverSecret make_prover_secret(const Graph& g, Colouring colouring, std::uint64_t shared_seed) {
  if (colouring.size() != g.num_vertices()) throw ContractViolation("colouring length differs from |V|");
  SharedMaterial m = make_shared_material(g.num_vertices(), shared_seed);
  return {std::move(colouring), std::move(m.sequence), std::move(m.rounds)};
}

HonestProver::HonestProver(ProverSecret secret) : secret_(std::move(secret)) {
  if (!secret_.sequence || !secret_.rounds) throw ContractViolation("prover secret is incomplete");
  if (secret_.colouring.size() != secret_.sequence->num_vertices()) {
    throw ContractViolation("prover colouring and node sequence disagree on |V|");
  }
}

std::optional<Answer> HonestProver::respond(const Challenge& ch) {
  return prover_answer(ch, secret_.colouring, *secret_.sequence, secret_.rounds->at(ch.round));
}

namespace {

Answer exchange(Prover& prover, const Challenge& ch, const Graph& g, const char* side) {
  const auto frame = wire::encode_challenge(ch, g);
  const Challenge received = wire::decode_challenge(frame, g);
  const auto answer = prover.respond(received);
  if (!answer) throw ProtocolAbort(ch.round, std::string(side) + " prover sent no answer");
  if (!answer->valid()) throw ProtocolAbort(ch.round, std::string(side) + " prover answer is not a pair of trits");
  const auto reply = wire::encode_answer(ch.round, *answer);
  const auto [round, decoded] = wire::decode_answer(reply);
  if (round != ch.round) throw ProtocolAbort(ch.round, std::string(side) + " answer carries the wrong round");
  return decoded;
}

}  // namespace

SessionResult run_session(const Graph& g, const SessionConfig& cfg, Prover& left, Prover& right,
                          const TranscriptSink& sink, const RoundClock& clock) {
  SessionResult result;
  result.rounds_planned = cfg.rounds ? *cfg.rounds : required_rounds(g.num_edges(), cfg.security_k);
  if (result.rounds_planned > UINT32_MAX) throw ContractViolation("round index must fit 32 bits");

  Rng verifier(cfg.seed, Stream::kVerifier);
  const auto start = std::chrono::steady_clock::now();
  for (std::uint64_t n = 0; n < result.rounds_planned; ++n) {
    const auto round = static_cast<std::uint32_t>(n);
    TranscriptRecord rec;
    rec.pair = sample_challenge_pair(g, verifier, round);
    rec.left_answer = exchange(left, rec.pair.left, g, "left");
    rec.right_answer = exchange(right, rec.pair.right, g, "right");
    rec.verdict = evaluate_round(rec.pair, rec.left_answer, rec.right_answer);
    if (clock) rec.timing = clock(round);

    ++result.rounds_run;
    ++result.mode_counts[static_cast<std::size_t>(rec.pair.mode)];
    ++result.reason_counts[static_cast<std::size_t>(rec.verdict.reason)];
    if (sink) sink(rec);
    if (!rec.verdict.accepted) {
      ++result.failures;
      if (!result.first_failure_round) result.first_failure_round = round;
      if (cfg.abort_on_first_failure) {
        result.aborted = true;
        break;
      }
    }
  }
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.rounds_per_second =
      result.wall_seconds > 0 ? static_cast<double>(result.rounds_run) / result.wall_seconds : 0.0;
  return result;
}

}  // namespace rzk
