#include "rzk/protocol.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "rzk/catalogue.hpp"
#include "rzk/error.hpp"
#include "rzk/generator.hpp"

namespace rzk {
namespace {

// Every pair the verifiers may issue, built from the mode definitions.
std::vector<ChallengePair> all_pairs(const Graph& g) {
  std::vector<ChallengePair> out;
  for (const Edge& e : g.edges()) {
    for (int swap = 0; swap < 2; ++swap) {
      const Vertex i = swap ? e.v : e.u;
      const Vertex j = swap ? e.u : e.v;
      for (std::uint8_t r = 1; r <= 2; ++r)
        for (std::uint8_t s = 1; s <= 2; ++s) {
          const Challenge left{0, i, j, r, s};
          out.push_back({left, {0, i, j, static_cast<std::uint8_t>(3 - r), static_cast<std::uint8_t>(3 - s)},
                         Mode::kColourTest});
          for (Mode m : {Mode::kConsistFirst, Mode::kConsistSecond}) {
            const Vertex shared = m == Mode::kConsistFirst ? i : j;
            const std::uint8_t fixed = m == Mode::kConsistFirst ? r : s;
            for (const Vertex other : g.neighbours(shared))
              for (std::uint8_t free = 1; free <= 2; ++free) {
                out.push_back({left, {0, shared, other, fixed, free}, m});
                out.push_back({left, {0, other, shared, free, fixed}, m});
              }
          }
        }
    }
  }
  return out;
}

std::vector<TritVector> all_vectors(std::size_t len) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < len; ++i) total *= 3;
  std::vector<TritVector> out;
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<Trit> t(len);
    std::size_t x = code;
    for (auto& v : t) {
      v = static_cast<Trit>(x % 3);
      x /= 3;
    }
    out.emplace_back(std::move(t));
  }
  return out;
}

class ScriptedProver final : public Prover {
 public:
  explicit ScriptedProver(std::optional<Answer> a) : answer_(a) {}
  std::optional<Answer> respond(const Challenge&) override { return answer_; }

 private:
  std::optional<Answer> answer_;
};

TEST(RequiredRounds, Examples) {
  EXPECT_EQ(required_rounds(1097, 100), 987300u);
  EXPECT_EQ(required_rounds(1, 1), 9u);
  EXPECT_EQ(required_rounds(10000, 100), 9'000'000u);
  EXPECT_EQ(required_rounds(10, 100), 9000u);
  EXPECT_THROW(required_rounds(0, 1), ContractViolation);
  EXPECT_THROW(required_rounds(1, 0), ContractViolation);
}

TEST(Sampling, EveryPairIsValidAndInTheEnumeratedSupport) {
  const Graph g = catalogue::demo();
  std::set<std::tuple<Vertex, Vertex, int, int, Vertex, Vertex, int, int, int>> support;
  for (const auto& p : all_pairs(g)) {
    ASSERT_TRUE(is_valid_pair(g, p));
    support.insert({p.left.i, p.left.j, p.left.r, p.left.s, p.right.i, p.right.j, p.right.r, p.right.s,
                    static_cast<int>(p.mode)});
  }
  Rng rng(1);
  std::set<std::tuple<Vertex, Vertex, int, int, Vertex, Vertex, int, int, int>> seen;
  for (std::uint32_t n = 0; n < 200'000; ++n) {
    const auto p = sample_challenge_pair(g, rng, n);
    ASSERT_TRUE(is_valid_pair(g, p));
    ASSERT_EQ(p.left.round, n);
    const auto key = std::make_tuple(p.left.i, p.left.j, int{p.left.r}, int{p.left.s}, p.right.i, p.right.j,
                                     int{p.right.r}, int{p.right.s}, static_cast<int>(p.mode));
    ASSERT_TRUE(support.count(key));
    seen.insert(key);
  }
  EXPECT_EQ(seen.size(), support.size());
}

TEST(Sampling, InvalidPairsAreRejected) {
  const Graph g = catalogue::demo();
  EXPECT_FALSE(is_valid_pair(g, {{0, 0, 1, 1, 1}, {0, 0, 1, 1, 1}, Mode::kColourTest}));
  EXPECT_FALSE(is_valid_pair(g, {{0, 0, 1, 1, 1}, {0, 0, 3, 2, 1}, Mode::kConsistFirst}));
  EXPECT_FALSE(is_valid_pair(g, {{0, 0, 1, 1, 1}, {0, 1, 2, 1, 1}, Mode::kConsistFirst}));
  EXPECT_FALSE(is_valid_pair(g, {{0, 0, 1, 1, 1}, {0, 0, 2, 1, 1}, Mode::kConsistFirst}));
  EXPECT_TRUE(is_valid_pair(g, {{0, 0, 1, 1, 1}, {0, 2, 1, 1, 1}, Mode::kConsistSecond}));
  EXPECT_FALSE(is_valid_pair(g, {{0, 0, 1, 1, 1}, {0, 2, 1, 2, 2}, Mode::kConsistSecond}));
  Rng rng(1);
  EXPECT_THROW(sample_challenge_pair(Graph(3, {}), rng), ContractViolation);
}

TEST(Sampling, ModeFrequenciesWithinThreeSigma) {
  const Graph g = catalogue::demo();
  Rng rng(2);
  constexpr double kN = 1'000'000;
  std::array<double, 3> counts{};
  for (int n = 0; n < 1'000'000; ++n) ++counts[static_cast<std::size_t>(sample_challenge_pair(g, rng).mode)];
  const std::array<double, 3> p{0.2, 0.4, 0.4};
  for (std::size_t m = 0; m < 3; ++m) {
    const double sigma = std::sqrt(kN * p[m] * (1 - p[m]));
    EXPECT_LT(std::abs(counts[m] - kN * p[m]), 3 * sigma) << m;
  }
}

TEST(Sampling, LeftChallengeAndRightEdgeUniform) {
  const Graph g = catalogue::demo();
  Rng rng(3);
  constexpr int kN = 400'000;
  std::map<std::tuple<Vertex, Vertex, int, int>, int> left;
  std::map<std::pair<Vertex, Vertex>, int> right_at_1;
  int at_1 = 0;
  for (int n = 0; n < kN; ++n) {
    const auto p = sample_challenge_pair(g, rng);
    ++left[{p.left.i, p.left.j, p.left.r, p.left.s}];
    if (p.mode == Mode::kConsistFirst && p.left.i == 1) {
      ++right_at_1[{p.right.i, p.right.j}];
      ++at_1;
    }
  }
  ASSERT_EQ(left.size(), 80u);
  double chi = 0;
  for (const auto& [k, c] : left) chi += (c - kN / 80.0) * (c - kN / 80.0) / (kN / 80.0);
  EXPECT_LT(chi, 122.9);  // 99.9% quantile, 79 degrees of freedom
  // Vertex 1 has four incident edges, each in two orientations.
  ASSERT_EQ(right_at_1.size(), 8u);
  chi = 0;
  for (const auto& [k, c] : right_at_1) chi += (c - at_1 / 8.0) * (c - at_1 / 8.0) / (at_1 / 8.0);
  EXPECT_LT(chi, 24.32);  // 99.9% quantile, 7 degrees of freedom
}

TEST(Sampling, ColourTestNegatesRandomisers) {
  const Graph g = catalogue::demo();
  Rng rng(4);
  int found = 0;
  for (int n = 0; n < 10'000; ++n) {
    const auto p = sample_challenge_pair(g, rng);
    if (p.mode != Mode::kColourTest) continue;
    EXPECT_EQ(p.left.i, p.right.i);
    EXPECT_EQ(p.left.j, p.right.j);
    EXPECT_EQ(p.right.r, 3 - p.left.r);
    EXPECT_EQ(p.right.s, 3 - p.left.s);
    if (p.left.r == 1 && p.left.s == 2) {
      EXPECT_EQ(p.right.r, 2);
      EXPECT_EQ(p.right.s, 1);
      ++found;
    }
  }
  EXPECT_GT(found, 0);
}

TEST(Sampling, SingleEdgeConsistencyReusesTheEdge) {
  const Graph g(2, {{0, 1}});
  Rng rng(5);
  for (int n = 0; n < 1000; ++n) {
    const auto p = sample_challenge_pair(g, rng);
    if (p.mode != Mode::kConsistFirst) continue;
    EXPECT_EQ(std::minmax(p.right.i, p.right.j), std::minmax(p.left.i, p.left.j));
    EXPECT_EQ(right_slot_is_first(p) ? p.right.r : p.right.s, p.left.r);
  }
}

TEST(ProverAnswer, FormulaExamples) {
  // Window (1,0,0) with vector (1,0,0) gives b = 1.
  const NodeSequence seq({1, 0, 0}, 2, 3);
  const Colouring c({0, 1});
  const RoundRandomness rr{{false, 0}, TritVector({1, 0, 0})};
  ASSERT_EQ(expand_randomiser(seq, 0, rr), 1);
  const Answer a = prover_answer({0, 0, 1, 2, 1}, c, seq, rr);
  EXPECT_EQ(a.a1, 2);  // 1*2 + 0

  const RoundRandomness zero{{true, 1}, TritVector({0, 0, 0})};
  const Answer z = prover_answer({0, 0, 1, 2, 2}, c, seq, zero);
  EXPECT_EQ(z.a1, zero.perm.apply(0));
  EXPECT_EQ(z.a2, zero.perm.apply(1));
}

TEST(ProverAnswer, ColourTestSumsCancelRandomisers) {
  Rng rng(6);
  const Graph g = catalogue::demo();
  const auto seq = build_node_sequence(6, rng);
  const Colouring c = catalogue::demo_colouring();
  for (const auto& cv : all_vectors(seq.window_length())) {
    for (unsigned perm = 0; perm < 6; ++perm) {
      const RoundRandomness rr{PermSelector::from_index(perm), cv};
      const Colouring pc = permuted_colouring(c, rr.perm);
      for (const Edge& e : g.edges()) {
        const Answer a = prover_answer({0, e.u, e.v, 1, 2}, c, seq, rr);
        const Answer b = prover_answer({0, e.u, e.v, 2, 1}, c, seq, rr);
        ASSERT_EQ(gf3::add(a.a1, b.a1), gf3::mul(2, pc[e.u]));
        ASSERT_EQ(gf3::add(a.a2, b.a2), gf3::mul(2, pc[e.v]));
      }
    }
  }
}

TEST(Checks, ColourTestExamples) {
  EXPECT_FALSE(check_colour_test({0, 0}, {0, 0}).accepted);
  EXPECT_EQ(check_colour_test({0, 0}, {0, 0}).reason, Reason::kColourFail);
  EXPECT_FALSE(check_colour_test({1, 0}, {1, 2}).accepted);
  const auto ok = check_colour_test({1, 0}, {0, 2});
  EXPECT_TRUE(ok.accepted);
  EXPECT_EQ(ok.mode, Mode::kColourTest);
  EXPECT_EQ(ok.reason, Reason::kColourOk);
}

TEST(Checks, ConsistencyExamples) {
  const ChallengePair first{{0, 0, 1, 1, 1}, {0, 0, 3, 1, 2}, Mode::kConsistFirst};
  EXPECT_FALSE(check_consistency(first, {1, 0}, {2, 0}).accepted);
  EXPECT_EQ(check_consistency(first, {1, 0}, {2, 0}).reason, Reason::kConsistFail);
  EXPECT_TRUE(check_consistency(first, {1, 0}, {1, 2}).accepted);

  // Shared vertex 1 sits in the second slot on both sides.
  const ChallengePair second{{0, 0, 1, 1, 1}, {0, 2, 1, 2, 1}, Mode::kConsistSecond};
  const auto v = check_consistency(second, {0, 1}, {2, 1});
  EXPECT_TRUE(v.accepted);
  EXPECT_EQ(v.mode, Mode::kConsistSecond);
  EXPECT_EQ(v.reason, Reason::kConsistOk);

  // The shared vertex moved to the right challenge's first slot.
  const ChallengePair flipped{{0, 0, 1, 1, 1}, {0, 1, 2, 1, 2}, Mode::kConsistSecond};
  EXPECT_TRUE(check_consistency(flipped, {0, 1}, {1, 0}).accepted);
  EXPECT_FALSE(check_consistency(flipped, {0, 1}, {2, 1}).accepted);

  EXPECT_THROW(check_consistency({{}, {}, Mode::kColourTest}, {}, {}), ContractViolation);
  EXPECT_THROW(right_slot_is_first({{0, 0, 1, 1, 1}, {0, 2, 3, 1, 1}, Mode::kConsistFirst}),
               ContractViolation);
}

TEST(Completeness, ExhaustiveOnDemoGraph) {
  const Graph g = catalogue::demo();
  const Colouring c = catalogue::demo_colouring();
  Rng rng(7);
  const auto seq = build_node_sequence(g.num_vertices(), rng);
  const auto pairs = all_pairs(g);
  const auto vectors = all_vectors(seq.window_length());
  std::uint64_t checked = 0;
  for (unsigned perm = 0; perm < 6; ++perm)
    for (const auto& cv : vectors) {
      const RoundRandomness rr{PermSelector::from_index(perm), cv};
      for (const auto& p : pairs) {
        const auto v = evaluate_round(p, prover_answer(p.left, c, seq, rr), prover_answer(p.right, c, seq, rr));
        ASSERT_TRUE(v.accepted);
        ++checked;
      }
    }
  EXPECT_EQ(checked, 6 * vectors.size() * pairs.size());
}

TEST(Completeness, RandomisedOnGeneratedInstances) {
  std::vector<Graph> pool;
  for (const auto& s : catalogue::hardness_seeds()) pool.push_back(s.graph);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(seed);
    const auto inst = generate_instance(pool, 120, rng);
    HonestProver left(make_prover_secret(inst.graph, inst.colouring, 100 + seed));
    HonestProver right(make_prover_secret(inst.graph, inst.colouring, 100 + seed));
    SessionConfig cfg;
    cfg.seed = seed;
    cfg.security_k = 3;
    const auto res = run_session(inst.graph, cfg, left, right);
    EXPECT_EQ(res.failures, 0u);
    EXPECT_EQ(res.rounds_run, required_rounds(inst.graph.num_edges(), 3));
  }
}

TEST(AnswerUniformity, ExactForOneDigit) {
  const Graph g(2, {{0, 1}});
  const Colouring c({0, 1});
  Rng rng(8);
  const auto seq = build_node_sequence(2, rng);
  const auto vectors = all_vectors(3);
  for (unsigned perm = 0; perm < 6; ++perm)
    for (const auto& p : all_pairs(g))
      for (const Challenge* ch : {&p.left, &p.right}) {
        std::map<std::pair<Trit, Trit>, int> counts;
        for (const auto& cv : vectors) {
          const auto a = prover_answer(*ch, c, seq, {PermSelector::from_index(perm), cv});
          ++counts[{a.a1, a.a2}];
        }
        ASSERT_EQ(counts.size(), 9u);
        for (const auto& [k, n] : counts) ASSERT_EQ(n, 3);
      }
}

TEST(AnswerUniformity, ChiSquareOnLargerGraph) {
  const Graph g = catalogue::grotzsch().without_edge({0, 1});
  const auto col = brute_force_three_colour(g);
  ASSERT_TRUE(col);
  const auto secret = make_prover_secret(g, *col, 9);
  constexpr int kRounds = 100'000;
  std::array<int, 3> a1{}, a2{};
  const Challenge ch{0, 2, 3, 1, 2};
  for (std::uint32_t n = 0; n < kRounds; ++n) {
    const auto a = prover_answer(ch, secret.colouring, *secret.sequence, secret.rounds->at(n));
    ++a1[a.a1];
    ++a2[a.a2];
  }
  for (const auto& counts : {a1, a2}) {
    double chi = 0;
    for (int x : counts) chi += (x - kRounds / 3.0) * (x - kRounds / 3.0) / (kRounds / 3.0);
    EXPECT_LT(chi, 9.2103);
  }
}

TEST(PermutationInvariance, VerdictsUnchangedUnderBaseRecolouring) {
  const Graph g = catalogue::demo();
  const Colouring c = catalogue::demo_colouring();
  const auto base = make_prover_secret(g, c, 10);
  Rng verifier(11);
  // A corrupt colouring gives rejections as well as acceptances.
  const Colouring bad({0, 0, 1, 2, 1, 2});
  for (const Colouring* col : {&c, &bad}) {
    for (std::uint32_t n = 0; n < 500; ++n) {
      const auto p = sample_challenge_pair(g, verifier, n);
      const auto rr = base.rounds->at(n);
      const auto ref = evaluate_round(p, prover_answer(p.left, *col, *base.sequence, rr),
                                      prover_answer(p.right, *col, *base.sequence, rr));
      for (unsigned perm = 0; perm < 6; ++perm) {
        const Colouring pc = permuted_colouring(*col, PermSelector::from_index(perm));
        const auto v = evaluate_round(p, prover_answer(p.left, pc, *base.sequence, rr),
                                      prover_answer(p.right, pc, *base.sequence, rr));
        ASSERT_EQ(v, ref);
      }
    }
  }
}

TEST(Session, HonestDemoKFiveHasNoFailures) {
  const Graph g = catalogue::demo();
  HonestProver left(make_prover_secret(g, catalogue::demo_colouring(), 12));
  HonestProver right(make_prover_secret(g, catalogue::demo_colouring(), 12));
  SessionConfig cfg;
  cfg.security_k = 5;
  cfg.seed = 13;
  std::uint64_t records = 0;
  const auto res = run_session(g, cfg, left, right, [&](const TranscriptRecord& r) {
    EXPECT_EQ(r.round(), records);
    EXPECT_TRUE(is_valid_pair(g, r.pair));
    ++records;
  });
  EXPECT_EQ(res.rounds_planned, 450u);
  EXPECT_EQ(res.rounds_run, 450u);
  EXPECT_EQ(records, 450u);
  EXPECT_EQ(res.failures, 0u);
  EXPECT_FALSE(res.aborted);
  EXPECT_FALSE(res.first_failure_round);
  EXPECT_EQ(res.mode_counts[0] + res.mode_counts[1] + res.mode_counts[2], 450u);
  EXPECT_EQ(res.reason_counts[0], res.mode_counts[0]);
  EXPECT_EQ(res.reason_counts[2], res.mode_counts[1] + res.mode_counts[2]);
}

TEST(Session, MismatchedSeedsDetectedWithinTenRounds) {
  const Graph g = catalogue::demo();
  int detected = 0;
  constexpr int kTrials = 500;
  for (int t = 0; t < kTrials; ++t) {
    HonestProver left(make_prover_secret(g, catalogue::demo_colouring(), 1000 + 2 * t));
    HonestProver right(make_prover_secret(g, catalogue::demo_colouring(), 1001 + 2 * t));
    SessionConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(t);
    cfg.rounds = 10;
    const auto res = run_session(g, cfg, left, right);
    if (res.failures > 0) {
      ++detected;
      EXPECT_TRUE(res.aborted);
      EXPECT_EQ(res.rounds_run, *res.first_failure_round + 1);
    }
  }
  EXPECT_GT(detected, 0.99 * kTrials);
}

TEST(Session, StatisticsModeRunsAllRounds) {
  const Graph g = catalogue::demo();
  HonestProver left(make_prover_secret(g, catalogue::demo_colouring(), 1));
  HonestProver right(make_prover_secret(g, catalogue::demo_colouring(), 2));
  SessionConfig cfg;
  cfg.rounds = 300;
  cfg.abort_on_first_failure = false;
  const auto res = run_session(g, cfg, left, right);
  EXPECT_EQ(res.rounds_run, 300u);
  EXPECT_GT(res.failures, 100u);
  EXPECT_FALSE(res.aborted);
  EXPECT_EQ(res.failures, res.reason_counts[1] + res.reason_counts[3]);
}

TEST(Session, DeterministicTranscript) {
  const Graph g = catalogue::demo();
  const auto run = [&] {
    HonestProver left(make_prover_secret(g, catalogue::demo_colouring(), 3));
    HonestProver right(make_prover_secret(g, catalogue::demo_colouring(), 3));
    SessionConfig cfg;
    cfg.seed = 4;
    std::vector<TranscriptRecord> out;
    run_session(g, cfg, left, right, [&](const TranscriptRecord& r) { out.push_back(r); });
    return out;
  };
  const auto a = run();
  EXPECT_EQ(a.size(), 90u);
  EXPECT_EQ(a, run());
}

TEST(Session, MissingOrMalformedAnswersAbort) {
  const Graph g = catalogue::demo();
  HonestProver honest(make_prover_secret(g, catalogue::demo_colouring(), 3));
  ScriptedProver silent(std::nullopt);
  ScriptedProver garbage(Answer{3, 0});
  SessionConfig cfg;
  try {
    run_session(g, cfg, honest, silent);
    FAIL();
  } catch (const ProtocolAbort& e) {
    EXPECT_EQ(e.round(), 0u);
  }
  EXPECT_THROW(run_session(g, cfg, garbage, honest), ProtocolAbort);
  EXPECT_THROW(HonestProver(make_prover_secret(g, Colouring({0, 1}), 3)), ContractViolation);
}

}  // namespace
}  // namespace rzk
