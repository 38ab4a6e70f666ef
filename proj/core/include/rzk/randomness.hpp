#pragma once

// Pre-shared prover randomness. Each vertex owns a window of 2m+1 trits read
// cyclically from one fixed ternary sequence; a round's randomisers are the
// scalar products of those windows with a fresh common vector, so only
// 2m+1 trits (plus one bit and one trit for the colour permutation) are
// drawn per round instead of one trit per vertex.

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rzk/gf3.hpp"
#include "rzk/graph.hpp"
#include "rzk/rng.hpp"

namespace rzk {

/// Number of base-3 digits of n (n >= 1).
std::size_t base3_digits(std::size_t n);

/// 2 * base3_digits(num_vertices) + 1. Throws ContractViolation for 0.
std::size_t window_length(std::size_t num_vertices);

class NodeSequence {
 public:
  enum class Method { kCyclicCode, kRejectionSampling, kExternal };

  /// Node k's window is (trits[k], trits[k+1 mod n], ..., trits[k+L-1 mod n]).
  NodeSequence(std::vector<Trit> trits, std::size_t num_vertices, std::size_t window_length,
               Method method = Method::kExternal);

  std::size_t length() const noexcept { return trits_.size(); }
  std::size_t num_vertices() const noexcept { return num_vertices_; }
  std::size_t window_length() const noexcept { return window_length_; }
  /// Position of vertex k in the sequence. Vertices occupy 0..|V|-1.
  std::size_t node_offset(Vertex k) const;
  std::span<const Trit> trits() const noexcept { return trits_; }

  /// Contiguous view of vertex k's window.
  std::span<const Trit> window(Vertex k) const;

  Method method() const noexcept { return method_; }
  /// Decimation exponent e of the cyclic code (zeros 1, b, b^e), if used.
  std::optional<std::size_t> code_exponent() const noexcept { return exponent_; }
  void set_code_exponent(std::size_t e) { exponent_ = e; }

  bool operator==(const NodeSequence& o) const {
    return trits_ == o.trits_ && num_vertices_ == o.num_vertices_ &&
           window_length_ == o.window_length_;
  }

 private:
  std::vector<Trit> trits_;
  std::vector<Trit> unrolled_;  // trits_ followed by its first L-1 entries
  std::size_t num_vertices_;
  std::size_t window_length_;
  Method method_;
  std::optional<std::size_t> exponent_;
};

/// Builds a sequence whose node windows are 4-wise linearly independent.
///
/// For |V| >= 3 the sequence is c + u(k) + u(e*k + t) over one period
/// (n = 3^m - 1) of a maximal-length LFSR sequence u: its windows are the
/// columns of a parity-check matrix of the cyclic code with zeros
/// {1, b, b^e}. Exponents e are tried until the windows pass the exact
/// dependency check. Small or failing cases fall back to rejection sampling.
/// Throws ConstructionError if nothing passes.
NodeSequence build_node_sequence(std::size_t num_vertices, Rng& rng);

/// One of the six colour permutations c -> (flip ? -c : c) + shift.
struct PermSelector {
  bool flip = false;
  Trit shift = 0;

  constexpr Trit apply(Trit c) const noexcept {
    return gf3::add(flip ? gf3::neg(c) : c, shift);
  }
  constexpr unsigned index() const noexcept { return (flip ? 3u : 0u) + shift; }
  static constexpr PermSelector from_index(unsigned i) noexcept {
    return {i >= 3, static_cast<Trit>(i % 3)};
  }
  bool operator==(const PermSelector&) const = default;
};

struct RoundRandomness {
  PermSelector perm;
  TritVector common_vector;
  bool operator==(const RoundRandomness&) const = default;
};

/// Randomiser b_k of `vertex` for the round: window(vertex) . common_vector.
Trit expand_randomiser(const NodeSequence& seq, Vertex vertex, const RoundRandomness& rr);

Colouring permuted_colouring(const Colouring& base, PermSelector selector);

struct IndependencePolicy {
  /// Exhaustive when C(|V|, 4) does not exceed this.
  std::uint64_t exhaustive_limit = 1'000'000;
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 0;
  /// When set, every vertex set that a single round can touch in this graph
  /// (an edge, or two edges sharing a vertex) is checked as well.
  const Graph* co_occurrence = nullptr;
};

struct IndependenceReport {
  bool passed = true;
  bool exhaustive = false;
  std::uint64_t subsets_checked = 0;
  std::optional<std::vector<Vertex>> failing_subset;
};

/// Checks GF(3) full rank of node-window subsets of size min(4, |V|) by
/// direct elimination.
IndependenceReport verify_window_independence(const NodeSequence& seq,
                                              const IndependencePolicy& policy = {});

/// Exact check that no set of at most four node windows is linearly
/// dependent, by collision of normalised single and pair combinations.
/// Memory grows as |V|^2; throws SizeLimitError above 4096 vertices.
IndependenceReport certify_window_independence(const NodeSequence& seq);

/// Source of the per-round shared data; both provers hold equal copies.
class RoundSource {
 public:
  virtual ~RoundSource() = default;
  virtual RoundRandomness at(std::uint32_t round) const = 0;
  virtual std::size_t window_length() const noexcept = 0;
};

/// Counter-based: round n's data is a pure function of (seed, n).
class SeededRoundSource final : public RoundSource {
 public:
  SeededRoundSource(std::uint64_t seed, std::size_t window_length);
  RoundRandomness at(std::uint32_t round) const override;
  std::size_t window_length() const noexcept override { return window_length_; }

 private:
  std::uint64_t key_;
  std::size_t window_length_;
};

/// Rounds materialised from a pre-shared randomness file.
class RecordedRoundSource final : public RoundSource {
 public:
  RecordedRoundSource(std::vector<RoundRandomness> rounds, std::size_t window_length);
  RoundRandomness at(std::uint32_t round) const override;
  std::size_t window_length() const noexcept override { return window_length_; }
  std::size_t size() const noexcept { return rounds_.size(); }
  const std::vector<RoundRandomness>& rounds() const noexcept { return rounds_; }

 private:
  std::vector<RoundRandomness> rounds_;
  std::size_t window_length_;
};

struct RandomnessBudget {
  std::size_t window_length = 0;
  std::uint64_t static_trits = 0;
  std::uint64_t per_round_bits = 0;
  std::uint64_t per_round_trits = 0;
  std::uint64_t total_bits = 0;
  std::uint64_t total_trits = 0;
  std::uint64_t naive_per_round_trits = 0;
  std::uint64_t naive_total_trits = 0;
};

RandomnessBudget randomness_budget(std::size_t num_vertices, std::uint64_t rounds);

// Pre-shared randomness file. Little-endian header:
//   "RZK1" | |V| u32 | n u32 | window_length u32 | round_count u32 | seed u64
// then the static sequence as packed trits, then the per-round records
// (flip bit, shift trit, common vector) as one packed trit stream. Five trits
// per byte, first trit most significant (byte = sum t_i * 3^(4-i)); each of
// the two sections is zero-padded to a whole byte.

struct SharedRandomness {
  NodeSequence sequence;
  std::uint64_t seed = 0;
  std::vector<RoundRandomness> rounds;
};

std::vector<std::uint8_t> pack_trits(std::span<const Trit> trits);
/// Throws ParseError when a byte exceeds 242 or the input is too short.
std::vector<Trit> unpack_trits(std::span<const std::uint8_t> bytes, std::size_t count);

void write_shared_randomness(std::ostream& out, const NodeSequence& seq, std::uint64_t seed,
                             const RoundSource& source, std::uint32_t round_count);
SharedRandomness read_shared_randomness(std::istream& in);

}  // namespace rzk
