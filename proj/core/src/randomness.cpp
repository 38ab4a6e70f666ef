#include "rzk/randomness.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <numeric>
#include <ostream>

#include "rzk/error.hpp"

namespace rzk {

std::size_t base3_digits(std::size_t n) {
  std::size_t digits = 0;
  for (; n > 0; n /= 3) ++digits;
  return digits;
}

std::size_t window_length(std::size_t num_vertices) {
  if (num_vertices == 0) throw ContractViolation("window_length needs at least one vertex");
  return 2 * base3_digits(num_vertices) + 1;
}

NodeSequence::NodeSequence(std::vector<Trit> trits, std::size_t num_vertices, std::size_t window_length,
                           Method method)
    : trits_(std::move(trits)),
      num_vertices_(num_vertices),
      window_length_(window_length),
      method_(method) {
  if (num_vertices_ == 0) throw ContractViolation("node sequence needs at least one vertex");
  if (window_length_ == 0) throw ContractViolation("window length must be positive");
  if (trits_.size() < num_vertices_) {
    throw ContractViolation("sequence length " + std::to_string(trits_.size()) + " is below |V| = " +
                            std::to_string(num_vertices_));
  }
  for (Trit t : trits_)
    if (!gf3::valid(t)) throw ContractViolation("sequence entry not a trit");
  unrolled_.resize(trits_.size() + window_length_ - 1);
  for (std::size_t i = 0; i < unrolled_.size(); ++i) unrolled_[i] = trits_[i % trits_.size()];
}

std::size_t NodeSequence::node_offset(Vertex k) const {
  if (k >= num_vertices_) throw ContractViolation("vertex " + std::to_string(k) + " out of range");
  return k;
}

std::span<const Trit> NodeSequence::window(Vertex k) const {
  return std::span<const Trit>(unrolled_).subspan(node_offset(k), window_length_);
}

namespace {

std::uint64_t pow_u64(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  while (exp--) r *= base;
  return r;
}

// One period of a maximal-length sequence over GF(3) with memory m, i.e.
// period 3^m - 1. The recurrence is found by exhaustive search in a fixed
// order; the starting state is random and non-zero.
std::vector<Trit> m_sequence(std::size_t m, Rng& rng) {
  const std::uint64_t period = pow_u64(3, m) - 1;
  std::vector<Trit> taps(m, 0);
  const std::uint64_t candidates = pow_u64(3, m);
  for (std::uint64_t code = 0; code < candidates; ++code) {
    std::uint64_t x = code;
    for (auto& t : taps) {
      t = static_cast<Trit>(x % 3);
      x /= 3;
    }
    if (taps[0] == 0) continue;  // constant term must be non-zero
    std::vector<Trit> state(m, 0);
    state[m - 1] = 1;
    const std::vector<Trit> start = state;
    std::uint64_t steps = 0;
    do {
      unsigned next = 0;
      for (std::size_t i = 0; i < m; ++i) next += static_cast<unsigned>(taps[i]) * state[i];
      std::rotate(state.begin(), state.begin() + 1, state.end());
      state[m - 1] = static_cast<Trit>(next % 3);
      ++steps;
    } while (state != start && steps <= period);
    if (steps != period) continue;

    std::vector<Trit> seq(period);
    std::vector<Trit> s(m);
    do {
      for (auto& t : s) t = rng.trit();
    } while (std::all_of(s.begin(), s.end(), [](Trit t) { return t == 0; }));
    for (std::uint64_t k = 0; k < period; ++k) {
      seq[k] = s[0];
      unsigned next = 0;
      for (std::size_t i = 0; i < m; ++i) next += static_cast<unsigned>(taps[i]) * s[i];
      std::rotate(s.begin(), s.begin() + 1, s.end());
      s[m - 1] = static_cast<Trit>(next % 3);
    }
    return seq;
  }
  throw ConstructionError("no maximal-length recurrence of memory " + std::to_string(m));
}

// Coset leaders e of the 3-cyclotomic cosets mod n with full size m that do
// not contain 0 or 1.
std::vector<std::size_t> exponent_candidates(std::size_t n, std::size_t m) {
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> out;
  for (std::size_t e = 2; e < n; ++e) {
    if (seen[e]) continue;
    std::vector<std::size_t> coset;
    std::size_t x = e;
    do {
      coset.push_back(x);
      seen[x] = true;
      x = (x * 3) % n;
    } while (x != e);
    if (coset.size() == m && std::find(coset.begin(), coset.end(), 1) == coset.end()) out.push_back(e);
  }
  return out;
}

constexpr std::size_t kCertifyLimit = 4096;

bool windows_pass(const NodeSequence& seq, Rng& rng) {
  if (seq.num_vertices() <= kCertifyLimit) return certify_window_independence(seq).passed;
  IndependencePolicy policy;
  policy.seed = rng.next();
  return verify_window_independence(seq, policy).passed;
}

}  // namespace

NodeSequence build_node_sequence(std::size_t num_vertices, Rng& rng) {
  const std::size_t L = window_length(num_vertices);
  const std::size_t m = base3_digits(num_vertices);

  if (m >= 2) {
    const std::vector<Trit> u = m_sequence(m, rng);
    const std::size_t n = u.size();
    constexpr std::size_t kMaxExponents = 64;
    const auto exponents = exponent_candidates(n, m);
    for (std::size_t i = 0; i < exponents.size() && i < kMaxExponents; ++i) {
      const std::size_t e = exponents[i];
      const Trit constant = static_cast<Trit>(1 + rng.uniform(2));
      const std::size_t shift1 = rng.uniform(n);
      const std::size_t shift2 = rng.uniform(n);
      std::vector<Trit> s(n);
      for (std::size_t k = 0; k < n; ++k) {
        s[k] = gf3::add(constant, gf3::add(u[(k + shift1) % n], u[(e * k + shift2) % n]));
      }
      NodeSequence seq(std::move(s), num_vertices, L, NodeSequence::Method::kCyclicCode);
      seq.set_code_exponent(e);
      if (windows_pass(seq, rng)) return seq;
    }
  }

  std::size_t n = num_vertices;
  while (n % 3 == 0) ++n;
  constexpr int kAttempts = 2000;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    std::vector<Trit> s(n);
    for (auto& t : s) t = rng.trit();
    NodeSequence seq(std::move(s), num_vertices, L, NodeSequence::Method::kRejectionSampling);
    if (windows_pass(seq, rng)) return seq;
  }
  throw ConstructionError("no 4-wise independent node sequence for |V| = " +
                          std::to_string(num_vertices) + ", window length " + std::to_string(L) +
                          ", sequence length " + std::to_string(n) + " after " +
                          std::to_string(kAttempts) + " random attempts");
}

Trit expand_randomiser(const NodeSequence& seq, Vertex vertex, const RoundRandomness& rr) {
  return gf3::dot(seq.window(vertex), rr.common_vector.trits());
}

Colouring permuted_colouring(const Colouring& base, PermSelector selector) {
  std::vector<Trit> out(base.size());
  for (std::size_t v = 0; v < base.size(); ++v) out[v] = selector.apply(base[v]);
  return Colouring(std::move(out));
}

namespace {

std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  if (k > n) return 0;
  __uint128_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(r);
}

bool full_rank(const NodeSequence& seq, std::span<const Vertex> subset) {
  std::vector<std::vector<Trit>> rows;
  rows.reserve(subset.size());
  for (Vertex v : subset) {
    auto w = seq.window(v);
    rows.emplace_back(w.begin(), w.end());
  }
  return gf3::rank(std::move(rows)) == subset.size();
}

}  // namespace

IndependenceReport verify_window_independence(const NodeSequence& seq, const IndependencePolicy& policy) {
  IndependenceReport report;
  const std::size_t V = seq.num_vertices();
  const std::size_t k = std::min<std::size_t>(4, V);
  const auto fail = [&](std::span<const Vertex> subset) {
    report.passed = false;
    report.failing_subset = std::vector<Vertex>(subset.begin(), subset.end());
  };

  if (binomial_capped(V, k, policy.exhaustive_limit) <= policy.exhaustive_limit) {
    report.exhaustive = true;
    std::vector<Vertex> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      ++report.subsets_checked;
      if (!full_rank(seq, idx)) {
        fail(idx);
        return report;
      }
      // next combination in lexicographic order
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == V - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  } else {
    Rng rng(policy.seed);
    std::vector<Vertex> idx(k);
    for (std::uint64_t s = 0; s < policy.samples; ++s) {
      for (std::size_t i = 0; i < k; ++i) {
        Vertex v;
        do {
          v = static_cast<Vertex>(rng.uniform(V));
        } while (std::find(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(i), v) !=
                 idx.begin() + static_cast<std::ptrdiff_t>(i));
        idx[i] = v;
      }
      ++report.subsets_checked;
      if (!full_rank(seq, idx)) {
        std::sort(idx.begin(), idx.end());
        fail(idx);
        return report;
      }
    }
  }

  if (const Graph* g = policy.co_occurrence) {
    if (g->num_vertices() > V) throw ContractViolation("co-occurrence graph has more vertices than the sequence");
    for (Vertex v = 0; v < g->num_vertices(); ++v) {
      const auto nb = g->neighbours(v);
      for (std::size_t a = 0; a < nb.size(); ++a) {
        if (v < nb[a]) {
          const std::array<Vertex, 2> pair{v, nb[a]};
          ++report.subsets_checked;
          if (!full_rank(seq, pair)) {
            fail(pair);
            return report;
          }
        }
        for (std::size_t b = a + 1; b < nb.size(); ++b) {
          std::array<Vertex, 3> triple{v, nb[a], nb[b]};
          ++report.subsets_checked;
          if (!full_rank(seq, triple)) {
            std::sort(triple.begin(), triple.end());
            fail(triple);
            return report;
          }
        }
      }
    }
  }
  return report;
}

IndependenceReport certify_window_independence(const NodeSequence& seq) {
  const std::size_t V = seq.num_vertices();
  const std::size_t L = seq.window_length();
  if (V > kCertifyLimit) throw SizeLimitError("exact window certification is limited to 4096 vertices");
  if (L > 20) throw SizeLimitError("exact window certification needs windows of at most 20 trits");

  IndependenceReport report;
  report.exhaustive = true;

  std::vector<std::uint64_t> pow3(L);
  for (std::size_t t = 0; t < L; ++t) pow3[t] = pow_u64(3, t);

  // Normalised key (leading non-zero scaled to 1); nullopt for the zero vector.
  std::vector<Trit> buf(L);
  const auto key = [&]() -> std::optional<std::uint64_t> {
    std::size_t first = 0;
    while (first < L && buf[first] == 0) ++first;
    if (first == L) return std::nullopt;
    const Trit scale = gf3::inv(buf[first]);
    std::uint64_t k = 0;
    for (std::size_t t = first; t < L; ++t) k += gf3::mul(buf[t], scale) * pow3[t];
    return k;
  };
  const auto fail = [&](std::vector<Vertex> subset) {
    std::sort(subset.begin(), subset.end());
    subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
    report.passed = false;
    report.failing_subset = std::move(subset);
    return report;
  };

  // entry = key << 32 | a << 16 | b << 1 | (y - 1); singles have b == a.
  std::vector<std::uint64_t> entries;
  entries.reserve(V + V * (V - 1));
  std::vector<std::span<const Trit>> cols(V);
  for (Vertex a = 0; a < V; ++a) cols[a] = seq.window(a);

  for (Vertex a = 0; a < V; ++a) {
    std::copy(cols[a].begin(), cols[a].end(), buf.begin());
    auto k = key();
    if (!k) return fail({a});
    entries.push_back(*k << 32 | std::uint64_t{a} << 16 | std::uint64_t{a} << 1);
    for (Vertex b = a + 1; b < V; ++b) {
      for (Trit y = 1; y <= 2; ++y) {
        for (std::size_t t = 0; t < L; ++t) buf[t] = gf3::add(cols[a][t], gf3::mul(y, cols[b][t]));
        auto kp = key();
        if (!kp) return fail({a, b});
        entries.push_back(*kp << 32 | std::uint64_t{a} << 16 | std::uint64_t{b} << 1 |
                          std::uint64_t(y - 1));
      }
    }
  }
  report.subsets_checked = entries.size();
  std::sort(entries.begin(), entries.end());
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if ((entries[i] >> 32) != (entries[i - 1] >> 32)) continue;
    const auto support = [](std::uint64_t e) {
      return std::vector<Vertex>{static_cast<Vertex>((e >> 16) & 0xffff), static_cast<Vertex>((e >> 1) & 0x7fff)};
    };
    auto s = support(entries[i - 1]);
    auto t = support(entries[i]);
    s.insert(s.end(), t.begin(), t.end());
    return fail(std::move(s));
  }
  return report;
}

SeededRoundSource::SeededRoundSource(std::uint64_t seed, std::size_t window_length)
    : key_(derive_seed(seed, Stream::kProverRounds)), window_length_(window_length) {
  if (window_length_ == 0) throw ContractViolation("window length must be positive");
}

RoundRandomness SeededRoundSource::at(std::uint32_t round) const {
  const std::uint64_t base = mix64(key_ ^ mix64(round));
  std::uint64_t counter = 0;
  const auto word = [&] { return mix64(base + counter++); };

  const bool flip = (word() & 1) != 0;
  // 3^40 < 2^64: below it a word yields 40 exactly uniform trits.
  constexpr std::uint64_t kTrits = 40;
  constexpr std::uint64_t kLimit = 12157665459056928801ULL;
  const std::size_t need = window_length_ + 1;
  std::vector<Trit> trits;
  trits.reserve(need);
  while (trits.size() < need) {
    std::uint64_t w;
    do {
      w = word();
    } while (w >= kLimit);
    for (std::uint64_t i = 0; i < kTrits && trits.size() < need; ++i, w /= 3) {
      trits.push_back(static_cast<Trit>(w % 3));
    }
  }
  const Trit shift = trits.back();
  trits.pop_back();
  return {PermSelector{flip, shift}, TritVector(std::move(trits))};
}

RecordedRoundSource::RecordedRoundSource(std::vector<RoundRandomness> rounds, std::size_t window_length)
    : rounds_(std::move(rounds)), window_length_(window_length) {
  for (const auto& r : rounds_) {
    if (r.common_vector.size() != window_length_) {
      throw ContractViolation("recorded common vector length differs from the window length");
    }
  }
}

RoundRandomness RecordedRoundSource::at(std::uint32_t round) const {
  if (round >= rounds_.size()) {
    throw ContractViolation("round " + std::to_string(round) + " beyond the " +
                            std::to_string(rounds_.size()) + " pre-shared rounds");
  }
  return rounds_[round];
}

RandomnessBudget randomness_budget(std::size_t num_vertices, std::uint64_t rounds) {
  RandomnessBudget b;
  b.window_length = window_length(num_vertices);
  b.static_trits = num_vertices;
  b.per_round_bits = 1;
  b.per_round_trits = 1 + b.window_length;
  b.total_bits = rounds * b.per_round_bits;
  b.total_trits = b.static_trits + rounds * b.per_round_trits;
  b.naive_per_round_trits = num_vertices;
  b.naive_total_trits = rounds * num_vertices;
  return b;
}

std::vector<std::uint8_t> pack_trits(std::span<const Trit> trits) {
  std::vector<std::uint8_t> out((trits.size() + 4) / 5, 0);
  for (std::size_t i = 0; i < trits.size(); ++i) {
    static constexpr std::array<std::uint8_t, 5> kWeight{81, 27, 9, 3, 1};
    out[i / 5] = static_cast<std::uint8_t>(out[i / 5] + trits[i] * kWeight[i % 5]);
  }
  return out;
}

std::vector<Trit> unpack_trits(std::span<const std::uint8_t> bytes, std::size_t count) {
  if (bytes.size() * 5 < count) throw ParseError("packed trit section is truncated");
  std::vector<Trit> out(count);
  for (std::size_t i = 0; i < count; i += 5) {
    std::uint8_t b = bytes[i / 5];
    if (b > 242) throw ParseError("packed trit byte exceeds 242");
    std::array<Trit, 5> group{};
    for (int j = 4; j >= 0; --j) {
      group[static_cast<std::size_t>(j)] = static_cast<Trit>(b % 3);
      b /= 3;
    }
    for (std::size_t j = 0; j < 5 && i + j < count; ++j) out[i + j] = group[j];
  }
  return out;
}

namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_u64(std::ostream& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::vector<std::uint8_t> read_bytes(std::istream& in, std::size_t n, const char* what) {
  std::vector<std::uint8_t> buf(n);
  in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n) throw ParseError(std::string("truncated ") + what);
  return buf;
}

std::uint64_t le(std::span<const std::uint8_t> b) {
  std::uint64_t v = 0;
  for (std::size_t i = b.size(); i-- > 0;) v = v << 8 | b[i];
  return v;
}

}  // namespace

void write_shared_randomness(std::ostream& out, const NodeSequence& seq, std::uint64_t seed,
                             const RoundSource& source, std::uint32_t round_count) {
  if (source.window_length() != seq.window_length()) {
    throw ContractViolation("round source and node sequence disagree on the window length");
  }
  out.write("RZK1", 4);
  put_u32(out, static_cast<std::uint32_t>(seq.num_vertices()));
  put_u32(out, static_cast<std::uint32_t>(seq.length()));
  put_u32(out, static_cast<std::uint32_t>(seq.window_length()));
  put_u32(out, round_count);
  put_u64(out, seed);
  const auto head = pack_trits(seq.trits());
  out.write(reinterpret_cast<const char*>(head.data()), static_cast<std::streamsize>(head.size()));

  std::vector<Trit> stream;
  stream.reserve(static_cast<std::size_t>(round_count) * (seq.window_length() + 2));
  for (std::uint32_t r = 0; r < round_count; ++r) {
    const RoundRandomness rr = source.at(r);
    stream.push_back(rr.perm.flip ? 1 : 0);
    stream.push_back(rr.perm.shift);
    stream.insert(stream.end(), rr.common_vector.trits().begin(), rr.common_vector.trits().end());
  }
  const auto body = pack_trits(stream);
  out.write(reinterpret_cast<const char*>(body.data()), static_cast<std::streamsize>(body.size()));
  if (!out) throw IoError("failed writing shared randomness");
}

SharedRandomness read_shared_randomness(std::istream& in) {
  const auto header = read_bytes(in, 28, "header");
  if (!std::equal(header.begin(), header.begin() + 4, "RZK1")) throw ParseError("bad magic, expected RZK1");
  const std::span<const std::uint8_t> h(header);
  const auto V = static_cast<std::size_t>(le(h.subspan(4, 4)));
  const auto n = static_cast<std::size_t>(le(h.subspan(8, 4)));
  const auto L = static_cast<std::size_t>(le(h.subspan(12, 4)));
  const auto R = static_cast<std::size_t>(le(h.subspan(16, 4)));
  const std::uint64_t seed = le(h.subspan(20, 8));
  if (V == 0 || n < V) throw ParseError("inconsistent sequence sizes in header");
  if (L != window_length(V)) throw ParseError("window length does not match |V|");

  const auto head = read_bytes(in, (n + 4) / 5, "static sequence");
  std::vector<Trit> trits = unpack_trits(head, n);
  const std::size_t record = L + 2;
  const auto body = read_bytes(in, (R * record + 4) / 5, "round records");
  const std::vector<Trit> stream = unpack_trits(body, R * record);

  SharedRandomness out{NodeSequence(std::move(trits), V, L), seed, {}};
  out.rounds.reserve(R);
  for (std::size_t r = 0; r < R; ++r) {
    const Trit* p = stream.data() + r * record;
    if (p[0] > 1) throw ParseError("permutation flip of round " + std::to_string(r) + " is not a bit");
    out.rounds.push_back({PermSelector{p[0] == 1, p[1]}, TritVector(std::vector<Trit>(p + 2, p + record))});
  }
  return out;
}

}  // namespace rzk
