#pragma once

// Arithmetic over GF(3). Trits are stored as uint8_t in {0,1,2}.

#include <cstdint>
#include <span>
#include <vector>

namespace rzk {

using Trit = std::uint8_t;

namespace gf3 {

constexpr Trit add(Trit a, Trit b) noexcept { return static_cast<Trit>((a + b) % 3); }
constexpr Trit sub(Trit a, Trit b) noexcept { return static_cast<Trit>((a + 3 - b) % 3); }
constexpr Trit mul(Trit a, Trit b) noexcept { return static_cast<Trit>((a * b) % 3); }
constexpr Trit neg(Trit a) noexcept { return static_cast<Trit>((3 - a) % 3); }
// Every non-zero element is its own inverse: 1*1 = 1, 2*2 = 4 = 1.
constexpr Trit inv(Trit a) noexcept { return a; }
constexpr bool valid(int a) noexcept { return a >= 0 && a <= 2; }

/// Scalar product. Throws ContractViolation on a length mismatch.
Trit dot(std::span<const Trit> u, std::span<const Trit> v);

/// Rank of the matrix whose rows are `rows` (each of the same length).
std::size_t rank(std::vector<std::vector<Trit>> rows);

}  // namespace gf3

/// A vector over GF(3) with checked entries.
class TritVector {
 public:
  TritVector() = default;
  explicit TritVector(std::vector<Trit> trits);

  std::size_t size() const noexcept { return trits_.size(); }
  Trit operator[](std::size_t i) const noexcept { return trits_[i]; }
  std::span<const Trit> trits() const noexcept { return trits_; }
  bool operator==(const TritVector&) const = default;

 private:
  std::vector<Trit> trits_;
};

Trit gf3_dot(const TritVector& u, const TritVector& v);

}  // namespace rzk
