#include "rzk/gf3.hpp"

#include <utility>

#include "rzk/error.hpp"

namespace rzk {

namespace gf3 {

Trit dot(std::span<const Trit> u, std::span<const Trit> v) {
  if (u.size() != v.size()) {
    throw ContractViolation("gf3 dot: length mismatch (" + std::to_string(u.size()) + " vs " +
                            std::to_string(v.size()) + ")");
  }
  unsigned acc = 0;
  for (std::size_t t = 0; t < u.size(); ++t) acc += static_cast<unsigned>(u[t]) * v[t];
  return static_cast<Trit>(acc % 3);
}

std::size_t rank(std::vector<std::vector<Trit>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    const Trit scale = inv(rows[r][c]);
    for (auto& x : rows[r]) x = mul(x, scale);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Trit f = rows[i][c];
      for (std::size_t k = c; k < cols; ++k) rows[i][k] = sub(rows[i][k], mul(f, rows[r][k]));
    }
    ++r;
  }
  return r;
}

}  // namespace gf3

TritVector::TritVector(std::vector<Trit> trits) : trits_(std::move(trits)) {
  for (std::size_t i = 0; i < trits_.size(); ++i) {
    if (!gf3::valid(trits_[i])) {
      throw ContractViolation("trit out of range at index " + std::to_string(i));
    }
  }
}

Trit gf3_dot(const TritVector& u, const TritVector& v) { return gf3::dot(u.trits(), v.trits()); }

}  // namespace rzk
