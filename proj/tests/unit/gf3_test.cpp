#include "rzk/gf3.hpp"

#include <gtest/gtest.h>

#include "rzk/error.hpp"

namespace rzk {
namespace {

TEST(Gf3, FieldAxiomsHoldOnAllElements) {
  for (Trit a = 0; a < 3; ++a) {
    EXPECT_EQ(gf3::add(a, 0), a);
    EXPECT_EQ(gf3::mul(a, 1), a);
    EXPECT_EQ(gf3::mul(a, 0), 0);
    EXPECT_EQ(gf3::add(a, gf3::neg(a)), 0);
    if (a != 0) {
      EXPECT_EQ(gf3::mul(a, gf3::inv(a)), 1);
    }
    for (Trit b = 0; b < 3; ++b) {
      EXPECT_EQ(gf3::add(a, b), (a + b) % 3);
      EXPECT_EQ(gf3::mul(a, b), (a * b) % 3);
      EXPECT_EQ(gf3::add(a, b), gf3::add(b, a));
      EXPECT_EQ(gf3::mul(a, b), gf3::mul(b, a));
      EXPECT_EQ(gf3::sub(gf3::add(a, b), b), a);
      for (Trit c = 0; c < 3; ++c) {
        EXPECT_EQ(gf3::add(gf3::add(a, b), c), gf3::add(a, gf3::add(b, c)));
        EXPECT_EQ(gf3::mul(gf3::mul(a, b), c), gf3::mul(a, gf3::mul(b, c)));
        EXPECT_EQ(gf3::mul(a, gf3::add(b, c)), gf3::add(gf3::mul(a, b), gf3::mul(a, c)));
      }
    }
  }
}

TEST(Gf3, DotExamples) {
  EXPECT_EQ(gf3_dot(TritVector({1, 2, 0}), TritVector({2, 2, 1})), 0);
  EXPECT_EQ(gf3_dot(TritVector({0, 0, 0}), TritVector({2, 1, 2})), 0);
  EXPECT_EQ(gf3_dot(TritVector({1, 1, 1, 1}), TritVector({1, 1, 1, 1})), 1);
}

TEST(Gf3, DotLengthMismatchIsContractViolation) {
  EXPECT_THROW(gf3_dot(TritVector({1, 2}), TritVector({1})), ContractViolation);
}

TEST(Gf3, TritVectorRejectsNonTrits) { EXPECT_THROW(TritVector({0, 3}), ContractViolation); }

TEST(Gf3, RankOfKnownMatrices) {
  EXPECT_EQ(gf3::rank({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), 3u);
  EXPECT_EQ(gf3::rank({{1, 2, 0}, {2, 1, 0}}), 1u);  // second row = 2 * first
  EXPECT_EQ(gf3::rank({{0, 0}, {0, 0}}), 0u);
  EXPECT_EQ(gf3::rank({{1, 1, 1}, {1, 2, 0}, {2, 0, 1}}), 2u);  // r3 = r1 + r2
}

}  // namespace
}  // namespace rzk
