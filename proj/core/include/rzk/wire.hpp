#pragma once

// Harness wire frames, little-endian.
//
//   challenge (8 bytes): round u32 | edge id u16 | flags u8 | 0x00
//     flags bit0 = r-1, bit1 = s-1, bit2 = orientation swapped (i > j)
//   answer (5 bytes):    round u32 | a1 + 3*a2

#include <array>
#include <cstdint>
#include <span>
#include <utility>

#include "rzk/protocol.hpp"

namespace rzk::wire {

inline constexpr std::size_t kChallengeSize = 8;
inline constexpr std::size_t kAnswerSize = 5;

using ChallengeFrame = std::array<std::uint8_t, kChallengeSize>;
using AnswerFrame = std::array<std::uint8_t, kAnswerSize>;

/// Throws ContractViolation when the challenge is invalid for g or the edge
/// id does not fit 16 bits.
ChallengeFrame encode_challenge(const Challenge& ch, const Graph& g);
/// Throws ParseError on wrong size, unknown edge id, or set reserved bits.
Challenge decode_challenge(std::span<const std::uint8_t> frame, const Graph& g);

AnswerFrame encode_answer(std::uint32_t round, const Answer& a);
std::pair<std::uint32_t, Answer> decode_answer(std::span<const std::uint8_t> frame);

}  // namespace rzk::wire
