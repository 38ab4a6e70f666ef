#include "rzk/wire.hpp"

#include "rzk/error.hpp"

namespace rzk::wire {

namespace {

void put_u32(std::uint8_t* p, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) p[i] = static_cast<std::uint8_t>(v >> (8 * i));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  return std::uint32_t{p[0]} | std::uint32_t{p[1]} << 8 | std::uint32_t{p[2]} << 16 |
         std::uint32_t{p[3]} << 24;
}

}  // namespace

ChallengeFrame encode_challenge(const Challenge& ch, const Graph& g) {
  const auto id = g.find_edge(ch.i, ch.j);
  if (!id) throw ContractViolation("challenge edge is not in the graph");
  if (*id > 0xffff) throw ContractViolation("edge id does not fit the 16-bit frame field");
  if ((ch.r != 1 && ch.r != 2) || (ch.s != 1 && ch.s != 2)) {
    throw ContractViolation("randomisers must be 1 or 2");
  }
  ChallengeFrame f{};
  put_u32(f.data(), ch.round);
  f[4] = static_cast<std::uint8_t>(*id & 0xff);
  f[5] = static_cast<std::uint8_t>(*id >> 8);
  f[6] = static_cast<std::uint8_t>((ch.r - 1) | (ch.s - 1) << 1 | (ch.i > ch.j ? 1 : 0) << 2);
  f[7] = 0;
  return f;
}

Challenge decode_challenge(std::span<const std::uint8_t> frame, const Graph& g) {
  if (frame.size() != kChallengeSize) throw ParseError("challenge frame must be 8 bytes");
  const EdgeId id = std::uint32_t{frame[4]} | std::uint32_t{frame[5]} << 8;
  if (id >= g.num_edges()) throw ParseError("challenge frame names an unknown edge");
  if (frame[6] & ~0x07u) throw ParseError("challenge frame sets undefined flag bits");
  if (frame[7] != 0) throw ParseError("challenge frame reserved byte is not zero");
  const Edge& e = g.edge(id);
  const bool swapped = (frame[6] & 0x04) != 0;
  return {get_u32(frame.data()), swapped ? e.v : e.u, swapped ? e.u : e.v,
          static_cast<std::uint8_t>(1 + (frame[6] & 1)),
          static_cast<std::uint8_t>(1 + ((frame[6] >> 1) & 1))};
}

AnswerFrame encode_answer(std::uint32_t round, const Answer& a) {
  if (!a.valid()) throw ContractViolation("answer entries must be trits");
  AnswerFrame f{};
  put_u32(f.data(), round);
  f[4] = static_cast<std::uint8_t>(a.a1 + 3 * a.a2);
  return f;
}

std::pair<std::uint32_t, Answer> decode_answer(std::span<const std::uint8_t> frame) {
  if (frame.size() != kAnswerSize) throw ParseError("answer frame must be 5 bytes");
  if (frame[4] > 8) throw ParseError("answer byte exceeds 8");
  return {get_u32(frame.data()),
          Answer{static_cast<Trit>(frame[4] % 3), static_cast<Trit>(frame[4] / 3)}};
}

}  // namespace rzk::wire
