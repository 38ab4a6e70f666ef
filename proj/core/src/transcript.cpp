#include "rzk/transcript.hpp"

#include <charconv>
#include <istream>
#include <ostream>

#include "rzk/error.hpp"

namespace rzk {

namespace {

template <typename T>
void put(std::string& out, T v) {
  char buf[24];
  auto [q, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, q);
  out.push_back(' ');
}

void put(std::string& out, std::string_view s) {
  out.append(s);
  out.push_back(' ');
}

}  // namespace

std::string format_transcript_record(const TranscriptRecord& rec) {
  std::string out;
  out.reserve(128);
  put(out, rec.round());
  put(out, to_string(rec.pair.mode));
  for (const Challenge* c : {&rec.pair.left, &rec.pair.right}) {
    put(out, c->i);
    put(out, c->j);
    put(out, unsigned{c->r});
    put(out, unsigned{c->s});
  }
  for (const Answer* a : {&rec.left_answer, &rec.right_answer}) {
    put(out, unsigned{a->a1});
    put(out, unsigned{a->a2});
  }
  put(out, std::string_view(rec.verdict.accepted ? "ACCEPT" : "REJECT"));
  put(out, to_string(rec.verdict.reason));
  put(out, rec.timing.t_emit_left);
  put(out, rec.timing.t_recv_left);
  put(out, rec.timing.t_emit_right);
  put(out, rec.timing.t_recv_right);
  out.back() = '\n';
  return out;
}

void write_transcript_record(std::ostream& out, const TranscriptRecord& rec) {
  out << format_transcript_record(rec);
}

TranscriptRecord parse_transcript_record(const std::string& line, std::size_t line_no) {
  std::vector<std::string_view> f;
  std::string_view rest(line);
  while (!rest.empty()) {
    const auto sp = rest.find(' ');
    const auto tok = rest.substr(0, sp);
    if (!tok.empty()) f.push_back(tok);
    if (sp == std::string_view::npos) break;
    rest.remove_prefix(sp + 1);
  }
  if (f.size() != 20) {
    throw ParseError("expected 20 fields, found " + std::to_string(f.size()), line_no);
  }
  const auto num = [&](std::size_t idx, auto& out) {
    auto [ptr, ec] = std::from_chars(f[idx].data(), f[idx].data() + f[idx].size(), out);
    if (ec != std::errc{} || ptr != f[idx].data() + f[idx].size()) {
      throw ParseError("field " + std::to_string(idx + 1) + " is not a number", line_no);
    }
  };
  const auto small = [&](std::size_t idx, unsigned lo, unsigned hi) {
    unsigned v = 0;
    num(idx, v);
    if (v < lo || v > hi) throw ParseError("field " + std::to_string(idx + 1) + " out of range", line_no);
    return static_cast<std::uint8_t>(v);
  };

  TranscriptRecord rec;
  std::uint32_t round = 0;
  num(0, round);
  const auto mode = parse_mode(f[1]);
  if (!mode) throw ParseError("unknown mode '" + std::string(f[1]) + "'", line_no);
  rec.pair.mode = *mode;
  std::size_t idx = 2;
  for (Challenge* c : {&rec.pair.left, &rec.pair.right}) {
    c->round = round;
    num(idx++, c->i);
    num(idx++, c->j);
    c->r = small(idx++, 1, 2);
    c->s = small(idx++, 1, 2);
  }
  for (Answer* a : {&rec.left_answer, &rec.right_answer}) {
    a->a1 = small(idx++, 0, 2);
    a->a2 = small(idx++, 0, 2);
  }
  if (f[14] == "ACCEPT") {
    rec.verdict.accepted = true;
  } else if (f[14] != "REJECT") {
    throw ParseError("verdict must be ACCEPT or REJECT", line_no);
  }
  const auto reason = parse_reason(f[15]);
  if (!reason) throw ParseError("unknown reason '" + std::string(f[15]) + "'", line_no);
  rec.verdict.reason = *reason;
  rec.verdict.mode = rec.pair.mode;
  num(16, rec.timing.t_emit_left);
  num(17, rec.timing.t_recv_left);
  num(18, rec.timing.t_emit_right);
  num(19, rec.timing.t_recv_right);
  return rec;
}

std::vector<TranscriptRecord> read_transcript(std::istream& in) {
  std::vector<TranscriptRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    out.push_back(parse_transcript_record(line, line_no));
  }
  return out;
}

}  // namespace rzk
