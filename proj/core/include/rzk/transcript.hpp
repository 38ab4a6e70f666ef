#pragma once

// Line-delimited transcript, one round per line, space separated:
//
//   round mode  Li Lj Lr Ls  Ri Rj Rr Rs  La1 La2  Ra1 Ra2  verdict reason
//   t_emit_L t_recv_L t_emit_R t_recv_R
//
// Vertices are 0-based, times are integer nanoseconds of the simulated
// clock, verdict is ACCEPT or REJECT. Lines starting with '#' are comments.

#include <iosfwd>
#include <string>
#include <vector>

#include "rzk/protocol.hpp"

namespace rzk {

void write_transcript_record(std::ostream& out, const TranscriptRecord& rec);
std::string format_transcript_record(const TranscriptRecord& rec);

/// Throws ParseError carrying `line_no`.
TranscriptRecord parse_transcript_record(const std::string& line, std::size_t line_no = 0);

/// Reads every non-comment line. Throws ParseError naming the bad line.
std::vector<TranscriptRecord> read_transcript(std::istream& in);

}  // namespace rzk
