#include "rzk/transcript.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "rzk/error.hpp"

namespace rzk {
namespace {

TranscriptRecord sample_record() {
  TranscriptRecord rec;
  rec.pair = {{12, 3, 0, 2, 1}, {12, 0, 5, 1, 2}, Mode::kConsistSecond};
  rec.left_answer = {2, 0};
  rec.right_answer = {1, 0};
  rec.verdict = {true, Mode::kConsistSecond, Reason::kConsistOk};
  rec.timing = {4000, 4200, 4440, 4640};
  return rec;
}

TEST(Transcript, FormatsFieldsInOrder) {
  EXPECT_EQ(format_transcript_record(sample_record()),
            "12 CONSIST_SECOND 3 0 2 1 0 5 1 2 2 0 1 0 ACCEPT CONSIST_OK 4000 4200 4440 4640\n");
}

TEST(Transcript, RoundTrip) {
  const auto rec = sample_record();
  auto line = format_transcript_record(rec);
  line.pop_back();
  EXPECT_EQ(parse_transcript_record(line), rec);

  TranscriptRecord rej = rec;
  rej.pair.mode = Mode::kColourTest;
  rej.verdict = {false, Mode::kColourTest, Reason::kColourFail};
  rej.timing = {-5, 0, 9'000'000'000'000, 9'000'000'000'001};
  line = format_transcript_record(rej);
  line.pop_back();
  EXPECT_EQ(parse_transcript_record(line), rej);
}

TEST(Transcript, ReadSkipsCommentsAndBlankLines) {
  std::ostringstream out;
  out << "# header\n\n";
  write_transcript_record(out, sample_record());
  write_transcript_record(out, sample_record());
  std::istringstream in(out.str());
  const auto recs = read_transcript(in);
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[1], sample_record());
}

TEST(Transcript, ErrorsCarryLineNumbers) {
  const std::string good = format_transcript_record(sample_record());
  const std::vector<std::string> bad{
      "1 2 3",
      "12 NOPE 3 0 2 1 0 5 1 2 2 0 1 0 ACCEPT CONSIST_OK 1 2 3 4",
      "12 CONSIST_SECOND 3 0 3 1 0 5 1 2 2 0 1 0 ACCEPT CONSIST_OK 1 2 3 4",
      "12 CONSIST_SECOND 3 0 2 1 0 5 1 2 3 0 1 0 ACCEPT CONSIST_OK 1 2 3 4",
      "12 CONSIST_SECOND 3 0 2 1 0 5 1 2 2 0 1 0 MAYBE CONSIST_OK 1 2 3 4",
      "12 CONSIST_SECOND 3 0 2 1 0 5 1 2 2 0 1 0 ACCEPT WHATEVER 1 2 3 4",
      "12 CONSIST_SECOND 3 0 2 1 0 5 1 2 2 0 1 0 ACCEPT CONSIST_OK 1 2 x 4",
  };
  for (const auto& b : bad) {
    SCOPED_TRACE(b);
    std::istringstream in("# c\n" + good + b + "\n");
    try {
      read_transcript(in);
      FAIL() << "no error";
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), 3u);
    }
  }
}

}  // namespace
}  // namespace rzk
