#include "rzk/graph_io.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "rzk/catalogue.hpp"
#include "rzk/error.hpp"
#include "rzk/generator.hpp"

namespace rzk {
namespace {

std::size_t parse_error_line(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  ADD_FAILURE() << "no ParseError for:\n" << text;
  return 0;
}

TEST(GraphIo, SerializesDemoWithColouring) {
  const std::string text = serialize_instance(catalogue::demo(), nullptr);
  EXPECT_EQ(text.substr(0, 15), "p edge 6 10\ne 1");
  const Colouring c = catalogue::demo_colouring();
  const Instance inst = parse_instance(serialize_instance(catalogue::demo(), &c));
  EXPECT_EQ(inst.graph, catalogue::demo());
  ASSERT_TRUE(inst.colouring);
  EXPECT_EQ(*inst.colouring, c);
}

TEST(GraphIo, RoundTripIsIdentity) {
  std::vector<Graph> graphs{catalogue::complete(4), catalogue::grotzsch(), catalogue::chvatal(),
                            Graph(3, {}), Graph(1, {})};
  Rng rng(9);
  std::vector<Graph> pool;
  for (const auto& s : catalogue::hardness_seeds()) pool.push_back(s.graph);
  for (int i = 0; i < 10; ++i) graphs.push_back(generate_instance(pool, 40 + 7 * i, rng).graph);
  for (const Graph& g : graphs) {
    EXPECT_EQ(parse_instance(serialize_instance(g)).graph, g);
    EXPECT_EQ(serialize_instance(parse_instance(serialize_instance(g)).graph), serialize_instance(g));
  }
}

TEST(GraphIo, CommentsFollowTheProblemLine) {
  std::ostringstream out;
  write_instance(out, catalogue::complete(3), nullptr, {"seed=1", "note"});
  EXPECT_EQ(out.str(), "p edge 3 3\n# seed=1\n# note\ne 1 2\ne 1 3\ne 2 3\n");
  EXPECT_EQ(parse_instance(out.str()).graph, catalogue::complete(3));
}

TEST(GraphIo, RejectsMalformedInputWithLineNumbers) {
  EXPECT_EQ(parse_error_line("p edge 3 2\ne 1 2\ne 2 1\n"), 3u);  // duplicate
  EXPECT_EQ(parse_error_line("p edge 3 1\ne 2 2\n"), 2u);         // self-loop
  EXPECT_EQ(parse_error_line("p edge 3 1\ne 1 4\n"), 2u);         // out of range
  EXPECT_EQ(parse_error_line("p edge 3 1\ne 0 1\n"), 2u);         // not 1-based
  EXPECT_EQ(parse_error_line("e 1 2\n"), 1u);                     // before header
  EXPECT_EQ(parse_error_line("p edge 2 1\ne 1 2\nx\n"), 3u);      // unknown record
  EXPECT_EQ(parse_error_line("p edge 2 1\ne 1 2\nc 1 3\n"), 3u);  // bad colour
  EXPECT_EQ(parse_error_line("p edge 2 1\ne 1 2\r\n"), 2u);       // CR line ending
  EXPECT_THROW(parse_instance("p edge 3 2\ne 1 2\n"), ParseError);   // edge count
  EXPECT_THROW(parse_instance("p edge 2 1\ne 1 2\nc 1 0\n"), ParseError);  // partial colouring
  EXPECT_THROW(parse_instance(""), ParseError);
}

TEST(GraphIo, MissingFileIsIoError) { EXPECT_THROW(load_instance("/nonexistent/x.col"), IoError); }

}  // namespace
}  // namespace rzk
