#include <gtest/gtest.h>

#include "amrkit/error.hpp"
#include "amrkit/penman.hpp"
#include "support/testing.hpp"

namespace amrkit {
namespace {

const char* kAmr1 = R"((c / colonoscopy-01 :polarity -
      :arg1 (h / he)
      :arg2 (s2 / screen-01
            :arg1 h)))";

const char* kTetanus = R"((s / shot-13 :implicit +
      :ARG3 (d2 / disease-disorder :name (n / name :op1 "tetanus"))))";

TEST(Tokenize, SkipsCommentsAndKeepsPositions) {
  auto tokens = tokenize("# ::id x\n(a / b)");
  ASSERT_EQ(tokens.size(), 5u);
  EXPECT_EQ(tokens[0].kind, TokenKind::kOpen);
  EXPECT_EQ(tokens[0].line, 2u);
  EXPECT_EQ(tokens[0].column, 1u);
  EXPECT_EQ(tokens[3].text, "b");
}

TEST(Tokenize, StringsKeepEscapes) {
  auto tokens = tokenize(R"((a / b :op1 "say \"hi\""))");
  EXPECT_EQ(tokens[5].kind, TokenKind::kString);
  EXPECT_EQ(tokens[5].text, R"("say \"hi\"")");
}

TEST(Parse, WorkedExample) {
  auto g = parse_penman(kAmr1);
  EXPECT_EQ(g.root(), "c");
  EXPECT_EQ(g.nodes().size(), 3u);
  EXPECT_EQ(g.edges().size(), 3u);
  ASSERT_EQ(g.attributes().size(), 1u);
  EXPECT_EQ(g.attributes()[0].role, "polarity");
  EXPECT_EQ(g.attributes()[0].value, (Constant{"-", false}));
}

TEST(Parse, ForwardReference) {
  auto g = parse_penman("(a / x :arg0 b :arg1 (b / y))");
  ASSERT_EQ(g.edges().size(), 2u);
  EXPECT_EQ(g.edges()[0].target, "b");
  EXPECT_TRUE(g.attributes().empty());
}

TEST(Parse, UnboundSymbolIsConstant) {
  auto g = parse_penman("(a / x :mod q)");
  EXPECT_TRUE(g.edges().empty());
  ASSERT_EQ(g.attributes().size(), 1u);
  EXPECT_EQ(g.attributes()[0].value.text, "q");
}

TEST(Parse, QuotedStringIsUnescaped) {
  auto g = parse_penman(R"((a / x :op1 "say \"hi\""))");
  EXPECT_EQ(g.attributes()[0].value, (Constant{"say \"hi\"", true}));
}

TEST(Parse, Tetanus) {
  auto g = parse_penman(kTetanus);
  EXPECT_TRUE(validate(g).empty());
  EXPECT_EQ(g.nodes().size(), 3u);
  EXPECT_EQ(g.attributes().size(), 2u);
}

struct BadInput {
  const char* name;
  const char* text;
  std::size_t line;
  std::size_t column;
};

class ParseErrors : public ::testing::TestWithParam<BadInput> {};

TEST_P(ParseErrors, ReportsPosition) {
  const auto& bad = GetParam();
  try {
    parse_penman(bad.text);
    FAIL() << "expected a parse error for " << bad.text;
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), bad.line) << e.what();
    EXPECT_EQ(e.column(), bad.column) << e.what();
    EXPECT_EQ(e.token_index(), ParseError::npos);
  }
}

INSTANTIATE_TEST_SUITE_P(
    Penman, ParseErrors,
    ::testing::Values(BadInput{"Unclosed", "(a / b", 1, 7},  // reported at end of input
                      BadInput{"ExtraClose", "(a / b))", 1, 8},
                      BadInput{"DuplicateVariable", "(a / b\n  :arg0 (a / c))", 2, 10},
                      BadInput{"RoleWithoutTarget", "(a / b :arg0)", 1, 13},
                      BadInput{"EmptyNode", "()", 1, 2},
                      BadInput{"UndefinedVariable", "(a / b :arg0 (q))", 1, 15},
                      BadInput{"TrailingGraph", "(a / b) (c / d)", 1, 9}),
    [](const ::testing::TestParamInfo<BadInput>& info) { return std::string(info.param.name); });

TEST(Parse, EmptyInput) {
  EXPECT_THROW(parse_penman("  # only a comment\n"), ParseError);
}

TEST(Serialize, CanonicalLayout) {
  auto g = parse_penman(kAmr1);
  EXPECT_EQ(serialize_penman(g),
            "(c / colonoscopy-01\n"
            "      :polarity -\n"
            "      :arg1 (h / he)\n"
            "      :arg2 (s2 / screen-01\n"
            "            :arg1 h))");
  EXPECT_EQ(serialize_penman(g, {-1}),
            "(c / colonoscopy-01 :polarity - :arg1 (h / he) :arg2 (s2 / screen-01 :arg1 h))");
}

TEST(Serialize, RejectsInvalidGraph) {
  auto g = parse_penman("(a / x :arg0 (b / y :arg1 a))");
  EXPECT_THROW(serialize_penman(g), InvalidGraphError);
}

TEST(Serialize, QuotesStrings) {
  EXPECT_EQ(quote_string("a\"b\\c"), R"("a\"b\\c")");
}

TEST(Linearize, Tokens) {
  auto seq = linearize(parse_penman("(a / x :arg0 (b / y) :polarity -)"));
  EXPECT_EQ(seq.tokens, (std::vector<std::string>{"(", "a", "/", "x", ":polarity", "-", ":arg0",
                                                   "(", "b", "/", "y", ")", ")"}));
}

TEST(Delinearize, ReportsTokenIndex) {
  TokenSequence seq{{"(", "a", "/", "x", ":arg0", ")"}};
  try {
    delinearize(seq);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.token_index(), 5u) << e.what();
  }
}

TEST(RoundTrip, RandomGraphs) {
  Rng rng(11);
  testing::GraphShape shape;
  shape.max_nodes = 20;
  shape.small_vocabulary = false;
  for (int k = 0; k < 400; ++k) {
    auto g = testing::random_graph(rng, shape);
    const auto text = serialize_penman(g);
    ASSERT_EQ(parse_penman(text), g) << text;
    ASSERT_EQ(parse_penman(serialize_penman(g, {-1})), g);
    ASSERT_EQ(delinearize(linearize(g)), g) << text;
  }
}

}  // namespace
}  // namespace amrkit
