#include <gtest/gtest.h>

#include <set>

#include "amrkit/error.hpp"
#include "amrkit/penman.hpp"
#include "amrkit/triples.hpp"

namespace amrkit {
namespace {

std::vector<std::string> rendered(const TripleSet& set) {
  std::vector<std::string> out;
  for (const auto& t : set.triples) out.push_back(to_string(t));
  return out;
}

TEST(Decompose, InstancesThenAttributesThenRelations) {
  auto g = parse_penman("(c / colonoscopy-01 :polarity - :arg1 (h / he) :arg2 (s2 / screen-01 :arg1 h))");
  auto set = decompose(g);
  EXPECT_EQ(rendered(set), (std::vector<std::string>{
                               "instance(c, colonoscopy-01)", "instance(h, he)",
                               "instance(s2, screen-01)", "polarity(c, -)", "arg1(c, h)",
                               "arg2(c, s2)", "arg1(s2, h)"}));
  EXPECT_EQ(set.variables, (std::vector<std::string>{"c", "h", "s2"}));
}

TEST(Decompose, TopTripleIsOptional) {
  auto g = parse_penman("(a / see-01 :arg0 (b / he))");
  EXPECT_EQ(decompose(g).triples.size(), 3u);
  auto with_top = decompose(g, {true});
  ASSERT_EQ(with_top.triples.size(), 4u);
  EXPECT_EQ(to_string(with_top.triples[2]), "top(a, see-01)");
  EXPECT_EQ(with_top.triples[2].kind, TripleKind::kAttribute);
}

TEST(Decompose, QuotedConstantLosesQuotes) {
  auto set = decompose(parse_penman(R"((n / name :op1 "tetanus"))"));
  EXPECT_EQ(to_string(set.triples[1]), "op1(n, tetanus)");
}

TEST(Decompose, RejectsInvalidGraph) {
  EXPECT_THROW(decompose(parse_penman("(a / x :arg0 (b / y :arg1 a))")), InvalidGraphError);
}

}  // namespace
}  // namespace amrkit
