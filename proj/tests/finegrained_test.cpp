#include <gtest/gtest.h>

#include <algorithm>

#include "amrkit/error.hpp"
#include "amrkit/finegrained.hpp"
#include "amrkit/penman.hpp"
#include "support/testing.hpp"

namespace amrkit {
namespace {

const char* kAmr1 = "(c / colonoscopy-01 :polarity - :arg1 (h / he) :arg2 (s2 / screen-01 :arg1 h))";
const char* kAmr2 = "(c1 / colonoscopy-01 :polarity - :arg1 (s / she) :arg2 (s2 / screen-01 :arg1 s))";
const char* kTetanus =
    R"((d / decline-02 :ARG1 (s / shot-13 :implicit + :ARG3 (d2 / disease-disorder :name (n / name :op1 "tetanus")))))";

std::vector<std::string> rendered(const TripleSet& set) {
  std::vector<std::string> out;
  for (const auto& t : set.triples) out.push_back(to_string(t));
  std::sort(out.begin(), out.end());
  return out;
}

TEST(Categories, NamesAndLabels) {
  EXPECT_EQ(category_name(Category::kNoWsd), "no_wsd");
  EXPECT_EQ(category_label(Category::kReentrancy), "Reentrancies");
  for (auto c : kAllCategories) EXPECT_EQ(parse_category(category_name(c)), c);
  EXPECT_FALSE(parse_category("bogus").has_value());
}

TEST(StripSense, OnlyNumericSuffix) {
  EXPECT_EQ(strip_sense("see-09"), "see");
  EXPECT_EQ(strip_sense("shot-13"), "shot");
  EXPECT_EQ(strip_sense("have-rel-role-91"), "have-rel-role");
  EXPECT_EQ(strip_sense("run-100"), "run");
  EXPECT_EQ(strip_sense("he"), "he");
  EXPECT_EQ(strip_sense("x-1"), "x-1");
  EXPECT_EQ(strip_sense("-01"), "-01");
}

TEST(Transform, Unlabeled) {
  auto set = transform(parse_penman(kAmr1), Category::kUnlabeled);
  auto r = rendered(set);
  EXPECT_EQ(std::count(r.begin(), r.end(), "rel(c, h)"), 1);
  EXPECT_EQ(std::count(r.begin(), r.end(), "rel(s2, h)"), 1);
  EXPECT_EQ(set.triples.size(), 7u);
}

TEST(Transform, Concepts) {
  auto set = transform(parse_penman(kAmr1), Category::kConcepts);
  EXPECT_EQ(rendered(set), (std::vector<std::string>{"instance(c, colonoscopy-01)",
                                                     "instance(h, he)",
                                                     "instance(s2, screen-01)"}));
}

TEST(Transform, NoWsd) {
  auto set = transform(parse_penman(kAmr1), Category::kNoWsd);
  auto r = rendered(set);
  EXPECT_NE(std::find(r.begin(), r.end(), "instance(c, colonoscopy)"), r.end());
  EXPECT_NE(std::find(r.begin(), r.end(), "arg1(c, h)"), r.end());
}

TEST(Transform, Negation) {
  auto set = transform(parse_penman(kAmr1), Category::kNegation);
  EXPECT_EQ(rendered(set),
            (std::vector<std::string>{"instance(c, colonoscopy-01)", "polarity(c, -)"}));
}

TEST(Transform, Reentrancy) {
  auto set = transform(parse_penman(kAmr1), Category::kReentrancy);
  EXPECT_EQ(rendered(set), (std::vector<std::string>{"arg1(c, h)", "arg1(s2, h)",
                                                     "instance(h, he)"}));
}

TEST(Transform, Srl) {
  auto set = transform(parse_penman(kAmr1), Category::kSrl);
  EXPECT_EQ(rendered(set),
            (std::vector<std::string>{"arg1(c, h)", "arg1(s2, h)", "arg2(c, s2)",
                                      "instance(c, colonoscopy-01)", "instance(h, he)",
                                      "instance(s2, screen-01)"}));
}

TEST(Transform, NamedEntity) {
  auto set = transform(parse_penman(kTetanus), Category::kNamedEntity);
  EXPECT_EQ(rendered(set),
            (std::vector<std::string>{"instance(d2, disease-disorder)", "instance(n, name)",
                                      "name(d2, n)", "op1(n, tetanus)"}));
}

TEST(Transform, NeTypeWithoutName) {
  auto g = parse_penman("(p / pain :mod (s / sign-symptom))");
  auto set = transform(g, Category::kNamedEntity);
  EXPECT_EQ(rendered(set), (std::vector<std::string>{"instance(s, sign-symptom)"}));
  FineGrainedOptions none;
  none.ne_types.clear();
  EXPECT_TRUE(transform(g, Category::kNamedEntity, none).triples.empty());
}

TEST(Transform, RelabelIsIdempotent) {
  Rng rng(8);
  for (int k = 0; k < 50; ++k) {
    auto set = decompose(testing::random_graph(rng));
    for (auto c : {Category::kUnlabeled, Category::kNoWsd, Category::kConcepts}) {
      auto once = relabel(set, c);
      EXPECT_EQ(rendered(relabel(once, c)), rendered(once));
    }
  }
}

TEST(CategoryScore, EmptyOnBothSidesIsPerfect) {
  auto s = category_score_from_counts(0, 0, 0);
  EXPECT_EQ(s.f1, 1.0);
  auto g = parse_penman("(a / see-01 :arg0 (b / he))");
  EXPECT_EQ(score_category(g, g, Category::kNegation).f1, 1.0);
  auto neg = parse_penman("(a / see-01 :polarity - :arg0 (b / he))");
  EXPECT_EQ(score_category(g, neg, Category::kNegation).f1, 0.0);
}

TEST(CategoryScore, WorkedExample) {
  auto p = parse_penman(kAmr2);
  auto r = parse_penman(kAmr1);
  EXPECT_DOUBLE_EQ(score_category(p, r, Category::kSmatch).f1, 6.0 / 7.0);
  EXPECT_DOUBLE_EQ(score_category(p, r, Category::kConcepts).f1, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(score_category(p, r, Category::kNegation).f1, 1.0);
  EXPECT_DOUBLE_EQ(score_category(p, r, Category::kReentrancy).f1, 2.0 / 3.0);
}

TEST(CategoryScore, MatchesBruteForceOnTransformedSets) {
  Rng rng(41);
  ScoreConfig exact;
  exact.exact = ExactMode::kAlways;
  for (int k = 0; k < 60; ++k) {
    auto p = testing::random_graph(rng);
    auto r = testing::random_graph(rng);
    for (auto c : kAllCategories) {
      auto [tp, tr] = transform(p, r, c);
      const auto want = testing::brute_force_matches(tp, tr);
      ASSERT_EQ(score_category(p, r, c, exact).n_correct, want) << category_name(c);
    }
  }
}

TEST(Report, SelfReportAndRenderers) {
  auto corpus = testing::synthetic_corpus(20, "d", 4);
  auto rep = report(corpus, corpus, {}, {}, "self");
  for (auto c : kAllCategories) EXPECT_EQ(rep.at(c).f1, 1.0) << category_name(c);

  const auto tsv = render_tsv(rep);
  std::vector<std::string> rows;
  std::size_t start = 0;
  for (std::size_t nl; (nl = tsv.find('\n', start)) != std::string::npos; start = nl + 1)
    rows.push_back(tsv.substr(start, nl - start));
  ASSERT_EQ(rows.size(), 10u);
  EXPECT_EQ(rows[1], "category\tprecision\trecall\tf1");
  EXPECT_EQ(rows[2], "SMATCH\t1.0000\t1.0000\t1.0000");
  EXPECT_EQ(rows[9], "SRL\t1.0000\t1.0000\t1.0000");

  const auto json = render_json(rep);
  EXPECT_NE(json.find("\"schema_version\": 1"), std::string::npos);
  EXPECT_NE(render_markdown(rep).find("| Reentrancies | 1.0000 | 1.0000 | 1.0000 |"),
            std::string::npos);
}

TEST(NeTypes, ReadList) {
  auto types = read_ne_type_list("# extra\nprocedure\n\n  lab-value \n");
  EXPECT_EQ(types, (std::vector<std::string>{"procedure", "lab-value"}));
  EXPECT_EQ(clinical_ne_types().size(), 6u);
}

}  // namespace
}  // namespace amrkit
