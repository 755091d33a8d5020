// Exercises the shared library through its C header only.
#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "amrkit/amrkit.h"

namespace {

const char* kAmr1 = "(c / colonoscopy-01 :polarity - :arg1 (h / he) :arg2 (s2 / screen-01 :arg1 h))";
const char* kAmr2 = "(c1 / colonoscopy-01 :polarity - :arg1 (s / she) :arg2 (s2 / screen-01 :arg1 s))";

amrkit_graph* parse(const char* text) {
  amrkit_graph* g = nullptr;
  EXPECT_EQ(amrkit_graph_parse(text, &g), AMRKIT_OK) << amrkit_last_error();
  return g;
}

TEST(CApi, ParseScoreFree) {
  auto* ref = parse(kAmr1);
  auto* pred = parse(kAmr2);
  EXPECT_STREQ(amrkit_graph_root(ref), "c");
  EXPECT_EQ(amrkit_graph_node_count(ref), 3u);
  EXPECT_EQ(amrkit_graph_edge_count(ref), 3u);
  EXPECT_EQ(amrkit_graph_attribute_count(ref), 1u);
  amrkit_score_config cfg;
  amrkit_score_config_init(&cfg);
  EXPECT_EQ(cfg.restarts, 4u);
  EXPECT_EQ(cfg.seed, 42u);
  EXPECT_EQ(cfg.exact_cap, 8u);
  amrkit_score s;
  ASSERT_EQ(amrkit_score_pair(pred, ref, &cfg, "doc", &s), AMRKIT_OK);
  EXPECT_EQ(s.n_correct, 6u);
  EXPECT_DOUBLE_EQ(s.f1, 6.0 / 7.0);
  amrkit_graph_free(pred);
  amrkit_graph_free(ref);
  amrkit_graph_free(nullptr);
}

TEST(CApi, ErrorCodesAndMessages) {
  amrkit_graph* g = nullptr;
  EXPECT_EQ(amrkit_graph_parse("(a / b", &g), AMRKIT_ERR_PARSE);
  EXPECT_EQ(g, nullptr);
  EXPECT_NE(std::string(amrkit_last_error()).find("line 1"), std::string::npos);
  EXPECT_EQ(amrkit_graph_parse(nullptr, &g), AMRKIT_ERR_INVALID_ARGUMENT);
  auto* cyclic = parse("(a / x :arg0 (b / y :arg1 a))");
  char* text = nullptr;
  EXPECT_EQ(amrkit_graph_serialize(cyclic, 6, &text), AMRKIT_ERR_INVALID_GRAPH);
  size_t count = 0;
  ASSERT_EQ(amrkit_graph_validate(cyclic, &text, &count), AMRKIT_OK);
  EXPECT_EQ(count, 1u);
  EXPECT_EQ(std::string(text).rfind("cycle: ", 0), 0u);
  amrkit_string_free(text);
  amrkit_graph_free(cyclic);
  EXPECT_STREQ(amrkit_status_name(AMRKIT_ERR_CAP_EXCEEDED), "cap exceeded");

  auto* ref = parse(kAmr1);
  amrkit_score_config cfg;
  amrkit_score_config_init(&cfg);
  cfg.exact_mode = AMRKIT_EXACT_ALWAYS;
  cfg.exact_cap = 1;
  amrkit_score s;
  EXPECT_EQ(amrkit_score_pair(ref, ref, &cfg, nullptr, &s), AMRKIT_ERR_CAP_EXCEEDED);
  amrkit_graph_free(ref);
}

TEST(CApi, SerializeTriplesLinearize) {
  auto* g = parse(kAmr1);
  char* text = nullptr;
  ASSERT_EQ(amrkit_graph_serialize(g, -1, &text), AMRKIT_OK);
  EXPECT_STREQ(text, kAmr1);
  amrkit_string_free(text);
  ASSERT_EQ(amrkit_graph_triples(g, 0, &text), AMRKIT_OK);
  EXPECT_EQ(std::string(text).rfind("instance(c, colonoscopy-01)\n", 0), 0u);
  amrkit_string_free(text);

  char** tokens = nullptr;
  size_t n = 0;
  ASSERT_EQ(amrkit_graph_linearize(g, &tokens, &n), AMRKIT_OK);
  amrkit_graph* back = nullptr;
  ASSERT_EQ(amrkit_graph_delinearize(tokens, n, &back), AMRKIT_OK);
  EXPECT_EQ(amrkit_graph_equal(g, back), 1);
  amrkit_string_array_free(tokens, n);
  auto* clone = amrkit_graph_clone(g);
  EXPECT_EQ(amrkit_graph_equal(g, clone), 1);
  amrkit_graph_free(clone);
  amrkit_graph_free(back);
  amrkit_graph_free(g);
}

TEST(CApi, CorpusOperations) {
  std::string text;
  for (int k = 1; k <= 40; ++k)
    text += "# ::id d" + std::to_string(k) + "\n(a / see-01 :arg0 (b / he))\n\n";
  amrkit_corpus* c = nullptr;
  ASSERT_EQ(amrkit_corpus_parse(text.c_str(), "mine", "thyme", &c), AMRKIT_OK);
  EXPECT_EQ(amrkit_corpus_size(c), 40u);
  EXPECT_STREQ(amrkit_corpus_name(c), "mine");
  EXPECT_STREQ(amrkit_corpus_document_id(c, 0), "d1");
  EXPECT_STREQ(amrkit_corpus_document_source_tag(c, 3), "thyme");
  EXPECT_EQ(amrkit_corpus_document_id(c, 40), nullptr);

  amrkit_corpus *tr = nullptr, *dv = nullptr, *te = nullptr;
  ASSERT_EQ(amrkit_split(c, 30, 5, 5, 7, &tr, &dv, &te), AMRKIT_OK);
  EXPECT_EQ(amrkit_corpus_size(tr), 30u);
  EXPECT_STREQ(amrkit_corpus_name(dv), "dev");
  EXPECT_EQ(amrkit_split(c, 30, 5, 6, 7, &tr, &dv, &te), AMRKIT_ERR_INVALID_ARGUMENT);

  std::vector<amrkit_score> per(40);
  amrkit_score total;
  ASSERT_EQ(amrkit_score_corpus(c, c, nullptr, &total, per.data()), AMRKIT_OK);
  EXPECT_EQ(total.f1, 1.0);
  EXPECT_EQ(amrkit_score_corpus(c, tr, nullptr, &total, nullptr), AMRKIT_ERR_MISMATCH);

  const size_t sizes[] = {5, 10};
  amrkit_corpus* snaps[2] = {nullptr, nullptr};
  ASSERT_EQ(amrkit_curve(c, sizes, 2, 3, 1, snaps), AMRKIT_OK);
  EXPECT_EQ(amrkit_corpus_size(snaps[1]), 10u);

  amrkit_score rows[AMRKIT_CATEGORY_COUNT];
  ASSERT_EQ(amrkit_fine_report(c, c, nullptr, nullptr, rows), AMRKIT_OK);
  for (const auto& r : rows) EXPECT_EQ(r.f1, 1.0);
  EXPECT_STREQ(amrkit_category_label(3), "Concepts");
  EXPECT_EQ(amrkit_category_name(8), nullptr);
  char* rendered = nullptr;
  EXPECT_EQ(amrkit_fine_report_render(c, c, nullptr, nullptr, "xml", "m", &rendered),
            AMRKIT_ERR_INVALID_ARGUMENT);
  ASSERT_EQ(amrkit_fine_report_render(c, c, nullptr, nullptr, "json", "m", &rendered), AMRKIT_OK);
  EXPECT_NE(std::string(rendered).find("\"schema_version\": 1"), std::string::npos);
  amrkit_string_free(rendered);

  const amrkit_corpus* sets[] = {c, c};
  const char* labels[] = {"a", "b"};
  amrkit_score matrix[4];
  ASSERT_EQ(amrkit_iaa(sets, labels, 2, nullptr, matrix), AMRKIT_OK);
  EXPECT_EQ(matrix[1].f1, 1.0);

  const amrkit_graph* g = amrkit_corpus_document_graph(c, 0);
  EXPECT_STREQ(amrkit_graph_root(g), "a");

  amrkit_corpus* big = nullptr;
  EXPECT_EQ(amrkit_mix(c, snaps[0], 12, 1, 1000, 1, &big), AMRKIT_ERR_INVALID_ARGUMENT);  // ids overlap

  for (auto* p : {tr, dv, te, snaps[0], snaps[1], c}) amrkit_corpus_free(p);
}

TEST(CApi, TemplatesAndDictionary) {
  amrkit_registry* reg = nullptr;
  ASSERT_EQ(amrkit_registry_parse("Height\nHeight = {num} {unit}\n(h / height :quant {num} :unit (u / {unit}))\n", &reg),
            AMRKIT_OK)
      << amrkit_last_error();
  EXPECT_EQ(amrkit_registry_size(reg), 1u);
  char *name = nullptr, *captures = nullptr;
  ASSERT_EQ(amrkit_template_match(reg, "Height = 167.60 cm", &name, &captures), AMRKIT_OK);
  EXPECT_STREQ(name, "Height");
  EXPECT_STREQ(captures, "num=167.60\nunit=cm\n");
  amrkit_string_free(name);
  amrkit_string_free(captures);
  ASSERT_EQ(amrkit_template_match(reg, "nothing", &name, &captures), AMRKIT_OK);
  EXPECT_EQ(name, nullptr);

  const char* keys[] = {"num", "unit"};
  const char* values[] = {"167.60", "centimeter"};
  amrkit_graph* g = nullptr;
  ASSERT_EQ(amrkit_template_fill(reg, "Height", keys, values, 2, &g), AMRKIT_OK);
  EXPECT_EQ(amrkit_graph_node_count(g), 2u);
  amrkit_graph_free(g);
  EXPECT_EQ(amrkit_template_fill(reg, "Height", keys, values, 1, &g), AMRKIT_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(amrkit_template_fill(reg, "Nope", keys, values, 2, &g), AMRKIT_ERR_INVALID_ARGUMENT);

  amrkit_dictionary* dict = nullptr;
  ASSERT_EQ(amrkit_dictionary_parse("# ::phrase tetanus ::type disease-disorder\n"
                                    "(s / shot-13 :implicit + :ARG3 (d2 / disease-disorder :name (n / name :op1 \"tetanus\")))\n",
                                    nullptr, &dict),
            AMRKIT_OK)
      << amrkit_last_error();
  EXPECT_EQ(amrkit_dictionary_size(dict), 1u);
  amrkit_graph* frag = nullptr;
  ASSERT_EQ(amrkit_dictionary_lookup(dict, "Tetanus", nullptr, &frag), AMRKIT_OK);
  ASSERT_NE(frag, nullptr);
  EXPECT_EQ(amrkit_graph_node_count(frag), 3u);
  amrkit_graph_free(frag);
  ASSERT_EQ(amrkit_dictionary_lookup(dict, "absent", nullptr, &frag), AMRKIT_OK);
  EXPECT_EQ(frag, nullptr);

  amrkit_corpus* out = nullptr;
  char* unmatched = nullptr;
  ASSERT_EQ(amrkit_templatize(reg, dict, "Height = 2 m\nfoo\ntetanus\n", "x", &out, &unmatched),
            AMRKIT_OK);
  EXPECT_EQ(amrkit_corpus_size(out), 2u);
  EXPECT_STREQ(unmatched, "line\tsentence\n2\tfoo\n");
  amrkit_string_free(unmatched);
  amrkit_corpus_free(out);
  amrkit_dictionary_free(dict);
  amrkit_registry_free(reg);
}

TEST(CApi, MissingFile) {
  amrkit_corpus* c = nullptr;
  EXPECT_EQ(amrkit_corpus_read_file("/nonexistent/x.amr", nullptr, &c), AMRKIT_ERR_IO);
  amrkit_registry* r = nullptr;
  EXPECT_EQ(amrkit_registry_load("/nonexistent/x.templates", &r), AMRKIT_ERR_IO);
}

}  // namespace
