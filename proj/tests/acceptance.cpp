// Acceptance checks, one PASS/FAIL line each. Exit status is the number of
// failures.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "amrkit/corpus.hpp"
#include "amrkit/error.hpp"
#include "amrkit/finegrained.hpp"
#include "amrkit/penman.hpp"
#include "amrkit/smatch.hpp"
#include "amrkit/templates.hpp"
#include "support/testing.hpp"

using namespace amrkit;
using Clock = std::chrono::steady_clock;

namespace {

const char* kAmr1 = R"((c / colonoscopy-01 :polarity -
      :arg1 (h / he)
      :arg2 (s2 / screen-01
            :arg1 h)))";

const char* kAmr2 = R"((c1 / colonoscopy-01 :polarity -
      :arg1 (s / she)
      :arg2 (s2 / screen-01
            :arg1 s)))";

const std::set<std::string> kEdgeList1 = {
    "instance(c, colonoscopy-01)", "instance(h, he)", "instance(s2, screen-01)", "polarity(c, -)",
    "arg1(c, h)", "arg2(c, s2)", "arg1(s2, h)"};

const std::set<std::string> kEdgeList2 = {
    "instance(c1, colonoscopy-01)", "instance(s, she)", "instance(s2, screen-01)",
    "polarity(c1, -)", "arg1(c1, s)", "arg2(c1, s2)", "arg1(s2, s)"};

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Outcome worked_example() {
  const auto pred = parse_penman(kAmr2);
  const auto ref = parse_penman(kAmr1);
  score_pair(pred, ref);  // warm-up
  const auto start = Clock::now();
  const auto s = score_pair(pred, ref);
  const double ms = ms_since(start);
  const std::size_t oracle = testing::brute_force_matches(decompose(pred), decompose(ref));
  const double want = 6.0 / 7.0;
  const bool ok = s.n_correct == 6 && s.n_predicted == 7 && s.n_reference == 7 && oracle == 6 &&
                  std::abs(s.precision - want) <= 1e-9 && std::abs(s.recall - want) <= 1e-9 &&
                  std::abs(s.f1 - want) <= 1e-9 && ms < 1.0;
  return {ok, "counts " + std::to_string(s.n_correct) + "/" + std::to_string(s.n_predicted) +
                  "/" + std::to_string(s.n_reference) + ", oracle " + std::to_string(oracle) +
                  ", F1 " + fmt("%.12f", s.f1) + ", " + fmt("%.3f ms", ms)};
}

Outcome decomposition() {
  auto as_set = [](const char* text) {
    std::set<std::string> out;
    const auto set = decompose(parse_penman(text));
    for (const auto& t : set.triples) out.insert(to_string(t));
    return std::make_pair(out, set.triples.size());
  };
  const auto [one, n1] = as_set(kAmr1);
  const auto [two, n2] = as_set(kAmr2);
  const bool ok = one == kEdgeList1 && two == kEdgeList2 && n1 == 7 && n2 == 7;
  return {ok, std::to_string(n1) + " and " + std::to_string(n2) + " triples"};
}

Outcome oracle_equivalence() {
  Rng rng(2024, "acceptance/oracle");
  testing::GraphShape shape;
  shape.max_nodes = 6;
  std::size_t equal = 0, exceeded = 0, exact_wrong = 0;
  double align_ms = 0;
  const std::size_t pairs = 500;
  for (std::size_t k = 0; k < pairs; ++k) {
    const auto a = decompose(testing::random_graph(rng, shape));
    const auto b = decompose(testing::random_graph(rng, shape));
    const auto start = Clock::now();
    const auto exact = align_exact(a, b);
    const auto greedy = align_greedy(a, b, 4, pair_seed(kDefaultSeed, std::to_string(k)));
    align_ms += ms_since(start);
    if (greedy.count == exact.count) ++equal;
    if (greedy.count > exact.count) ++exceeded;
    if (exact.count != testing::brute_force_matches(a, b)) ++exact_wrong;
  }
  const double rate = static_cast<double>(equal) / pairs;
  const bool ok = rate >= 0.95 && exceeded == 0 && exact_wrong == 0 && align_ms < 30000;
  return {ok, std::to_string(equal) + "/" + std::to_string(pairs) + " equal, " +
                  std::to_string(exceeded) + " above exact, " + std::to_string(exact_wrong) +
                  " exact disagreeing with brute force, " + fmt("%.0f ms", align_ms)};
}

Outcome round_trip() {
  Rng rng(99, "acceptance/round-trip");
  testing::GraphShape shape;
  shape.max_nodes = 20;
  shape.small_vocabulary = false;
  std::size_t failures = 0;
  const auto start = Clock::now();
  for (int k = 0; k < 1000; ++k) {
    const auto g = testing::random_graph(rng, shape);
    if (!(parse_penman(serialize_penman(g)) == g)) ++failures;
    if (!(delinearize(linearize(g)) == g)) ++failures;
  }
  const double ms = ms_since(start);
  return {failures == 0 && ms < 10000,
          std::to_string(failures) + " failures over 1000 graphs, " + fmt("%.0f ms", ms)};
}

Outcome dominance() {
  Rng rng(5, "acceptance/dominance");
  ScoreConfig exact;
  exact.exact = ExactMode::kAlways;
  std::size_t violations = 0;
  for (int k = 0; k < 200; ++k) {
    const auto p = testing::random_graph(rng);
    const auto r = testing::random_graph(rng);
    const double base = score_category(p, r, Category::kSmatch, exact).f1;
    if (score_category(p, r, Category::kUnlabeled, exact).f1 < base) ++violations;
    if (score_category(p, r, Category::kNoWsd, exact).f1 < base) ++violations;
  }
  return {violations == 0, std::to_string(violations) + " violations over 200 pairs"};
}

std::set<std::string> ids(const Corpus& c) {
  std::set<std::string> out;
  for (const auto& d : c.documents) out.insert(d.id);
  return out;
}

Outcome corpus_determinism() {
  const auto corpus = testing::synthetic_corpus(8327, "thyme", 1, "thyme");
  const auto a = split(corpus, {4955, 1641, 1731}, 7);
  const auto b = split(corpus, {4955, 1641, 1731}, 7);
  const bool identical = write_corpus(a.train) == write_corpus(b.train) &&
                         write_corpus(a.dev) == write_corpus(b.dev) &&
                         write_corpus(a.test) == write_corpus(b.test);
  std::set<std::string> all = ids(a.train);
  std::size_t overlap = 0;
  for (const auto* part : {&a.dev, &a.test})
    for (const auto& id : ids(*part))
      if (!all.insert(id).second) ++overlap;
  const bool partition = overlap == 0 && all == ids(corpus) && a.train.size() == 4955 &&
                         a.dev.size() == 1641 && a.test.size() == 1731;

  const auto secondary = testing::synthetic_corpus(500, "amr3", 2, "amr3");
  const auto mixed = mix({&a.train, &secondary, {12, 1}, 1300, 7});
  std::size_t primary = 0, worst_prefix = 0;
  double worst = 0;
  for (std::size_t n = 1; n <= mixed.size(); ++n) {
    if (mixed.documents[n - 1].source_tag == "thyme") ++primary;
    const double off = std::abs(static_cast<double>(primary) - n * 12.0 / 13.0);
    if (off > worst) {
      worst = off;
      worst_prefix = n;
    }
  }
  const bool mix_ok = mixed.size() == 1300 && primary == 1200 && worst <= 1.0;

  const std::vector<std::size_t> sizes = {500, 1000, 2000, 3000, 4000, 4955};
  const auto curve = subsample_curve(a.train, sizes, 7);
  bool curve_ok = curve.size() == sizes.size();
  for (std::size_t k = 0; curve_ok && k < sizes.size(); ++k) {
    curve_ok = curve[k].size() == sizes[k] && ids(curve[k]).size() == sizes[k];
    if (curve_ok && k > 0) {
      const auto big = ids(curve[k]);
      for (const auto& id : ids(curve[k - 1])) curve_ok = curve_ok && big.count(id) == 1;
    }
  }
  std::ostringstream detail;
  detail << "split identical=" << identical << " partition=" << partition << "; mix "
         << primary << "+" << (mixed.size() - primary) << " worst prefix deviation "
         << fmt("%.3f", worst) << " at n=" << worst_prefix << "; curve nested=" << curve_ok;
  return {identical && partition && mix_ok && curve_ok, detail.str()};
}

Outcome self_evaluation() {
  const auto corpus = testing::synthetic_corpus(200, "self", 3);
  const auto rep = report(corpus, corpus, {}, {}, "self");
  bool perfect = true;
  for (auto c : kAllCategories) {
    const auto& s = rep.at(c);
    perfect = perfect && s.precision == 1.0 && s.recall == 1.0 && s.f1 == 1.0;
  }
  std::istringstream tsv(render_tsv(rep));
  std::size_t rows = 0, bad_shape = 0;
  bool header = false;
  for (std::string line; std::getline(tsv, line);) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      header = line == "category\tprecision\trecall\tf1";
      continue;
    }
    ++rows;
    if (std::count(line.begin(), line.end(), '\t') != 3) ++bad_shape;
  }
  return {perfect && header && rows == 8 && bad_shape == 0,
          std::to_string(rows) + " rows x 3 metrics, all 1.0=" + (perfect ? "yes" : "no")};
}

Outcome template_determinism() {
  const std::string dir = AMRKIT_DATA_DIR;
  const auto registry = TemplateRegistry::load(dir + "/vital_signs.templates");
  const Template* height = nullptr;
  for (const auto& t : registry.templates())
    if (t.name() == "Height") height = &t;
  if (height == nullptr) return {false, "no Height template in the shipped registry"};
  const Captures captures{{"num", "167.60"}, {"unit", "centimeter"}};
  const auto first = serialize_penman(fill(*height, captures));
  const auto second = serialize_penman(fill(*height, captures));

  const auto dict = NeDictionary::load(dir + "/ne_dictionary.amr", clinical_ne_types());
  const auto* entry = dict.find("tetanus");
  bool fragment_ok = false;
  if (entry != nullptr) {
    const auto reparsed = parse_penman(
        "(s / shot-13 :implicit +\n"
        "      :ARG3 (d2 / disease-disorder :name (n / name :op1 \"tetanus\")))");
    fragment_ok = validate(reparsed).empty() && reparsed == entry->fragment &&
                  parse_penman(serialize_penman(reparsed)) == reparsed &&
                  delinearize(linearize(reparsed)) == reparsed;
  }
  return {first == second && fragment_ok,
          "fill \"" + serialize_penman(fill(*height, captures), {-1}) + "\", tetanus fragment " +
              (fragment_ok ? "round-trips" : "FAILED")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"worked example scores 6/7", worked_example},
      {"decomposition matches the printed edge lists", decomposition},
      {"greedy agrees with exact alignment", oracle_equivalence},
      {"serialize and linearize round trips", round_trip},
      {"relaxed categories dominate SMATCH", dominance},
      {"corpus split, mix and curve determinism", corpus_determinism},
      {"fine-grained self evaluation", self_evaluation},
      {"template fill and NE fragment determinism", template_determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o{false, ""};
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %zu: %s (%s)\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failures;
}
