#include "amrkit/finegrained.hpp"

#include <cstdio>
#include <regex>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "amrkit/error.hpp"
#include "parallel.hpp"

namespace amrkit {

namespace {

constexpr const char* kCollapsedRole = "rel";

std::string format_ratio(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.4f", value);
  return buffer;
}

bool is_srl_role(const std::string& role) {
  static const std::regex kArgRole(R"(arg[0-9]+(-of)?)");
  return std::regex_match(role, kArgRole);
}

// Keeps the triples accepted by `keep` and recomputes the variable list in
// the original traversal order.
template <typename Keep>
TripleSet filter(const TripleSet& full, Keep keep) {
  TripleSet out;
  std::unordered_set<std::string_view> used;
  for (const auto& t : full.triples) {
    if (!keep(t)) continue;
    out.triples.push_back(t);
    used.insert(t.source);
    if (t.kind == TripleKind::kRelation) used.insert(t.target);
  }
  for (const auto& v : full.variables)
    if (used.count(v)) out.variables.push_back(v);
  return out;
}

TripleSet named_entities(const AmrGraph& graph, const TripleSet& full,
                         const FineGrainedOptions& options) {
  const std::unordered_set<std::string> types(options.ne_types.begin(),
                                              options.ne_types.end());
  std::unordered_set<std::string> entities;
  std::unordered_set<std::string> names;
  for (const auto& n : graph.nodes())
    if (types.count(n.label)) entities.insert(n.id);
  for (const auto& e : graph.edges()) {
    if (e.role == "name") {
      entities.insert(e.source);
      names.insert(e.target);
    }
  }
  return filter(full, [&](const Triple& t) {
    switch (t.kind) {
      case TripleKind::kInstance:
        return entities.count(t.source) > 0 || names.count(t.source) > 0;
      case TripleKind::kAttribute:
        return names.count(t.source) > 0 && t.role != "top";
      case TripleKind::kRelation:
        return t.role == "name" && entities.count(t.source) > 0;
    }
    return false;
  });
}

TripleSet negations(const TripleSet& full) {
  std::unordered_set<std::string> negated;
  for (const auto& t : full.triples)
    if (t.kind == TripleKind::kAttribute && t.role == "polarity" && t.target == "-")
      negated.insert(t.source);
  return filter(full, [&](const Triple& t) {
    if (t.kind == TripleKind::kInstance) return negated.count(t.source) > 0;
    return t.kind == TripleKind::kAttribute && t.role == "polarity" && t.target == "-";
  });
}

TripleSet reentrancies(const AmrGraph& graph, const TripleSet& full) {
  std::unordered_map<std::string, std::size_t> in_degree;
  for (const auto& e : graph.edges()) ++in_degree[e.target];
  std::unordered_set<std::string> reentrant;
  for (const auto& [var, degree] : in_degree)
    if (degree >= 2) reentrant.insert(var);
  return filter(full, [&](const Triple& t) {
    if (t.kind == TripleKind::kRelation)
      return reentrant.count(t.source) > 0 || reentrant.count(t.target) > 0;
    return reentrant.count(t.source) > 0 && t.role != "top";
  });
}

TripleSet semantic_roles(const TripleSet& full) {
  std::unordered_set<std::string> endpoints;
  for (const auto& t : full.triples) {
    if (t.kind == TripleKind::kRelation && is_srl_role(t.role)) {
      endpoints.insert(t.source);
      endpoints.insert(t.target);
    }
  }
  return filter(full, [&](const Triple& t) {
    if (t.kind == TripleKind::kInstance) return endpoints.count(t.source) > 0;
    return t.kind == TripleKind::kRelation && is_srl_role(t.role);
  });
}

}  // namespace

std::string_view category_name(Category category) {
  switch (category) {
    case Category::kSmatch: return "smatch";
    case Category::kUnlabeled: return "unlabeled";
    case Category::kNoWsd: return "no_wsd";
    case Category::kConcepts: return "concepts";
    case Category::kNamedEntity: return "named_entity";
    case Category::kNegation: return "negation";
    case Category::kReentrancy: return "reentrancy";
    case Category::kSrl: return "srl";
  }
  return "";
}

std::string_view category_label(Category category) {
  switch (category) {
    case Category::kSmatch: return "SMATCH";
    case Category::kUnlabeled: return "Unlabeled";
    case Category::kNoWsd: return "No WSD";
    case Category::kConcepts: return "Concepts";
    case Category::kNamedEntity: return "Named Ent.";
    case Category::kNegation: return "Negation";
    case Category::kReentrancy: return "Reentrancies";
    case Category::kSrl: return "SRL";
  }
  return "";
}

std::optional<Category> parse_category(std::string_view name) {
  for (Category c : kAllCategories)
    if (category_name(c) == name) return c;
  return std::nullopt;
}

const std::vector<std::string>& clinical_ne_types() {
  static const std::vector<std::string> kTypes = {
      "anatomical-site", "clinical-attribute", "devices",
      "disease-disorder", "medications-drugs", "sign-symptom",
  };
  return kTypes;
}

std::vector<std::string> read_ne_type_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) line.remove_prefix(1);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    out.emplace_back(line);
  }
  return out;
}

std::string strip_sense(std::string_view concept_label) {
  static const std::regex kSense(R"((.+)-[0-9]{2,3})");
  std::match_results<std::string_view::const_iterator> m;
  if (std::regex_match(concept_label.begin(), concept_label.end(), m, kSense))
    return m[1].str();
  return std::string(concept_label);
}

TripleSet relabel(const TripleSet& set, Category category) {
  TripleSet out = set;
  for (auto& t : out.triples) {
    if (category == Category::kUnlabeled && t.kind != TripleKind::kInstance)
      t.role = kCollapsedRole;
    if (category == Category::kNoWsd &&
        (t.kind == TripleKind::kInstance || t.role == "top"))
      t.target = strip_sense(t.target);
  }
  return out;
}

TripleSet transform(const AmrGraph& graph, Category category,
                    const FineGrainedOptions& options) {
  TripleSet full = decompose(graph, {options.top_triple});
  switch (category) {
    case Category::kSmatch:
      return full;
    case Category::kUnlabeled:
    case Category::kNoWsd:
      return relabel(full, category);
    case Category::kConcepts:
      return filter(full, [](const Triple& t) { return t.kind == TripleKind::kInstance; });
    case Category::kNamedEntity:
      return named_entities(graph, full, options);
    case Category::kNegation:
      return negations(full);
    case Category::kReentrancy:
      return reentrancies(graph, full);
    case Category::kSrl:
      return semantic_roles(full);
  }
  return full;
}

std::pair<TripleSet, TripleSet> transform(const AmrGraph& predicted,
                                          const AmrGraph& reference, Category category,
                                          const FineGrainedOptions& options) {
  return {transform(predicted, category, options), transform(reference, category, options)};
}

Score category_score_from_counts(std::uint64_t correct, std::uint64_t predicted,
                                 std::uint64_t reference) {
  if (predicted == 0 && reference == 0) {
    Score s;
    s.precision = s.recall = s.f1 = 1.0;
    return s;
  }
  return Score::from_counts(correct, predicted, reference);
}

Score score_category(const AmrGraph& predicted, const AmrGraph& reference,
                     Category category, const ScoreConfig& config,
                     const FineGrainedOptions& options, std::string_view document_id) {
  const auto [p, r] = transform(predicted, reference, category, options);
  const Score raw = score_triples(p, r, config, document_id);
  return category_score_from_counts(raw.n_correct, raw.n_predicted, raw.n_reference);
}

CategoryReport report(const Corpus& predicted, const Corpus& reference,
                      const ScoreConfig& config, const FineGrainedOptions& options,
                      std::string model_label) {
  const auto pairs = pair_documents(predicted, reference);
  constexpr std::size_t kRows = kAllCategories.size();
  std::vector<std::array<Score, kRows>> per_pair(pairs.size());
  detail::parallel_for(pairs.size(), config.threads, [&](std::size_t i) {
    const auto& [pred, ref] = pairs[i];
    for (std::size_t c = 0; c < kRows; ++c) {
      const auto [p, r] = transform(pred->graph, ref->graph, kAllCategories[c], options);
      per_pair[i][c] = score_triples(p, r, config, pred->id);
    }
  });

  CategoryReport out;
  out.model_label = std::move(model_label);
  for (std::size_t c = 0; c < kRows; ++c) {
    std::uint64_t correct = 0, pred_total = 0, ref_total = 0;
    for (const auto& row : per_pair) {
      correct += row[c].n_correct;
      pred_total += row[c].n_predicted;
      ref_total += row[c].n_reference;
    }
    out.rows[c] = category_score_from_counts(correct, pred_total, ref_total);
  }

  std::string types;
  for (const auto& t : options.ne_types) types += (types.empty() ? "" : ",") + t;
  out.notes.push_back("named_entity: :name subgraphs plus NE-typed nodes [" + types + "]");
  out.notes.push_back("categories absent from both sides score 1.0");
  if (options.top_triple) out.notes.push_back("TOP triple included");
  return out;
}

std::string render_tsv(const CategoryReport& report) {
  std::string out = "# fine-grained report";
  if (!report.model_label.empty()) out += "; model: " + report.model_label;
  for (const auto& note : report.notes) out += "; " + note;
  out += "\ncategory\tprecision\trecall\tf1\n";
  for (Category c : kAllCategories) {
    const Score& s = report.at(c);
    out += std::string(category_label(c)) + "\t" + format_ratio(s.precision) + "\t" +
           format_ratio(s.recall) + "\t" + format_ratio(s.f1) + "\n";
  }
  return out;
}

std::string render_markdown(const CategoryReport& report) {
  std::string out;
  if (!report.model_label.empty()) out += "Model: " + report.model_label + "\n\n";
  for (const auto& note : report.notes) out += "> " + note + "\n";
  if (!report.notes.empty()) out += "\n";
  out += "| Sub-category | Precision | Recall | F1 |\n";
  out += "|---|---|---|---|\n";
  for (Category c : kAllCategories) {
    const Score& s = report.at(c);
    out += "| " + std::string(category_label(c)) + " | " + format_ratio(s.precision) +
           " | " + format_ratio(s.recall) + " | " + format_ratio(s.f1) + " |\n";
  }
  return out;
}

std::string render_json(const CategoryReport& report) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["model_label"] = report.model_label;
  j["notes"] = report.notes;
  j["categories"] = nlohmann::ordered_json::array();
  for (Category c : kAllCategories) {
    const Score& s = report.at(c);
    j["categories"].push_back({
        {"category", category_name(c)},
        {"label", category_label(c)},
        {"precision", s.precision},
        {"recall", s.recall},
        {"f1", s.f1},
        {"n_correct", s.n_correct},
        {"n_predicted", s.n_predicted},
        {"n_reference", s.n_reference},
    });
  }
  return j.dump(2) + "\n";
}

}  // namespace amrkit
