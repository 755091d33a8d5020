#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "amrkit/document.hpp"
#include "amrkit/graph.hpp"
#include "amrkit/smatch.hpp"
#include "amrkit/triples.hpp"

namespace amrkit {

enum class Category {
  kSmatch,
  kUnlabeled,
  kNoWsd,
  kConcepts,
  kNamedEntity,
  kNegation,
  kReentrancy,
  kSrl,
};

inline constexpr std::array<Category, 8> kAllCategories = {
    Category::kSmatch,      Category::kUnlabeled, Category::kNoWsd,
    Category::kConcepts,    Category::kNamedEntity, Category::kNegation,
    Category::kReentrancy,  Category::kSrl,
};

// Machine name, e.g. "no_wsd".
std::string_view category_name(Category category);
// Report row label, e.g. "No WSD".
std::string_view category_label(Category category);
std::optional<Category> parse_category(std::string_view name);

// The six clinical named-entity types annotated in clinical AMR corpora.
const std::vector<std::string>& clinical_ne_types();

struct FineGrainedOptions {
  // Concepts treated as named entities even without a :name edge.
  std::vector<std::string> ne_types = clinical_ne_types();
  bool top_triple = false;
};

// Reads one extra NE type per line ('#' comments and blank lines skipped).
std::vector<std::string> read_ne_type_list(std::string_view text);

// Strips a trailing PropBank sense ("-NN" or "-NNN"): "see-09" -> "see".
std::string strip_sense(std::string_view concept_label);

// Derives the category's triple set from one graph. Applied identically to
// both sides of a pair.
TripleSet transform(const AmrGraph& graph, Category category,
                    const FineGrainedOptions& options = {});

// Category transforms that work on an already decomposed set (the relabeling
// categories); used to check idempotence.
TripleSet relabel(const TripleSet& set, Category category);

std::pair<TripleSet, TripleSet> transform(const AmrGraph& predicted,
                                          const AmrGraph& reference,
                                          Category category,
                                          const FineGrainedOptions& options = {});

// Like Score::from_counts, except that a category absent from both sides is
// perfect agreement (P = R = F1 = 1).
Score category_score_from_counts(std::uint64_t correct, std::uint64_t predicted,
                                 std::uint64_t reference);

Score score_category(const AmrGraph& predicted, const AmrGraph& reference,
                     Category category, const ScoreConfig& config = {},
                     const FineGrainedOptions& options = {},
                     std::string_view document_id = {});

struct CategoryReport {
  std::string model_label;
  std::array<Score, kAllCategories.size()> rows{};
  std::vector<std::string> notes;

  const Score& at(Category c) const { return rows[static_cast<std::size_t>(c)]; }
};

// Micro-averaged per category over id-paired documents.
CategoryReport report(const Corpus& predicted, const Corpus& reference,
                      const ScoreConfig& config = {},
                      const FineGrainedOptions& options = {},
                      std::string model_label = {});

std::string render_tsv(const CategoryReport& report);
std::string render_markdown(const CategoryReport& report);
std::string render_json(const CategoryReport& report);

}  // namespace amrkit
