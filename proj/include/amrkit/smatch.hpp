#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "amrkit/document.hpp"
#include "amrkit/graph.hpp"
#include "amrkit/triples.hpp"

namespace amrkit {

// Partial injective map from variables of graph A to variables of graph B.
struct Alignment {
  std::map<std::string, std::string> mapping;

  bool is_injective() const;

  friend bool operator==(const Alignment&, const Alignment&) = default;
};

struct Score {
  std::uint64_t n_correct = 0;
  std::uint64_t n_predicted = 0;
  std::uint64_t n_reference = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  // p = c / n_pred, r = c / n_ref, F1 = 2pr / (p + r); each ratio is 0 when
  // its denominator is.
  static Score from_counts(std::uint64_t correct, std::uint64_t predicted,
                           std::uint64_t reference);

  friend bool operator==(const Score&, const Score&) = default;
};

Score operator+(const Score& a, const Score& b);  // sums counts, recomputes ratios

// Number of triples of `a` that, with variables substituted through
// `alignment`, appear in `b` (multiset semantics).
std::size_t matched_count(const TripleSet& a, const TripleSet& b,
                          const Alignment& alignment);

struct AlignmentResult {
  Alignment alignment;
  std::size_t count = 0;
};

inline constexpr std::size_t kDefaultExactCap = 8;
inline constexpr std::size_t kDefaultRestarts = 4;
inline constexpr std::uint64_t kDefaultSeed = 42;

// Exhaustive search over all maximal injective mappings. Among optimal
// mappings returns the one whose sorted (a, b) pair list is lexicographically
// smallest. Throws CapExceededError when the smaller side has more than `cap`
// variables.
AlignmentResult align_exact(const TripleSet& a, const TripleSet& b,
                            std::size_t cap = kDefaultExactCap);

// Hill climbing with restarts. Restart 0 starts from concept matching, later
// restarts from seeded random injections. Each climb takes the best
// single remap or swap until no move improves the count. Deterministic in
// (a, b, restarts, seed).
AlignmentResult align_greedy(const TripleSet& a, const TripleSet& b,
                             std::size_t restarts, std::uint64_t seed);

enum class ExactMode {
  kAuto,    // exact when both sides have at most exact_cap variables
  kAlways,  // exact, failing if over the cap
  kNever,
};

struct ScoreConfig {
  std::size_t restarts = kDefaultRestarts;
  std::uint64_t seed = kDefaultSeed;
  std::size_t exact_cap = kDefaultExactCap;
  ExactMode exact = ExactMode::kAuto;
  bool top_triple = false;
  // Worker threads for corpus scoring; 0 means hardware concurrency. Results
  // do not depend on this value.
  std::size_t threads = 1;
};

// Seed used for one document: stream_seed(master, document_id).
std::uint64_t pair_seed(std::uint64_t master_seed, std::string_view document_id);

// Aligns two triple sets under `config` and returns the best count.
AlignmentResult align(const TripleSet& a, const TripleSet& b,
                      const ScoreConfig& config, std::string_view document_id = {});

Score score_triples(const TripleSet& predicted, const TripleSet& reference,
                    const ScoreConfig& config, std::string_view document_id = {});

Score score_pair(const AmrGraph& predicted, const AmrGraph& reference,
                 const ScoreConfig& config = {}, std::string_view document_id = {});

struct DocumentScore {
  std::string id;
  Score score;
};

struct CorpusScore {
  Score total;  // micro-average over documents
  std::vector<DocumentScore> documents;
};

// Documents are paired by id (see pair_documents).
CorpusScore score_corpus(const Corpus& predicted, const Corpus& reference,
                         const ScoreConfig& config = {});

}  // namespace amrkit
