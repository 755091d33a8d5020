#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "amrkit/document.hpp"
#include "amrkit/smatch.hpp"

namespace amrkit {

struct SplitSizes {
  std::size_t train = 0;
  std::size_t dev = 0;
  std::size_t test = 0;
};

struct SplitResult {
  Corpus train;
  Corpus dev;
  Corpus test;
};

// Seeded shuffle (stream "corpus/split"), then contiguous train/dev/test
// partition. Sizes must sum to the corpus size.
SplitResult split(const Corpus& corpus, SplitSizes sizes, std::uint64_t seed);

struct MixRatio {
  std::size_t primary_parts = 12;
  std::size_t secondary_parts = 1;
};

// Number of primary documents among the first n of a mixture:
// round-half-up of n * p / (p + s). Every prefix stays within half a
// document of the exact proportion.
std::size_t mix_primary_count(std::size_t n, MixRatio ratio);

// Mixture length that uses every primary document: the largest n with
// mix_primary_count(n) == primary_size. For 4955 primary documents at 12:1
// this is 5368 (413 secondary).
std::size_t exhaust_primary_total(std::size_t primary_size, MixRatio ratio);

struct MixSpec {
  const Corpus* primary = nullptr;
  const Corpus* secondary = nullptr;
  MixRatio ratio;
  std::optional<std::size_t> total;  // nullopt: exhaust the primary source
  std::uint64_t seed = 0;
};

// Draws without replacement from each source (streams "corpus/mix/primary"
// and "corpus/mix/secondary") and interleaves them so that position n holds
// a primary document exactly when mix_primary_count increases at n.
Corpus mix(const MixSpec& spec);

// Learning-curve snapshots. Nested: one shuffle (stream "corpus/curve"),
// snapshot k is its first sizes[k] documents. Independent: snapshot k comes
// from its own shuffle (stream "corpus/curve/<k>").
std::vector<Corpus> subsample_curve(const Corpus& corpus,
                                    std::span<const std::size_t> sizes,
                                    std::uint64_t seed, bool nested = true);

struct LabeledCorpus {
  std::string label;
  const Corpus* corpus = nullptr;
};

struct IaaMatrix {
  std::vector<std::string> labels;
  std::vector<Score> scores;  // row-major; (i, j) scores i as predicted, j as reference

  const Score& at(std::size_t i, std::size_t j) const { return scores[i * labels.size() + j]; }
};

// Pairwise corpus-level SMATCH between annotation sets over the same ids.
IaaMatrix iaa(std::span<const LabeledCorpus> annotations, const ScoreConfig& config = {});

// "a vs b<TAB>P<TAB>R<TAB>F1" for every i < j, preceded by a header line.
std::string render_iaa(const IaaMatrix& matrix);

}  // namespace amrkit
