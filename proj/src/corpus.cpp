#include "amrkit/corpus.hpp"

#include <cstdio>
#include <numeric>
#include <unordered_set>

#include "amrkit/error.hpp"
#include "amrkit/rng.hpp"

namespace amrkit {

namespace {

void require_unique_ids(const Corpus& corpus) {
  std::unordered_set<std::string_view> ids;
  for (const auto& doc : corpus.documents)
    if (!ids.insert(doc.id).second)
      throw InvalidArgumentError("duplicate document id '" + doc.id + "' in corpus '" +
                                 corpus.name + "'");
}

std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed,
                                          std::string_view stream) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed, stream);
  rng.shuffle(std::span<std::size_t>(order));
  return order;
}

Corpus take(const Corpus& source, std::span<const std::size_t> indices, std::string name) {
  Corpus out;
  out.name = std::move(name);
  out.documents.reserve(indices.size());
  for (std::size_t i : indices) out.documents.push_back(source.documents[i]);
  return out;
}

std::string format_ratio(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.4f", value);
  return buffer;
}

}  // namespace

SplitResult split(const Corpus& corpus, SplitSizes sizes, std::uint64_t seed) {
  require_unique_ids(corpus);
  if (sizes.train + sizes.dev + sizes.test != corpus.size())
    throw InvalidArgumentError(
        "split sizes " + std::to_string(sizes.train) + "+" + std::to_string(sizes.dev) +
        "+" + std::to_string(sizes.test) + " do not sum to the corpus size " +
        std::to_string(corpus.size()));
  const auto order = shuffled_indices(corpus.size(), seed, "corpus/split");
  const std::span<const std::size_t> all(order);
  return SplitResult{
      take(corpus, all.subspan(0, sizes.train), "train"),
      take(corpus, all.subspan(sizes.train, sizes.dev), "dev"),
      take(corpus, all.subspan(sizes.train + sizes.dev, sizes.test), "test"),
  };
}

std::size_t mix_primary_count(std::size_t n, MixRatio ratio) {
  const std::size_t parts = ratio.primary_parts + ratio.secondary_parts;
  return (2 * n * ratio.primary_parts + parts) / (2 * parts);
}

std::size_t exhaust_primary_total(std::size_t primary_size, MixRatio ratio) {
  if (ratio.primary_parts == 0)
    throw InvalidArgumentError("ratio parts must be at least 1");
  const std::size_t parts = ratio.primary_parts + ratio.secondary_parts;
  const std::size_t numerator = (2 * primary_size + 1) * parts;
  const std::size_t denominator = 2 * ratio.primary_parts;
  return (numerator + denominator - 1) / denominator - 1;
}

Corpus mix(const MixSpec& spec) {
  if (spec.primary == nullptr || spec.secondary == nullptr)
    throw InvalidArgumentError("mix needs a primary and a secondary corpus");
  if (spec.ratio.primary_parts == 0 || spec.ratio.secondary_parts == 0)
    throw InvalidArgumentError("ratio parts must be at least 1");
  const Corpus& primary = *spec.primary;
  const Corpus& secondary = *spec.secondary;
  require_unique_ids(primary);
  require_unique_ids(secondary);
  {
    std::unordered_set<std::string_view> ids;
    for (const auto& doc : primary.documents) ids.insert(doc.id);
    for (const auto& doc : secondary.documents)
      if (ids.count(doc.id))
        throw InvalidArgumentError("document id '" + doc.id +
                                   "' appears in both mixture sources");
  }

  const std::size_t total =
      spec.total.value_or(exhaust_primary_total(primary.size(), spec.ratio));
  const std::size_t want_primary = mix_primary_count(total, spec.ratio);
  const std::size_t want_secondary = total - want_primary;
  if (want_primary > primary.size() || want_secondary > secondary.size())
    throw InsufficientDataError(
        "mixture of " + std::to_string(total) + " needs " + std::to_string(want_primary) +
        " primary and " + std::to_string(want_secondary) + " secondary documents; have " +
        std::to_string(primary.size()) + " and " + std::to_string(secondary.size()));

  const auto primary_order = shuffled_indices(primary.size(), spec.seed, "corpus/mix/primary");
  const auto secondary_order =
      shuffled_indices(secondary.size(), spec.seed, "corpus/mix/secondary");

  Corpus out;
  out.name = "mix";
  out.documents.reserve(total);
  std::size_t taken_primary = 0;
  std::size_t taken_secondary = 0;
  for (std::size_t n = 1; n <= total; ++n) {
    if (mix_primary_count(n, spec.ratio) > taken_primary)
      out.documents.push_back(primary.documents[primary_order[taken_primary++]]);
    else
      out.documents.push_back(secondary.documents[secondary_order[taken_secondary++]]);
  }
  return out;
}

std::vector<Corpus> subsample_curve(const Corpus& corpus, std::span<const std::size_t> sizes,
                                    std::uint64_t seed, bool nested) {
  require_unique_ids(corpus);
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    if (sizes[k] > corpus.size())
      throw InsufficientDataError("curve size " + std::to_string(sizes[k]) +
                                  " exceeds the corpus size " +
                                  std::to_string(corpus.size()));
    if (k > 0 && sizes[k] < sizes[k - 1])
      throw InvalidArgumentError("curve sizes must be ascending");
  }

  std::vector<Corpus> out;
  out.reserve(sizes.size());
  const auto shared = shuffled_indices(corpus.size(), seed, "corpus/curve");
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    const std::string name = "curve-" + std::to_string(sizes[k]);
    if (nested) {
      out.push_back(take(corpus, std::span(shared).first(sizes[k]), name));
    } else {
      const auto own =
          shuffled_indices(corpus.size(), seed, "corpus/curve/" + std::to_string(k));
      out.push_back(take(corpus, std::span(own).first(sizes[k]), name));
    }
  }
  return out;
}

IaaMatrix iaa(std::span<const LabeledCorpus> annotations, const ScoreConfig& config) {
  if (annotations.size() < 2)
    throw InvalidArgumentError("agreement needs at least two annotation sets");
  IaaMatrix out;
  const std::size_t n = annotations.size();
  for (const auto& a : annotations) {
    if (a.corpus == nullptr) throw InvalidArgumentError("missing annotation corpus");
    out.labels.push_back(a.label);
  }
  out.scores.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      try {
        out.scores[i * n + j] =
            score_corpus(*annotations[i].corpus, *annotations[j].corpus, config).total;
      } catch (const MismatchError& e) {
        throw MismatchError("annotation sets '" + annotations[i].label + "' and '" +
                            annotations[j].label + "' cover different documents: " +
                            e.what());
      }
    }
  }
  return out;
}

std::string render_iaa(const IaaMatrix& matrix) {
  std::string out = "comparison\tprecision\trecall\tf1\n";
  const std::size_t n = matrix.labels.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Score& s = matrix.at(i, j);
      out += matrix.labels[i] + " vs " + matrix.labels[j] + "\t" + format_ratio(s.precision) +
             "\t" + format_ratio(s.recall) + "\t" + format_ratio(s.f1) + "\n";
    }
  }
  return out;
}

}  // namespace amrkit
