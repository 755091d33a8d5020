#include "amrkit/smatch.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <set>
#include <tuple>
#include <unordered_map>

#include "amrkit/error.hpp"
#include "amrkit/rng.hpp"
#include "parallel.hpp"

namespace amrkit {

bool Alignment::is_injective() const {
  std::set<std::string_view> targets;
  for (const auto& [from, to] : mapping)
    if (!targets.insert(to).second) return false;
  return true;
}

Score Score::from_counts(std::uint64_t correct, std::uint64_t predicted,
                         std::uint64_t reference) {
  Score s;
  s.n_correct = correct;
  s.n_predicted = predicted;
  s.n_reference = reference;
  s.precision = predicted == 0 ? 0.0 : static_cast<double>(correct) / predicted;
  s.recall = reference == 0 ? 0.0 : static_cast<double>(correct) / reference;
  // 2pr/(p+r) reduces to 2c/(n_pred + n_ref), which avoids compounding the
  // rounding of p and r.
  s.f1 = correct == 0 ? 0.0
                      : 2.0 * static_cast<double>(correct) /
                            static_cast<double>(predicted + reference);
  return s;
}

Score operator+(const Score& a, const Score& b) {
  return Score::from_counts(a.n_correct + b.n_correct, a.n_predicted + b.n_predicted,
                            a.n_reference + b.n_reference);
}

namespace {

constexpr int kUnmapped = -1;

// Triple sets reduced to integer weights: unary[i][j] counts the instance and
// attribute triples of A-variable i that match when i maps to B-variable j;
// each A variable pair with relations carries a table of B pairs it matches.
class MatchProblem {
 public:
  MatchProblem(const TripleSet& a, const TripleSet& b) {
    a_vars_ = collect_variables(a);
    b_vars_ = collect_variables(b);
    for (std::size_t i = 0; i < a_vars_.size(); ++i) a_index_.emplace(a_vars_[i], i);
    for (std::size_t j = 0; j < b_vars_.size(); ++j) b_index_.emplace(b_vars_[j], j);
    a_order_ = traversal_indices(a, a_index_);
    b_order_ = traversal_indices(b, b_index_);
    a_concepts_ = concepts(a, a_index_, a_vars_.size());
    b_concepts_ = concepts(b, b_index_, b_vars_.size());
    build_unary(a, b);
    build_pairs(a, b);
  }

  std::size_t n() const { return a_vars_.size(); }
  std::size_t m() const { return b_vars_.size(); }
  const std::vector<std::size_t>& a_order() const { return a_order_; }
  const std::vector<std::size_t>& b_order() const { return b_order_; }
  const std::string* a_concept(std::size_t i) const { return a_concepts_[i]; }
  const std::string* b_concept(std::size_t j) const { return b_concepts_[j]; }

  std::size_t unary(std::size_t i, int j) const {
    return j == kUnmapped ? 0 : unary_[i * m() + static_cast<std::size_t>(j)];
  }

  std::size_t pair_weight(std::size_t p, int j, int l) const {
    if (j == kUnmapped || l == kUnmapped) return 0;
    const auto& table = pairs_[p].matches;
    auto it = table.find(static_cast<std::size_t>(j) * m() + static_cast<std::size_t>(l));
    return it == table.end() ? 0 : it->second;
  }

  std::size_t total(const std::vector<int>& map) const {
    std::size_t sum = 0;
    for (std::size_t i = 0; i < n(); ++i) sum += unary(i, map[i]);
    for (std::size_t p = 0; p < pairs_.size(); ++p)
      sum += pair_weight(p, map[pairs_[p].from], map[pairs_[p].to]);
    return sum;
  }

  // Score contributed by the given variables: their unary terms plus every
  // relation pair touching at least one of them, each pair counted once.
  std::size_t local(std::initializer_list<std::size_t> vars,
                    const std::vector<int>& map) const {
    std::size_t sum = 0;
    std::vector<std::size_t> seen_pairs;
    for (std::size_t i : vars) {
      sum += unary(i, map[i]);
      for (std::size_t p : incident_[i]) {
        if (std::find(seen_pairs.begin(), seen_pairs.end(), p) != seen_pairs.end())
          continue;
        seen_pairs.push_back(p);
        sum += pair_weight(p, map[pairs_[p].from], map[pairs_[p].to]);
      }
    }
    return sum;
  }

  // Largest amount variable i can add once all smaller-indexed variables are
  // fixed: its best unary term plus the best weight of each pair whose larger
  // endpoint is i.
  std::vector<std::size_t> suffix_bounds() const {
    std::vector<std::size_t> own(n(), 0);
    for (std::size_t i = 0; i < n(); ++i) {
      for (std::size_t j = 0; j < m(); ++j)
        own[i] = std::max(own[i], unary_[i * m() + j]);
    }
    for (const auto& pair : pairs_) {
      std::size_t best = 0;
      for (const auto& [key, w] : pair.matches) best = std::max(best, w);
      own[std::max(pair.from, pair.to)] += best;
    }
    std::vector<std::size_t> suffix(n() + 1, 0);
    for (std::size_t i = n(); i-- > 0;) suffix[i] = suffix[i + 1] + own[i];
    return suffix;
  }

  // Gain from fixing variable i to j given that all variables < i are fixed.
  std::size_t gain_with_prefix(std::size_t i, int j, const std::vector<int>& map) const {
    std::size_t sum = unary(i, j);
    for (std::size_t p : incident_[i]) {
      const auto& pair = pairs_[p];
      const std::size_t other = pair.from == i ? pair.to : pair.from;
      if (other > i) continue;
      const int from_j = pair.from == i ? j : map[pair.from];
      const int to_j = pair.to == i ? j : map[pair.to];
      sum += pair_weight(p, from_j, to_j);
    }
    return sum;
  }

  Alignment to_alignment(const std::vector<int>& map) const {
    Alignment out;
    for (std::size_t i = 0; i < n(); ++i) {
      if (map[i] != kUnmapped)
        out.mapping.emplace(a_vars_[i], b_vars_[static_cast<std::size_t>(map[i])]);
    }
    return out;
  }

  std::vector<int> from_alignment(const Alignment& alignment) const {
    std::vector<int> map(n(), kUnmapped);
    for (const auto& [from, to] : alignment.mapping) {
      auto ai = a_index_.find(from);
      auto bj = b_index_.find(to);
      if (ai != a_index_.end() && bj != b_index_.end())
        map[ai->second] = static_cast<int>(bj->second);
    }
    return map;
  }

 private:
  struct RelationPair {
    std::size_t from;
    std::size_t to;
    std::unordered_map<std::size_t, std::size_t> matches;  // j*m+l -> weight
  };

  using Index = std::unordered_map<std::string, std::size_t>;

  static std::vector<std::string> collect_variables(const TripleSet& set) {
    std::set<std::string> vars(set.variables.begin(), set.variables.end());
    for (const auto& t : set.triples) {
      vars.insert(t.source);
      if (t.kind == TripleKind::kRelation) vars.insert(t.target);
    }
    return {vars.begin(), vars.end()};
  }

  static std::vector<std::size_t> traversal_indices(const TripleSet& set,
                                                    const Index& index) {
    std::vector<std::size_t> order;
    std::vector<bool> placed(index.size(), false);
    auto place = [&](const std::string& var) {
      const std::size_t i = index.at(var);
      if (!placed[i]) {
        placed[i] = true;
        order.push_back(i);
      }
    };
    for (const auto& v : set.variables) place(v);
    for (const auto& t : set.triples) {
      place(t.source);
      if (t.kind == TripleKind::kRelation) place(t.target);
    }
    return order;
  }

  static std::vector<const std::string*> concepts(const TripleSet& set,
                                                  const Index& index,
                                                  std::size_t count) {
    std::vector<const std::string*> out(count, nullptr);
    for (const auto& t : set.triples) {
      if (t.kind != TripleKind::kInstance) continue;
      auto& slot = out[index.at(t.source)];
      if (slot == nullptr) slot = &t.target;
    }
    return out;
  }

  using UnaryKey = std::tuple<TripleKind, std::string, std::string>;
  using UnaryCounts = std::map<UnaryKey, std::size_t>;

  static std::vector<UnaryCounts> unary_counts(const TripleSet& set, const Index& index) {
    std::vector<UnaryCounts> out(index.size());
    for (const auto& t : set.triples) {
      if (t.kind == TripleKind::kRelation) continue;
      ++out[index.at(t.source)][{t.kind, t.role, t.target}];
    }
    return out;
  }

  void build_unary(const TripleSet& a, const TripleSet& b) {
    const auto a_counts = unary_counts(a, a_index_);
    const auto b_counts = unary_counts(b, b_index_);
    unary_.assign(n() * m(), 0);
    for (std::size_t i = 0; i < n(); ++i) {
      if (a_counts[i].empty()) continue;
      for (std::size_t j = 0; j < m(); ++j) {
        std::size_t w = 0;
        for (const auto& [key, count] : a_counts[i]) {
          auto it = b_counts[j].find(key);
          if (it != b_counts[j].end()) w += std::min(count, it->second);
        }
        unary_[i * m() + j] = w;
      }
    }
  }

  void build_pairs(const TripleSet& a, const TripleSet& b) {
    // (from, to) -> role -> count, for both sides.
    using PairRoles = std::map<std::pair<std::size_t, std::size_t>, std::map<std::string, std::size_t>>;
    auto group = [](const TripleSet& set, const Index& index) {
      PairRoles out;
      for (const auto& t : set.triples) {
        if (t.kind == TripleKind::kRelation)
          ++out[{index.at(t.source), index.at(t.target)}][t.role];
      }
      return out;
    };
    const PairRoles a_pairs = group(a, a_index_);
    const PairRoles b_pairs = group(b, b_index_);

    incident_.assign(n(), {});
    for (const auto& [ends, roles] : a_pairs) {
      RelationPair pair{ends.first, ends.second, {}};
      for (const auto& [b_ends, b_roles] : b_pairs) {
        // A self-loop can only match a self-loop and vice versa.
        if ((ends.first == ends.second) != (b_ends.first == b_ends.second)) continue;
        std::size_t w = 0;
        for (const auto& [role, count] : roles) {
          auto it = b_roles.find(role);
          if (it != b_roles.end()) w += std::min(count, it->second);
        }
        if (w > 0) pair.matches.emplace(b_ends.first * m() + b_ends.second, w);
      }
      const std::size_t p = pairs_.size();
      incident_[pair.from].push_back(p);
      if (pair.to != pair.from) incident_[pair.to].push_back(p);
      pairs_.push_back(std::move(pair));
    }
  }

  std::vector<std::string> a_vars_;
  std::vector<std::string> b_vars_;
  Index a_index_;
  Index b_index_;
  std::vector<std::size_t> a_order_;
  std::vector<std::size_t> b_order_;
  std::vector<const std::string*> a_concepts_;
  std::vector<const std::string*> b_concepts_;
  std::vector<std::size_t> unary_;
  std::vector<RelationPair> pairs_;
  std::vector<std::vector<std::size_t>> incident_;
};

class ExactSearch {
 public:
  explicit ExactSearch(const MatchProblem& problem)
      : problem_(problem),
        bounds_(problem.suffix_bounds()),
        target_(std::min(problem.n(), problem.m())),
        map_(problem.n(), kUnmapped),
        used_(problem.m(), false) {}

  std::pair<std::vector<int>, std::size_t> run() {
    visit(0, 0, 0);
    return {best_map_, best_ == kNone ? 0 : best_};
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  // Variables are visited in sorted-id order and B candidates ascending, with
  // "unmapped" last, so the first optimum reached has the lexicographically
  // smallest pair list. Later ties are never accepted.
  void visit(std::size_t i, std::size_t mapped, std::size_t score) {
    if (best_ != kNone && score + bounds_[i] <= best_) return;
    if (i == problem_.n()) {
      if (mapped == target_) {
        best_ = score;
        best_map_ = map_;
      }
      return;
    }
    const std::size_t remaining = problem_.n() - i;
    if (mapped < target_) {
      for (std::size_t j = 0; j < problem_.m(); ++j) {
        if (used_[j]) continue;
        const int jj = static_cast<int>(j);
        const std::size_t gain = problem_.gain_with_prefix(i, jj, map_);
        map_[i] = jj;
        used_[j] = true;
        visit(i + 1, mapped + 1, score + gain);
        used_[j] = false;
        map_[i] = kUnmapped;
      }
    }
    if (target_ - mapped < remaining) visit(i + 1, mapped, score);
  }

  const MatchProblem& problem_;
  std::vector<std::size_t> bounds_;
  std::size_t target_;
  std::vector<int> map_;
  std::vector<bool> used_;
  std::vector<int> best_map_;
  std::size_t best_ = kNone;
};

class HillClimber {
 public:
  explicit HillClimber(const MatchProblem& problem) : problem_(problem) {}

  // Climbs from `map` in place and returns the final count.
  std::size_t climb(std::vector<int>& map) const {
    std::vector<bool> used(problem_.m(), false);
    for (int j : map)
      if (j != kUnmapped) used[static_cast<std::size_t>(j)] = true;
    std::size_t current = problem_.total(map);

    for (;;) {
      std::size_t best_gain = 0;
      enum class Move { kNone, kRemap, kSwap } best_move = Move::kNone;
      std::size_t best_i = 0;
      std::size_t best_k = 0;

      for (std::size_t i = 0; i < problem_.n(); ++i) {
        const int old = map[i];
        const std::size_t before = problem_.local({i}, map);
        for (std::size_t j = 0; j < problem_.m(); ++j) {
          if (used[j]) continue;
          map[i] = static_cast<int>(j);
          const std::size_t after = problem_.local({i}, map);
          if (after > before && after - before > best_gain) {
            best_gain = after - before;
            best_move = Move::kRemap;
            best_i = i;
            best_k = j;
          }
        }
        map[i] = old;
      }
      for (std::size_t i = 0; i < problem_.n(); ++i) {
        for (std::size_t k = i + 1; k < problem_.n(); ++k) {
          if (map[i] == map[k]) continue;  // both unmapped
          const std::size_t before = problem_.local({i, k}, map);
          std::swap(map[i], map[k]);
          const std::size_t after = problem_.local({i, k}, map);
          std::swap(map[i], map[k]);
          if (after > before && after - before > best_gain) {
            best_gain = after - before;
            best_move = Move::kSwap;
            best_i = i;
            best_k = k;
          }
        }
      }

      if (best_move == Move::kNone) break;
      if (best_move == Move::kRemap) {
        if (map[best_i] != kUnmapped) used[static_cast<std::size_t>(map[best_i])] = false;
        map[best_i] = static_cast<int>(best_k);
        used[best_k] = true;
      } else {
        std::swap(map[best_i], map[best_k]);
      }
      const std::size_t next = problem_.total(map);
      assert(next == current + best_gain);
      assert(next > current);  // the climb never goes down
      current = next;
    }
    return current;
  }

  std::vector<int> concept_start() const {
    std::vector<int> map(problem_.n(), kUnmapped);
    std::vector<bool> used(problem_.m(), false);
    for (std::size_t i : problem_.a_order()) {
      const std::string* concept_label = problem_.a_concept(i);
      if (concept_label == nullptr) continue;
      for (std::size_t j : problem_.b_order()) {
        const std::string* other = problem_.b_concept(j);
        if (!used[j] && other != nullptr && *other == *concept_label) {
          map[i] = static_cast<int>(j);
          used[j] = true;
          break;
        }
      }
    }
    return map;
  }

  std::vector<int> random_start(Rng& rng) const {
    std::vector<std::size_t> a_perm(problem_.n());
    std::vector<std::size_t> b_perm(problem_.m());
    std::iota(a_perm.begin(), a_perm.end(), 0);
    std::iota(b_perm.begin(), b_perm.end(), 0);
    rng.shuffle(std::span<std::size_t>(a_perm));
    rng.shuffle(std::span<std::size_t>(b_perm));
    std::vector<int> map(problem_.n(), kUnmapped);
    const std::size_t count = std::min(problem_.n(), problem_.m());
    for (std::size_t k = 0; k < count; ++k) map[a_perm[k]] = static_cast<int>(b_perm[k]);
    return map;
  }

 private:
  const MatchProblem& problem_;
};

}  // namespace

std::size_t matched_count(const TripleSet& a, const TripleSet& b,
                          const Alignment& alignment) {
  const MatchProblem problem(a, b);
  return problem.total(problem.from_alignment(alignment));
}

AlignmentResult align_exact(const TripleSet& a, const TripleSet& b, std::size_t cap) {
  const MatchProblem problem(a, b);
  const std::size_t smaller = std::min(problem.n(), problem.m());
  if (smaller > cap)
    throw CapExceededError("exact alignment needs at most " + std::to_string(cap) +
                           " variables on the smaller side, got " +
                           std::to_string(smaller));
  auto [map, count] = ExactSearch(problem).run();
  if (map.empty()) map.assign(problem.n(), kUnmapped);
  return {problem.to_alignment(map), count};
}

AlignmentResult align_greedy(const TripleSet& a, const TripleSet& b,
                             std::size_t restarts, std::uint64_t seed) {
  if (restarts == 0) throw InvalidArgumentError("restarts must be at least 1");
  const MatchProblem problem(a, b);
  const HillClimber climber(problem);
  Rng rng(seed, "smatch/restart");

  std::vector<int> best_map = climber.concept_start();
  std::size_t best = climber.climb(best_map);
  for (std::size_t r = 1; r < restarts; ++r) {
    std::vector<int> map = climber.random_start(rng);
    const std::size_t count = climber.climb(map);
    if (count > best) {
      best = count;
      best_map = std::move(map);
    }
  }
  return {problem.to_alignment(best_map), best};
}

std::uint64_t pair_seed(std::uint64_t master_seed, std::string_view document_id) {
  return stream_seed(master_seed, document_id);
}

AlignmentResult align(const TripleSet& a, const TripleSet& b, const ScoreConfig& config,
                      std::string_view document_id) {
  auto variable_count = [](const TripleSet& s) {
    std::set<std::string_view> vars(s.variables.begin(), s.variables.end());
    for (const auto& t : s.triples) {
      vars.insert(t.source);
      if (t.kind == TripleKind::kRelation) vars.insert(t.target);
    }
    return vars.size();
  };
  const bool exact =
      config.exact == ExactMode::kAlways ||
      (config.exact == ExactMode::kAuto && variable_count(a) <= config.exact_cap &&
       variable_count(b) <= config.exact_cap);
  if (exact) return align_exact(a, b, config.exact_cap);
  return align_greedy(a, b, config.restarts, pair_seed(config.seed, document_id));
}

Score score_triples(const TripleSet& predicted, const TripleSet& reference,
                    const ScoreConfig& config, std::string_view document_id) {
  const AlignmentResult result = align(predicted, reference, config, document_id);
  return Score::from_counts(result.count, predicted.triples.size(),
                            reference.triples.size());
}

Score score_pair(const AmrGraph& predicted, const AmrGraph& reference,
                 const ScoreConfig& config, std::string_view document_id) {
  const DecomposeOptions options{config.top_triple};
  return score_triples(decompose(predicted, options), decompose(reference, options),
                       config, document_id);
}

CorpusScore score_corpus(const Corpus& predicted, const Corpus& reference,
                         const ScoreConfig& config) {
  const auto pairs = pair_documents(predicted, reference);
  CorpusScore out;
  out.documents.resize(pairs.size());
  detail::parallel_for(pairs.size(), config.threads, [&](std::size_t i) {
    const auto& [pred, ref] = pairs[i];
    out.documents[i] = {pred->id, score_pair(pred->graph, ref->graph, config, pred->id)};
  });
  for (const auto& doc : out.documents) out.total = out.total + doc.score;
  return out;
}

}  // namespace amrkit
