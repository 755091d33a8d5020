#include "amrkit/triples.hpp"

#include <algorithm>
#include <unordered_map>

namespace amrkit {

TripleSet decompose(const AmrGraph& graph, DecomposeOptions options) {
  require_valid(graph);
  TripleSet out;
  out.variables = traversal_order(graph);
  out.triples.reserve(graph.nodes().size() + graph.attributes().size() +
                      graph.edges().size() + (options.top_triple ? 1 : 0));

  for (const auto& var : out.variables)
    out.triples.push_back({TripleKind::kInstance, kInstanceRole, var,
                           std::string(*graph.label_of(var))});
  if (options.top_triple)
    out.triples.push_back({TripleKind::kAttribute, "top", graph.root(),
                           std::string(*graph.label_of(graph.root()))});
  // attributes then relations, each grouped by source in traversal order
  std::unordered_map<std::string_view, std::size_t> rank;
  for (std::size_t i = 0; i < out.variables.size(); ++i) rank[out.variables[i]] = i;
  const auto by_source = [&](const Triple& x, const Triple& y) {
    return rank.at(x.source) < rank.at(y.source);
  };
  const auto first = out.triples.size();
  for (const auto& a : graph.attributes())
    out.triples.push_back({TripleKind::kAttribute, a.role, a.source, a.value.text});
  std::stable_sort(out.triples.begin() + first, out.triples.end(), by_source);
  const auto second = out.triples.size();
  for (const auto& e : graph.edges())
    out.triples.push_back({TripleKind::kRelation, e.role, e.source, e.target});
  std::stable_sort(out.triples.begin() + second, out.triples.end(), by_source);
  return out;
}

std::string to_string(const Triple& triple) {
  return triple.role + "(" + triple.source + ", " + triple.target + ")";
}

}  // namespace amrkit
