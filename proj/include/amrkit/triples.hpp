#pragma once

#include <compare>
#include <string>
#include <vector>

#include "amrkit/graph.hpp"

namespace amrkit {

enum class TripleKind { kInstance, kAttribute, kRelation };

// role(source, target). For instances the role is "instance" and the target a
// concept; for attributes the target is the constant text without quotes; for
// relations it is a variable.
struct Triple {
  TripleKind kind;
  std::string role;
  std::string source;
  std::string target;

  friend auto operator<=>(const Triple&, const Triple&) = default;
};

struct TripleSet {
  std::vector<Triple> triples;
  std::vector<std::string> variables;  // traversal order, unique

  friend bool operator==(const TripleSet&, const TripleSet&) = default;
};

struct DecomposeOptions {
  // Adds top(root, concept-of-root), as the reference SMATCH scorer does.
  bool top_triple = false;
};

inline constexpr const char* kInstanceRole = "instance";

// Instances first (traversal order), then attributes, then relations, the
// latter two in stored order. Throws InvalidGraphError on invalid graphs.
TripleSet decompose(const AmrGraph& graph, DecomposeOptions options = {});

// "role(source, target)"
std::string to_string(const Triple& triple);

}  // namespace amrkit
