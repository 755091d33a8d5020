#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace amrkit {

// A constant attribute value. `text` never includes surrounding quotes;
// `quoted` records whether the source wrote it as a string literal.
struct Constant {
  std::string text;
  bool quoted = false;

  friend bool operator==(const Constant&, const Constant&) = default;
};

struct Node {
  std::string id;
  std::string label;  // concept, e.g. "colonoscopy-01"

  friend bool operator==(const Node&, const Node&) = default;
};

struct Edge {
  std::string source;
  std::string role;
  std::string target;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Attribute {
  std::string source;
  std::string role;
  Constant value;

  friend bool operator==(const Attribute&, const Attribute&) = default;
};

// Rooted, labeled graph of variables. Construction does not check the AMR
// invariants (use validate()); it only lowercases role labels so that ":ARG0"
// and ":arg0" are the same role.
//
// Node order is the order variables were bound. Edge and attribute order is
// significant per source node and is what serialization follows.
class AmrGraph {
 public:
  AmrGraph() = default;
  AmrGraph(std::string root, std::vector<Node> nodes, std::vector<Edge> edges,
           std::vector<Attribute> attributes);

  const std::string& root() const { return root_; }
  std::span<const Node> nodes() const { return nodes_; }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const Attribute> attributes() const { return attributes_; }

  const Node* find_node(std::string_view id) const;
  std::optional<std::string_view> label_of(std::string_view id) const;
  bool has_variable(std::string_view id) const { return find_node(id) != nullptr; }

  // Graphs compare equal when they have the same root, the same variable to
  // concept bindings, and the same outgoing edges and attributes (in order)
  // for every variable. Global interleaving across sources is not compared.
  friend bool operator==(const AmrGraph& a, const AmrGraph& b);

 private:
  std::string root_;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<Attribute> attributes_;
};

// Lowercased, without a leading ':'.
std::string normalize_role(std::string_view role);

// True for tokens that PENMAN always reads as constants (numbers).
bool is_numeric_literal(std::string_view text);

// True when `text` can be written as a bare PENMAN symbol.
bool is_plain_symbol(std::string_view text);

enum class DiagnosticKind {
  kMissingRoot,
  kDuplicateVariable,
  kDanglingReference,
  kUnreachableNode,
  kCycle,
  kMalformedLabel,
  kAmbiguousConstant,
};

std::string_view to_string(DiagnosticKind kind);

struct Diagnostic {
  DiagnosticKind kind;
  std::string message;
};

// One diagnostic per violated invariant instance; empty iff the graph is a
// valid AMR.
std::vector<Diagnostic> validate(const AmrGraph& graph);

// Throws InvalidGraphError describing the first diagnostic, if any.
void require_valid(const AmrGraph& graph);

// Variables in depth-first order from the root following edges in stored
// order. This is the order in which serialization binds variables.
std::vector<std::string> traversal_order(const AmrGraph& graph);

}  // namespace amrkit
