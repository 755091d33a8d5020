#include "amrkit/graph.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <regex>
#include <set>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "amrkit/error.hpp"

namespace amrkit {

std::string normalize_role(std::string_view role) {
  if (!role.empty() && role.front() == ':') role.remove_prefix(1);
  std::string out(role);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool is_numeric_literal(std::string_view text) {
  static const std::regex kNumber(R"([+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?)");
  return std::regex_match(text.begin(), text.end(), kNumber);
}

bool is_plain_symbol(std::string_view text) {
  if (text.empty() || text.front() == ':' || text.front() == '#') return false;
  if (text == "/") return false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' ||
        c == '"')
      return false;
  }
  return true;
}

AmrGraph::AmrGraph(std::string root, std::vector<Node> nodes,
                   std::vector<Edge> edges, std::vector<Attribute> attributes)
    : root_(std::move(root)),
      nodes_(std::move(nodes)),
      edges_(std::move(edges)),
      attributes_(std::move(attributes)) {
  for (auto& e : edges_) e.role = normalize_role(e.role);
  for (auto& a : attributes_) a.role = normalize_role(a.role);
}

const Node* AmrGraph::find_node(std::string_view id) const {
  auto it = std::find_if(nodes_.begin(), nodes_.end(),
                         [&](const Node& n) { return n.id == id; });
  return it == nodes_.end() ? nullptr : &*it;
}

std::optional<std::string_view> AmrGraph::label_of(std::string_view id) const {
  const Node* n = find_node(id);
  if (n == nullptr) return std::nullopt;
  return std::string_view(n->label);
}

bool operator==(const AmrGraph& a, const AmrGraph& b) {
  if (a.root_ != b.root_) return false;
  if (a.nodes_.size() != b.nodes_.size() || a.edges_.size() != b.edges_.size() ||
      a.attributes_.size() != b.attributes_.size())
    return false;

  auto node_set = [](const AmrGraph& g) {
    std::set<std::pair<std::string, std::string>> out;
    for (const auto& n : g.nodes_) out.emplace(n.id, n.label);
    return out;
  };
  if (node_set(a) != node_set(b)) return false;

  using Outgoing = std::map<std::string, std::vector<std::tuple<std::string, std::string, bool>>>;
  auto outgoing = [](const AmrGraph& g) {
    Outgoing edges, attrs;
    for (const auto& e : g.edges_) edges[e.source].emplace_back(e.role, e.target, false);
    for (const auto& at : g.attributes_)
      attrs[at.source].emplace_back(at.role, at.value.text, at.value.quoted);
    return std::pair{edges, attrs};
  };
  return outgoing(a) == outgoing(b);
}

std::string_view to_string(DiagnosticKind kind) {
  switch (kind) {
    case DiagnosticKind::kMissingRoot: return "missing-root";
    case DiagnosticKind::kDuplicateVariable: return "duplicate-variable";
    case DiagnosticKind::kDanglingReference: return "dangling-reference";
    case DiagnosticKind::kUnreachableNode: return "unreachable-node";
    case DiagnosticKind::kCycle: return "cycle";
    case DiagnosticKind::kMalformedLabel: return "malformed-label";
    case DiagnosticKind::kAmbiguousConstant: return "ambiguous-constant";
  }
  return "unknown";
}

namespace {

using Adjacency = std::unordered_map<std::string, std::vector<std::string>>;

Adjacency build_adjacency(const AmrGraph& graph,
                          const std::unordered_set<std::string>& known) {
  Adjacency adj;
  for (const auto& e : graph.edges()) {
    if (known.count(e.source) && known.count(e.target))
      adj[e.source].push_back(e.target);
  }
  return adj;
}

void check_labels(const AmrGraph& graph, std::vector<Diagnostic>& out) {
  auto bad = [&](const std::string& what) {
    out.push_back({DiagnosticKind::kMalformedLabel, what});
  };
  for (const auto& n : graph.nodes()) {
    if (!is_plain_symbol(n.id) || is_numeric_literal(n.id))
      bad("variable id '" + n.id + "' is not a valid variable token");
    if (!is_plain_symbol(n.label))
      bad("concept '" + n.label + "' of variable '" + n.id +
          "' is not a valid concept token");
  }
  auto check_role = [&](const std::string& role, const std::string& source) {
    if (role.empty() || !is_plain_symbol(role) || role == "instance")
      bad("role ':" + role + "' on variable '" + source + "' is not a valid role");
  };
  for (const auto& e : graph.edges()) check_role(e.role, e.source);
  for (const auto& a : graph.attributes()) {
    check_role(a.role, a.source);
    if (!a.value.quoted && !is_plain_symbol(a.value.text))
      bad("constant '" + a.value.text + "' on ':" + a.role +
          "' must be quoted to be written");
  }
}

}  // namespace

std::vector<Diagnostic> validate(const AmrGraph& graph) {
  std::vector<Diagnostic> out;

  std::unordered_set<std::string> known;
  for (const auto& n : graph.nodes()) {
    if (!known.insert(n.id).second)
      out.push_back({DiagnosticKind::kDuplicateVariable,
                     "variable '" + n.id + "' is bound more than once"});
  }

  if (graph.root().empty() || !known.count(graph.root())) {
    out.push_back({DiagnosticKind::kMissingRoot,
                   graph.root().empty()
                       ? std::string("graph has no root")
                       : "root '" + graph.root() + "' is not a bound variable"});
  }

  for (const auto& e : graph.edges()) {
    for (const auto* end : {&e.source, &e.target}) {
      if (!known.count(*end))
        out.push_back({DiagnosticKind::kDanglingReference,
                       "edge " + e.source + " :" + e.role + " " + e.target +
                           " references unbound variable '" + *end + "'"});
    }
  }
  for (const auto& a : graph.attributes()) {
    if (!known.count(a.source))
      out.push_back({DiagnosticKind::kDanglingReference,
                     "attribute :" + a.role + " references unbound variable '" +
                         a.source + "'"});
    if (!a.value.quoted && known.count(a.value.text))
      out.push_back({DiagnosticKind::kAmbiguousConstant,
                     "unquoted constant '" + a.value.text + "' on " + a.source +
                         " :" + a.role + " collides with a variable id"});
  }

  check_labels(graph, out);

  const Adjacency adj = build_adjacency(graph, known);

  // Iterative three-colour DFS over every node; each back edge is one cycle.
  enum class Colour { kWhite, kGrey, kBlack };
  std::unordered_map<std::string, Colour> colour;
  for (const auto& n : graph.nodes()) colour.emplace(n.id, Colour::kWhite);
  for (const auto& n : graph.nodes()) {
    if (colour[n.id] != Colour::kWhite) continue;
    std::vector<std::pair<std::string, std::size_t>> stack{{n.id, 0}};
    colour[n.id] = Colour::kGrey;
    while (!stack.empty()) {
      auto& [var, next] = stack.back();
      auto it = adj.find(var);
      if (it == adj.end() || next >= it->second.size()) {
        colour[var] = Colour::kBlack;
        stack.pop_back();
        continue;
      }
      const std::string target = it->second[next++];
      if (colour[target] == Colour::kGrey) {
        out.push_back({DiagnosticKind::kCycle,
                       "cycle through edge " + var + " -> " + target});
      } else if (colour[target] == Colour::kWhite) {
        colour[target] = Colour::kGrey;
        stack.emplace_back(target, 0);
      }
    }
  }

  if (known.count(graph.root())) {
    std::unordered_set<std::string> seen{graph.root()};
    std::vector<std::string> frontier{graph.root()};
    while (!frontier.empty()) {
      std::string var = std::move(frontier.back());
      frontier.pop_back();
      if (auto it = adj.find(var); it != adj.end()) {
        for (const auto& t : it->second)
          if (seen.insert(t).second) frontier.push_back(t);
      }
    }
    std::unordered_set<std::string> reported;
    for (const auto& n : graph.nodes()) {
      if (!seen.count(n.id) && reported.insert(n.id).second)
        out.push_back({DiagnosticKind::kUnreachableNode,
                       "variable '" + n.id + "' is not reachable from root '" +
                           graph.root() + "'"});
    }
  }
  return out;
}

void require_valid(const AmrGraph& graph) {
  auto diagnostics = validate(graph);
  if (!diagnostics.empty()) {
    throw InvalidGraphError("invalid graph (" +
                            std::string(to_string(diagnostics.front().kind)) +
                            "): " + diagnostics.front().message);
  }
}

std::vector<std::string> traversal_order(const AmrGraph& graph) {
  std::unordered_map<std::string, std::vector<std::string>> children;
  for (const auto& e : graph.edges()) children[e.source].push_back(e.target);

  std::vector<std::string> order;
  std::unordered_set<std::string> seen;
  std::vector<std::pair<std::string, std::size_t>> stack;
  if (!graph.root().empty()) {
    stack.emplace_back(graph.root(), 0);
    seen.insert(graph.root());
    order.push_back(graph.root());
  }
  while (!stack.empty()) {
    auto& [var, next] = stack.back();
    auto it = children.find(var);
    if (it == children.end() || next >= it->second.size()) {
      stack.pop_back();
      continue;
    }
    const std::string target = it->second[next++];
    if (seen.insert(target).second) {
      order.push_back(target);
      stack.emplace_back(target, 0);
    }
  }
  return order;
}

}  // namespace amrkit
