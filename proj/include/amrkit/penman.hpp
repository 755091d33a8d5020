#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "amrkit/graph.hpp"

namespace amrkit {

enum class TokenKind { kOpen, kClose, kSlash, kRole, kSymbol, kString };

struct Token {
  TokenKind kind;
  std::string text;  // as written; strings keep their quotes and escapes
  std::size_t line = 0;
  std::size_t column = 0;
};

// Splits PENMAN text into tokens. A '#' that starts a token comments out the
// rest of the line, which is how "# ::key value" metadata lines are skipped.
std::vector<Token> tokenize(std::string_view text);

// Parses exactly one PENMAN expression. Errors are reported as ParseError with
// a 1-based line and column.
//
// A bare symbol in target position is a reentrant reference when some node in
// the same expression binds it ("v / concept"), before or after the mention;
// otherwise it is a constant. Quoted strings and numbers are always constants.
AmrGraph parse_penman(std::string_view text);

struct SerializeOptions {
  // Indentation per nesting level; a negative value writes a single line.
  int indent = 6;
};

// Canonical PENMAN: depth-first from the root, each variable bound at its
// first mention, attributes of a node before its edges, both in stored order.
// Throws InvalidGraphError for graphs that fail validate().
std::string serialize_penman(const AmrGraph& graph, SerializeOptions options = {});

struct TokenSequence {
  std::vector<std::string> tokens;

  friend bool operator==(const TokenSequence&, const TokenSequence&) = default;
};

// Same traversal as serialize_penman, one string per token.
TokenSequence linearize(const AmrGraph& graph);

// Inverse of linearize. Errors are ParseError carrying the index of the first
// offending token.
AmrGraph delinearize(const TokenSequence& tokens);

std::string quote_string(std::string_view text);

}  // namespace amrkit
