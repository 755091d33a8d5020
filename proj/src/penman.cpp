#include "amrkit/penman.hpp"

#include <cctype>
#include <unordered_map>
#include <unordered_set>

#include "amrkit/error.hpp"

namespace amrkit {

namespace {

bool is_delimiter(char c) {
  return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' ||
         c == '"';
}

std::string unquote(std::string_view quoted) {
  std::string out;
  out.reserve(quoted.size());
  for (std::size_t i = 1; i + 1 < quoted.size(); ++i) {
    if (quoted[i] == '\\' && i + 2 < quoted.size()) ++i;
    out.push_back(quoted[i]);
  }
  return out;
}

TokenKind classify(std::string_view text) {
  if (text == "(") return TokenKind::kOpen;
  if (text == ")") return TokenKind::kClose;
  if (text == "/") return TokenKind::kSlash;
  if (!text.empty() && text.front() == ':') return TokenKind::kRole;
  if (!text.empty() && text.front() == '"') return TokenKind::kString;
  return TokenKind::kSymbol;
}

// Recursive-descent builder shared by parse_penman (text positions) and
// delinearize (token indices).
class GraphBuilder {
 public:
  GraphBuilder(const std::vector<Token>& tokens, bool text_positions)
      : tokens_(tokens), text_positions_(text_positions) {}

  AmrGraph build() {
    if (tokens_.empty()) throw error_at_end("empty input");
    collect_bindings();
    std::string root = parse_node();
    if (pos_ < tokens_.size()) {
      if (tokens_[pos_].kind == TokenKind::kClose)
        throw error_at(pos_, "unbalanced parentheses: unexpected ')'");
      throw error_at(pos_, "unexpected '" + tokens_[pos_].text +
                               "' after the end of the graph");
    }
    return AmrGraph(std::move(root), std::move(nodes_), std::move(edges_),
                    std::move(attributes_));
  }

 private:
  ParseError error_at(std::size_t index, const std::string& detail) const {
    if (!text_positions_) return ParseError::at_token(detail, index);
    const Token& t = tokens_[index];
    return ParseError::at_text(detail, t.line, t.column);
  }

  ParseError error_at_end(const std::string& detail) const {
    if (!text_positions_) return ParseError::at_token(detail, tokens_.size());
    if (tokens_.empty()) return ParseError::at_text(detail, 1, 1);
    const Token& t = tokens_.back();
    return ParseError::at_text(detail, t.line, t.column + t.text.size());
  }

  const Token& expect(TokenKind kind, const char* what) {
    if (pos_ >= tokens_.size())
      throw error_at_end(std::string("unbalanced parentheses: expected ") + what +
                         " before end of input");
    if (tokens_[pos_].kind != kind)
      throw error_at(pos_, std::string("expected ") + what + ", found '" +
                               tokens_[pos_].text + "'");
    return tokens_[pos_++];
  }

  // Pre-pass so that references may precede the binding they point to.
  void collect_bindings() {
    for (std::size_t i = 0; i + 2 < tokens_.size(); ++i) {
      if (tokens_[i].kind == TokenKind::kOpen &&
          tokens_[i + 1].kind == TokenKind::kSymbol &&
          tokens_[i + 2].kind == TokenKind::kSlash) {
        const std::string& var = tokens_[i + 1].text;
        if (is_numeric_literal(var))
          throw error_at(i + 1, "number '" + var + "' cannot be a variable");
        if (!bound_.insert(var).second)
          throw error_at(i + 1, "duplicate variable definition '" + var + "'");
      }
    }
  }

  std::string parse_node() {
    expect(TokenKind::kOpen, "'('");
    const std::size_t var_index = pos_;
    if (pos_ < tokens_.size() && tokens_[pos_].kind == TokenKind::kClose)
      throw error_at(pos_, "empty node '()'");
    const std::string var = expect(TokenKind::kSymbol, "a variable").text;
    if (pos_ < tokens_.size() && tokens_[pos_].kind != TokenKind::kSlash) {
      if (!bound_.count(var))
        throw error_at(var_index, "reference to undefined variable '" + var + "'");
      throw error_at(pos_, "expected '/' after variable '" + var + "'");
    }
    expect(TokenKind::kSlash, "'/'");
    const std::string label = expect(TokenKind::kSymbol, "a concept").text;
    nodes_.push_back({var, label});

    while (pos_ < tokens_.size() && tokens_[pos_].kind == TokenKind::kRole) {
      const std::size_t role_index = pos_;
      std::string role = tokens_[pos_++].text.substr(1);
      if (role.empty()) throw error_at(role_index, "empty role label ':'");
      if (pos_ >= tokens_.size())
        throw error_at_end("role ':" + role + "' has no target");
      const Token& target = tokens_[pos_];
      switch (target.kind) {
        case TokenKind::kOpen: {
          std::string child = parse_node();
          edges_.push_back({var, std::move(role), std::move(child)});
          break;
        }
        case TokenKind::kString:
          attributes_.push_back({var, std::move(role), {unquote(target.text), true}});
          ++pos_;
          break;
        case TokenKind::kSymbol:
          if (!is_numeric_literal(target.text) && bound_.count(target.text))
            edges_.push_back({var, std::move(role), target.text});
          else
            attributes_.push_back({var, std::move(role), {target.text, false}});
          ++pos_;
          break;
        default:
          throw error_at(pos_, "role ':" + role + "' has no target");
      }
    }
    expect(TokenKind::kClose, "')'");
    return var;
  }

  const std::vector<Token>& tokens_;
  bool text_positions_;
  std::size_t pos_ = 0;
  std::unordered_set<std::string> bound_;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<Attribute> attributes_;
};

// Emits the canonical traversal either as PENMAN text or as a token list.
class Writer {
 public:
  explicit Writer(const AmrGraph& graph) : graph_(graph) {
    for (std::size_t i = 0; i < graph.edges().size(); ++i)
      edges_by_source_[graph.edges()[i].source].push_back(i);
    for (std::size_t i = 0; i < graph.attributes().size(); ++i)
      attrs_by_source_[graph.attributes()[i].source].push_back(i);
  }

  template <typename Sink>
  void write(Sink& sink) {
    visited_.clear();
    write_node(graph_.root(), 0, sink);
  }

 private:
  template <typename Sink>
  void write_node(const std::string& var, int depth, Sink& sink) {
    visited_.insert(var);
    sink.open(var, *graph_.label_of(var));
    if (auto it = attrs_by_source_.find(var); it != attrs_by_source_.end()) {
      for (std::size_t i : it->second) {
        const Attribute& a = graph_.attributes()[i];
        sink.role(a.role, depth + 1);
        sink.constant(a.value.quoted ? quote_string(a.value.text) : a.value.text);
      }
    }
    if (auto it = edges_by_source_.find(var); it != edges_by_source_.end()) {
      for (std::size_t i : it->second) {
        const Edge& e = graph_.edges()[i];
        sink.role(e.role, depth + 1);
        if (visited_.count(e.target))
          sink.constant(e.target);
        else
          write_node(e.target, depth + 1, sink);
      }
    }
    sink.close();
  }

  const AmrGraph& graph_;
  std::unordered_map<std::string, std::vector<std::size_t>> edges_by_source_;
  std::unordered_map<std::string, std::vector<std::size_t>> attrs_by_source_;
  std::unordered_set<std::string> visited_;
};

struct TextSink {
  int indent;
  std::string out;

  void open(const std::string& var, std::string_view label) {
    out += '(';
    out += var;
    out += " / ";
    out += label;
  }
  void role(const std::string& role, int depth) {
    if (indent < 0) {
      out += ' ';
    } else {
      out += '\n';
      out.append(static_cast<std::size_t>(indent * depth), ' ');
    }
    out += ':';
    out += role;
    out += ' ';
  }
  void constant(const std::string& text) { out += text; }
  void close() { out += ')'; }
};

struct TokenSink {
  std::vector<std::string> tokens;

  void open(const std::string& var, std::string_view label) {
    tokens.emplace_back("(");
    tokens.push_back(var);
    tokens.emplace_back("/");
    tokens.emplace_back(label);
  }
  void role(const std::string& role, int) { tokens.push_back(":" + role); }
  void constant(const std::string& text) { tokens.push_back(text); }
  void close() { tokens.emplace_back(")"); }
};

}  // namespace

std::string quote_string(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };

  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const std::size_t start_line = line;
    const std::size_t start_column = column;
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (c == '(' || c == ')') {
      tokens.push_back({c == '(' ? TokenKind::kOpen : TokenKind::kClose,
                        std::string(1, c), start_line, start_column});
      advance(1);
      continue;
    }
    if (c == '"') {
      std::size_t j = i + 1;
      while (j < text.size() && text[j] != '"') j += (text[j] == '\\') ? 2 : 1;
      if (j >= text.size())
        throw ParseError::at_text("unterminated string literal", start_line,
                                  start_column);
      std::string literal(text.substr(i, j - i + 1));
      tokens.push_back({TokenKind::kString, literal, start_line, start_column});
      advance(literal.size());
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !is_delimiter(text[j])) ++j;
    std::string word(text.substr(i, j - i));
    tokens.push_back({classify(word), word, start_line, start_column});
    advance(word.size());
  }
  return tokens;
}

AmrGraph parse_penman(std::string_view text) {
  const std::vector<Token> tokens = tokenize(text);
  return GraphBuilder(tokens, true).build();
}

std::string serialize_penman(const AmrGraph& graph, SerializeOptions options) {
  require_valid(graph);
  TextSink sink{options.indent, {}};
  Writer(graph).write(sink);
  return std::move(sink.out);
}

TokenSequence linearize(const AmrGraph& graph) {
  require_valid(graph);
  TokenSink sink;
  Writer(graph).write(sink);
  return TokenSequence{std::move(sink.tokens)};
}

AmrGraph delinearize(const TokenSequence& sequence) {
  std::vector<Token> tokens;
  tokens.reserve(sequence.tokens.size());
  for (std::size_t i = 0; i < sequence.tokens.size(); ++i) {
    const std::string& text = sequence.tokens[i];
    const TokenKind kind = classify(text);
    bool well_formed = !text.empty();
    if (kind == TokenKind::kString) {
      well_formed = text.size() >= 2 && text.back() == '"';
    } else if (kind == TokenKind::kSymbol || kind == TokenKind::kRole) {
      for (char c : text) well_formed = well_formed && !is_delimiter(c);
    }
    if (!well_formed)
      throw ParseError::at_token("malformed token '" + text + "'", i);
    tokens.push_back({kind, text, 0, 0});
  }
  return GraphBuilder(tokens, false).build();
}

}  // namespace amrkit
