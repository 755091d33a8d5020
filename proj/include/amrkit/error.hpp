#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace amrkit {

// Base of every error thrown by the library. The C API maps the concrete
// subclasses onto amrkit_status codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed PENMAN text or token sequence. Text errors carry a 1-based
// line/column (token_index is npos); token-sequence errors carry the 0-based
// token index (line and column are 0).
class ParseError : public Error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  static ParseError at_text(const std::string& detail, std::size_t line,
                            std::size_t column) {
    return ParseError("line " + std::to_string(line) + ", column " +
                          std::to_string(column) + ": " + detail,
                      detail, line, column, npos);
  }
  static ParseError at_token(const std::string& detail, std::size_t index) {
    return ParseError("token " + std::to_string(index) + ": " + detail, detail,
                      0, 0, index);
  }

  const std::string& detail() const { return detail_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  std::size_t token_index() const { return token_index_; }

 private:
  ParseError(const std::string& what, std::string detail, std::size_t line,
             std::size_t column, std::size_t token_index)
      : Error(what),
        detail_(std::move(detail)),
        line_(line),
        column_(column),
        token_index_(token_index) {}

  std::string detail_;
  std::size_t line_;
  std::size_t column_;
  std::size_t token_index_;
};

class InvalidGraphError : public Error {
 public:
  using Error::Error;
};

// Bad argument values: ratio parts of zero, sizes that do not sum, etc.
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

// Two corpora that should cover the same document ids do not.
class MismatchError : public Error {
 public:
  using Error::Error;
};

class CapExceededError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace amrkit
