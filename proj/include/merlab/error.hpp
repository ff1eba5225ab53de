#ifndef MERLAB_ERROR_HPP
#define MERLAB_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace merlab {

// Root of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : Error(format(msg, line, column)), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(const std::string& msg, std::size_t line, std::size_t column) {
    if (line == 0) return msg;
    return std::to_string(line) + ":" + std::to_string(column) + ": " + msg;
  }
  std::size_t line_;
  std::size_t column_;
};

// Unknown names, arity mismatches and ill-sorted terms.
class SortError : public Error {
 public:
  using Error::Error;
};

// Values that violate a documented precondition or invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Raised instead of silently truncating any exhaustive computation.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace merlab

#endif  // MERLAB_ERROR_HPP
