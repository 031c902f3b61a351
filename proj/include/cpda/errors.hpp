#pragma once

#include <stdexcept>
#include <string>

namespace cpda {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidModulus : public Error {
 public:
  using Error::Error;
};

class InvalidRange : public Error {
 public:
  using Error::Error;
};

/// A system parameter is outside its domain. The message names the bound.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A construction was asked to build outside the case it covers.
class WrongCaseError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed. Always a bug.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// Row indices carry no subfile component, or dimensions disagree.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// line and column are 1-based; 0 when the position is unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(line > 0 ? "line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + what
                       : what),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// Exhaustive search refused to run or ran past its effort budget.
class ResourceGuardError : public Error {
 public:
  using Error::Error;
};

class DecodeError : public Error {
 public:
  DecodeError(const std::string& what, int row, int symbol)
      : Error(what), row_(row), symbol_(symbol) {}

  int row() const noexcept { return row_; }
  /// 0 when the failing row is a star (cache retrieval) cell.
  int symbol() const noexcept { return symbol_; }

 private:
  int row_;
  int symbol_;
};

}  // namespace cpda
