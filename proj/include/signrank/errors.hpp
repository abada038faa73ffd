#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace signrank {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition on values violated (division by zero, bad field, shape).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A bounded search ran out of its node or size budget.
class ResourceExhausted : public Error {
 public:
  using Error::Error;
};

class NotFound : public Error {
 public:
  using Error::Error;
};

/// Malformed input text. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class VerticalHyperplane : public Error {
 public:
  explicit VerticalHyperplane(std::size_t index)
      : Error("hyperplane " + std::to_string(index + 1) +
              " is vertical; rotate the configuration first"),
        index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class RankMismatch : public Error {
 public:
  using Error::Error;
};

class NumericalDegeneracy : public Error {
 public:
  using Error::Error;
};

class SingularSystem : public Error {
 public:
  using Error::Error;
};

/// A column (or row, for the row-wise variant) carries more zeros than the
/// rank allows to solve for exactly. `column` is 0-based; the message uses
/// 1-based numbering.
class Overdetermined : public Error {
 public:
  Overdetermined(std::size_t column, std::size_t zeros, std::size_t limit, bool row = false)
      : Error(std::string("Overdetermined: ") + (row ? "row " : "column ") + std::to_string(column + 1) + " has " +
              std::to_string(zeros) + " zeros > r-1 = " + std::to_string(limit)),
        column_(column),
        zeros_(zeros),
        limit_(limit) {}
  std::size_t column() const noexcept { return column_; }
  std::size_t zeros() const noexcept { return zeros_; }
  std::size_t limit() const noexcept { return limit_; }

 private:
  std::size_t column_;
  std::size_t zeros_;
  std::size_t limit_;
};

class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

class FixtureCorrupt : public Error {
 public:
  using Error::Error;
};

}  // namespace signrank
