#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace z2rank {

// Shape, symmetry or pattern violations of an operation's input.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Arguments outside the range where a formula is defined (m < 2, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Exhaustive search refused because the instance exceeds the configured size.
class CapacityError : public std::length_error {
 public:
  CapacityError(const std::string& what, std::size_t requested, std::size_t limit)
      : std::length_error(what), requested_(requested), limit_(limit) {}

  std::size_t requested() const noexcept { return requested_; }
  std::size_t limit() const noexcept { return limit_; }

 private:
  std::size_t requested_;
  std::size_t limit_;
};

// Text input that does not follow one of the file formats. Line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what + " (line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace z2rank
