#pragma once

#include <stdexcept>
#include <string>

namespace sturmkit {

/// Malformed potential spec or expression text. `position` is a byte offset
/// into the offending text, or npos when the error is structural.
class SpecError : public std::runtime_error {
 public:
  SpecError(const std::string& what, std::size_t position = std::string::npos)
      : std::runtime_error(what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Argument outside an operation's domain (e.g. ε ∉ (0, 1), t ∉ [a, b]).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical failure: step-size underflow, search cap exceeded, lost zero.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computed result contradicts a theorem the code relies on.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace sturmkit
