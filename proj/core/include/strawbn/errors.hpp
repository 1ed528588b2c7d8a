#pragma once

#include <stdexcept>
#include <string>

namespace strawbn {

/// Base class for all errors thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Unknown variable or state name.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// Graph-level defects that make an operation impossible (e.g. a cycle
/// encountered while ordering variables).
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Misuse of factor algebra: variable not in scope, cardinality mismatch
/// between operands, or a state index out of range.
class FactorError : public Error {
 public:
  using Error::Error;
};

/// Inference cannot produce an answer, e.g. conditioning on evidence of
/// probability zero, or a state space above the enumeration cap.
class InferenceError : public Error {
 public:
  using Error::Error;
};

/// Straw-model construction or scoring rejected its input: missing roles,
/// target-configuration cap exceeded, findings on non-Evidence variables.
class StrawError : public Error {
 public:
  using Error::Error;
};

/// Syntax or semantic error in a network or findings document. Carries the
/// 1-based line where the problem was detected (0 when not localizable).
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace strawbn
