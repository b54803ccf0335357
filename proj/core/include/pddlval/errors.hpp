#pragma once

#include <stdexcept>
#include <string>

namespace pddlval {

/// Base of every input-related error: malformed text, semantic problems in
/// domain/problem/plan files, or violated derived-predicate restrictions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lexical or grammatical error with a 1-based source location.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, int line, int column);

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& bare_message() const { return bare_; }

 private:
  std::string bare_;
  int line_;
  int column_;
};

/// Well-formed input that is nonetheless meaningless: undeclared names,
/// arity or type mismatches, timed literals at time <= 0, and the like.
class SemanticError : public Error {
 public:
  using Error::Error;
};

/// One of the three derived-predicate restrictions is violated.
class RestrictionError : public Error {
 public:
  RestrictionError(int restriction, const std::string& message);

  int restriction() const { return restriction_; }

 private:
  int restriction_;
};

}  // namespace pddlval
