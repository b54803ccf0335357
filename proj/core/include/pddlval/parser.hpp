#pragma once

#include <span>
#include <string>
#include <string_view>

#include "pddlval/ast.hpp"
#include "pddlval/lexer.hpp"

namespace pddlval {

/// Recursive-descent parse of a `(define (domain ...))` form covering STRIPS,
/// ADL, numeric fluents, durative actions and `:derived` rules.
/// Throws SyntaxError (with location) or SemanticError.
DomainAst parse_domain(std::span<const Token> tokens);

/// Parses a problem against an already parsed domain. Timed initial
/// literals are split off the `:init` block and sorted by time.
ProblemAst parse_problem(std::span<const Token> tokens, const DomainAst& domain);

/// Parses an IPC-style plan, one step per line:
///   [<time>:] (<action> <arg>*) [[<duration>]]
/// When no step carries a time, step i (1-based) is placed at time i.
PlanFile parse_plan(std::string_view text, const DomainAst& domain, const ProblemAst& problem);

inline DomainAst parse_domain(std::string_view text) { return parse_domain(tokenize(text)); }
inline ProblemAst parse_problem(std::string_view text, const DomainAst& domain) {
  return parse_problem(tokenize(text), domain);
}

/// Canonical PDDL text; parsing the output yields an equal AST.
std::string print_domain(const DomainAst& domain);
std::string print_problem(const ProblemAst& problem);
std::string print_formula(const Formula& formula);
std::string print_expr(const Expr& expr);
std::string print_atom(const Atom& atom);

}  // namespace pddlval
