#pragma once

#include <set>
#include <string>
#include <vector>

#include "pddlval/ast.hpp"

namespace pddlval {

/// Predicates split by whether some `:derived` rule has them as its head.
struct PredicateClasses {
  std::set<std::string> basic;
  std::set<std::string> derived;

  bool is_derived(const std::string& predicate) const { return derived.count(predicate) > 0; }
};

struct RestrictionViolation {
  int restriction = 0;  // 1, 2 or 3
  std::string where;    // action or rule the violation occurs in
  std::string atom;     // offending atom or variable
  std::string message;

  friend bool operator==(const RestrictionViolation&, const RestrictionViolation&) = default;
};

/// Throws RestrictionError(1) if any action or durative action effect
/// mentions a derived predicate.
PredicateClasses classify_predicates(const DomainAst& domain);

/// Restrictions 2 and 3 for every rule: head variables pairwise distinct
/// and equal to the body's free variables; no derived atom negated in the
/// body's NNF.
std::vector<RestrictionViolation> validate_rules(const DomainAst& domain);

/// All three restrictions, collected without throwing.
std::vector<RestrictionViolation> lint_domain(const DomainAst& domain);

/// Throws RestrictionError for the first entry of lint_domain, if any.
void check_restrictions(const DomainAst& domain);

/// Free variables of a formula, in order of first occurrence.
std::vector<std::string> free_variables(const Formula& formula);

}  // namespace pddlval
