#pragma once

// Reference implementations used to check the library. They follow the
// formal definitions directly and share no code with the code under test
// beyond the plain data types.

#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "pddlval/ast.hpp"
#include "pddlval/ground.hpp"

namespace pddlval::testing {

using Rng = std::mt19937_64;
using Facts = std::set<FactId>;

// ---- ground formulas ----

std::optional<Rational> oracle_value(const GroundExpr& expr, const NumericState& values);
/// nullopt when some numeric subterm is undefined.
std::optional<bool> oracle_holds(const GroundFormula& formula, const Facts& state,
                                 const NumericState& values = {});

// ---- Eq. 1 ----

struct RuleSystem {
  std::size_t fact_count = 0;
  std::vector<bool> derived;  // per fact
  std::vector<GroundRule> rules;
  FactSet basic;              // a basic state to close
};

/// Up to `max_facts` facts, at least one of them derived; bodies are random
/// and/or trees whose negations only touch basic facts (restriction 3).
RuleSystem random_rule_system(Rng& rng, std::size_t max_facts = 16);

/// Intersection of every rule-closed set s' = s u X, X ranging over all
/// subsets of the derived facts.
Facts eq1_closure(const RuleSystem& system);

/// Facts with a path of length >= 1 into `targets` in the graph whose edges
/// run from each body fact of a rule to its head.
Facts reverse_reachable(const std::vector<GroundRule>& rules, const Facts& targets);

// ---- Eq. 2 ----

struct SetSummary {
  Facts pre;   // facts in precondition and effect conditions
  Facts add;
  Facts del;
  std::set<FluentId> lhs;
  std::set<FluentId> rhs;
  std::set<FluentId> additive;  // only increased/decreased
};

SetSummary summarize(const GroundAction& action);

/// Eq. 6 over summaries; `dpre` supplies the derived-precondition sets.
bool oracle_mutex(const GroundAction& a, const Facts& dpre_a, const GroundAction& b,
                  const Facts& dpre_b);

struct Eq2Outcome {
  enum class Kind { kOk, kPreconditionFalse, kMutex, kUndefined } kind = Kind::kOk;
  Facts facts;
  NumericState values;
};

/// Classic happening execution (Def. 13 with Eq. 2) for derived-free tasks.
Eq2Outcome eq2_execute(const Facts& state, const NumericState& values,
                       const std::vector<const GroundAction*>& actions);

/// A derived-free ground task with random STRIPS/ADL actions and additive or
/// assigning numeric effects.
GroundTask random_strips_task(Rng& rng, std::size_t facts, std::size_t fluents, std::size_t actions);

// ---- lifted formulas ----

/// Random closed formula over predicates p/1, q/2, r/0 and objects {a, b, c},
/// using every connective including imply, quantifiers and equality.
Formula random_formula(Rng& rng, int depth);

/// Random set of ground atoms over the same vocabulary, as "(p a)" strings.
std::set<std::string> random_world(Rng& rng);

/// Tarski semantics over the object universe {a, b, c}.
bool oracle_satisfies(const Formula& formula, const std::set<std::string>& world,
                      std::map<std::string, std::string>& binding);

const std::vector<std::string>& formula_objects();

}  // namespace pddlval::testing
