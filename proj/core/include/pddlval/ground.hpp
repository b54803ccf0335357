#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/container/flat_set.hpp>

#include "pddlval/ast.hpp"
#include "pddlval/dependency_graph.hpp"
#include "pddlval/rational.hpp"

namespace pddlval {

using FluentId = std::uint32_t;
using FluentSet = boost::container::flat_set<FluentId>;

/// Fluent values indexed by FluentId; nullopt until first assigned.
using NumericState = std::vector<std::optional<Rational>>;

/// Interned ground facts. Ids are dense and stable.
class FactTable {
 public:
  FactId intern(const std::string& predicate, const std::vector<std::string>& args, bool derived);
  std::optional<FactId> find(const std::string& predicate, const std::vector<std::string>& args) const;

  std::size_t size() const { return names_.size(); }
  const std::string& name(FactId id) const { return names_.at(id); }
  const std::string& predicate(FactId id) const { return predicates_.at(id); }
  bool is_derived(FactId id) const { return derived_.at(id); }

 private:
  std::map<std::string, FactId> index_;
  std::vector<std::string> names_;
  std::vector<std::string> predicates_;
  std::vector<bool> derived_;
};

/// Interned ground numeric fluents.
class FluentTable {
 public:
  FluentId intern(const std::string& function, const std::vector<std::string>& args);
  std::optional<FluentId> find(const std::string& function, const std::vector<std::string>& args) const;

  std::size_t size() const { return names_.size(); }
  const std::string& name(FluentId id) const { return names_.at(id); }

 private:
  std::map<std::string, FluentId> index_;
  std::vector<std::string> names_;
};

struct GroundExpr {
  enum class Kind { kNumber, kFluent, kAdd, kSub, kMul, kDiv, kNeg, kDuration, kTotalTime };

  Kind kind = Kind::kNumber;
  Rational value;
  FluentId fluent = 0;
  std::vector<GroundExpr> args;

  static GroundExpr number(Rational v);
  static GroundExpr of_fluent(FluentId id);
};

/// Variable-free formula in negation normal form.
struct GroundFormula {
  enum class Kind { kTrue, kFalse, kAnd, kOr, kFact, kNotFact, kCompare, kNotCompare };

  Kind kind = Kind::kTrue;
  FactId fact = 0;
  CompareOp op = CompareOp::kEq;
  std::vector<GroundExpr> operands;  // kCompare/kNotCompare: lhs, rhs
  std::vector<GroundFormula> children;

  static GroundFormula truth() { return {}; }
  static GroundFormula falsity();
  static GroundFormula literal(FactId f, bool positive = true);
  static GroundFormula junction(Kind k, std::vector<GroundFormula> parts);
  static GroundFormula compare(CompareOp op, GroundExpr lhs, GroundExpr rhs, bool positive = true);
};

/// Every fact occurring in the formula, negated or not.
void collect_facts(const GroundFormula& formula, FactSet& out);
/// Every fluent occurring in the formula's numeric comparisons.
void collect_fluents(const GroundFormula& formula, FluentSet& out);
void collect_fluents(const GroundExpr& expr, FluentSet& out);

struct NumericEffect {
  AssignOp op = AssignOp::kAssign;
  FluentId target = 0;
  GroundExpr value;
};

/// One `when` branch after forall expansion; unconditional effects carry a
/// TRUE condition.
struct ConditionalEffect {
  GroundFormula condition;
  std::vector<FactId> add;
  std::vector<FactId> del;
  std::vector<NumericEffect> numeric;
};

enum class ActionOrigin { kInstantaneous, kStart, kEnd, kInvariant, kTimedLiteral };

std::string_view to_string(ActionOrigin origin);

struct GroundAction {
  std::string name;  // e.g. "(move a b)"
  ActionOrigin origin = ActionOrigin::kInstantaneous;
  GroundFormula precondition;
  std::vector<ConditionalEffect> effects;

  // Interference sets used by the mutex test.
  FactSet gpre;   // facts in the precondition and in effect conditions
  FactSet dpre;   // facts with a dependency path into gpre
  FactSet add;    // possible adds over all effect branches
  FactSet del;    // possible deletes over all effect branches
  FluentSet lhs;  // L: assigned fluents
  FluentSet rhs;  // R: fluents read by effects or conditions
  FluentSet additive_lhs;  // L*: fluents only changed by increase/decrease
};

/// Fills gpre, add, del, lhs, rhs and additive_lhs from precondition and effects.
void compute_interference_sets(GroundAction& action);

struct GroundDurativeAction {
  std::string name;
  GroundExpr duration;  // value required of the plan's stated duration
  GroundAction start;
  GroundAction end;
  GroundAction invariant;  // precondition = over-all condition, no effects
};

struct GroundRule {
  FactId head = 0;
  GroundFormula body;
};

struct GroundTimedLiteral {
  Rational time;
  FactId fact = 0;
  bool positive = true;
  GroundAction action;  // precondition TRUE, single literal effect
};

struct GroundMetric {
  bool minimize = true;
  GroundExpr expression;
};

/// Fully instantiated planning task.
struct GroundTask {
  std::vector<std::string> objects;
  FactTable facts;
  FluentTable fluents;

  std::vector<GroundAction> actions;
  std::map<std::string, std::size_t> action_index;
  std::vector<GroundDurativeAction> durative_actions;
  std::map<std::string, std::size_t> durative_index;

  std::vector<GroundRule> rules;
  DependencyGraph graph;

  FactSet init;
  NumericState init_values;
  std::vector<GroundTimedLiteral> timed_literals;
  GroundFormula goal;
  std::optional<GroundMetric> metric;

  const GroundAction* find_action(const std::string& signature) const;
  const GroundDurativeAction* find_durative(const std::string& signature) const;
};

/// "(name a b)" style signature used to look up ground actions.
std::string signature(const std::string& name, const std::vector<std::string>& args);

/// Instantiates every action, durative action (split into start, end and
/// invariant parts) and rule over type-respecting object tuples, expanding
/// quantifiers over the declared objects. Rule and action formulas are
/// converted to NNF first. Throws RestrictionError when the domain breaks
/// a derived-predicate restriction.
GroundTask ground(const DomainAst& domain, const ProblemAst& problem);

/// Builds the synthetic action for a timed initial literal.
GroundAction make_timed_literal_action(const std::string& name, FactId fact, bool positive);

/// Line-oriented listing of facts, fluents, rules and actions for diffing.
std::string dump_ground_task(const GroundTask& task);

std::string describe(const GroundFormula& formula, const FactTable& facts, const FluentTable& fluents);
std::string describe(const GroundExpr& expr, const FluentTable& fluents);

}  // namespace pddlval
