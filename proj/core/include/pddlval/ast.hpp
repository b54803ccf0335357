#pragma once

#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "pddlval/rational.hpp"

// Lifted syntax trees for PDDL2.2 domains, problems and plans. Every name is
// lowercase and every number is an exact Rational.

namespace pddlval {

/// A name with its declared type alternatives; `(either a b)` yields two
/// entries, an untyped name gets {"object"}.
struct TypedName {
  std::string name;
  std::vector<std::string> types;

  friend bool operator==(const TypedName&, const TypedName&) = default;
};

/// Predicate applied to terms. A term is a variable when it starts with '?'.
struct Atom {
  std::string predicate;
  std::vector<std::string> args;

  friend bool operator==(const Atom&, const Atom&) = default;
};

inline bool is_variable(const std::string& term) { return !term.empty() && term[0] == '?'; }

struct Expr {
  enum class Kind { kNumber, kFluent, kAdd, kSub, kMul, kDiv, kNeg, kDuration, kTotalTime };

  Kind kind = Kind::kNumber;
  Rational value;          // kNumber
  Atom fluent;             // kFluent
  std::vector<Expr> args;  // arithmetic operands

  static Expr number(Rational v);
  static Expr function(Atom a);
  static Expr op(Kind k, std::vector<Expr> operands);

  friend bool operator==(const Expr&, const Expr&) = default;
};

enum class CompareOp { kLess, kLessEq, kEq, kGreaterEq, kGreater };

struct Formula {
  enum class Kind { kAnd, kOr, kNot, kImply, kExists, kForall, kAtom, kEquals, kCompare };

  Kind kind = Kind::kAnd;
  std::vector<Formula> children;     // kAnd/kOr (n-ary), kNot (1), kImply (2), quantifiers (1)
  std::vector<TypedName> variables;  // quantifiers
  Atom atom;                         // kAtom; kEquals uses atom.args[0], atom.args[1]
  CompareOp op = CompareOp::kEq;     // kCompare
  std::vector<Expr> operands;        // kCompare: lhs, rhs

  static Formula truth() { return {}; }
  static Formula make_atom(Atom a);
  static Formula make_not(Formula f);
  static Formula junction(Kind k, std::vector<Formula> parts);
  static Formula quantified(Kind k, std::vector<TypedName> vars, Formula body);

  bool is_true() const { return kind == Kind::kAnd && children.empty(); }

  friend bool operator==(const Formula&, const Formula&) = default;
};

enum class AssignOp { kAssign, kIncrease, kDecrease, kScaleUp, kScaleDown };

struct Effect {
  enum class Kind { kAnd, kForall, kWhen, kAdd, kDelete, kNumeric };

  Kind kind = Kind::kAnd;
  std::vector<Effect> children;      // kAnd; kForall/kWhen hold one child
  std::vector<TypedName> variables;  // kForall
  Formula condition;                 // kWhen
  Atom atom;                         // kAdd/kDelete; kNumeric: the fluent
  AssignOp op = AssignOp::kAssign;   // kNumeric
  Expr value;                        // kNumeric

  bool is_empty() const { return kind == Kind::kAnd && children.empty(); }

  friend bool operator==(const Effect&, const Effect&) = default;
};

struct ActionDef {
  std::string name;
  std::vector<TypedName> parameters;
  Formula precondition;
  Effect effect;

  friend bool operator==(const ActionDef&, const ActionDef&) = default;
};

struct DurativeActionDef {
  std::string name;
  std::vector<TypedName> parameters;
  Expr duration;  // right-hand side of (= ?duration expr)
  Formula at_start;
  Formula over_all;
  Formula at_end;
  Effect start_effect;
  Effect end_effect;

  friend bool operator==(const DurativeActionDef&, const DurativeActionDef&) = default;
};

struct DerivedDef {
  Atom head;  // arguments are variables
  std::vector<TypedName> head_types;  // one entry per head argument
  Formula body;

  friend bool operator==(const DerivedDef&, const DerivedDef&) = default;
};

using Structure = std::variant<ActionDef, DurativeActionDef, DerivedDef>;

struct PredicateDecl {
  std::string name;
  std::vector<TypedName> parameters;

  friend bool operator==(const PredicateDecl&, const PredicateDecl&) = default;
};

struct TypeDecl {
  std::string name;
  std::string parent;

  friend bool operator==(const TypeDecl&, const TypeDecl&) = default;
};

struct DomainAst {
  std::string name;
  std::set<std::string> requirements;  // flags without the leading ':'
  std::vector<TypeDecl> types;
  std::vector<TypedName> constants;
  std::vector<PredicateDecl> predicates;
  std::vector<PredicateDecl> functions;
  std::vector<Structure> structures;

  bool has_requirement(const std::string& flag) const { return requirements.count(flag) > 0; }
  const PredicateDecl* find_predicate(const std::string& name) const;
  const PredicateDecl* find_function(const std::string& name) const;

  friend bool operator==(const DomainAst&, const DomainAst&) = default;
};

struct TimedLiteral {
  Rational time;
  Atom atom;
  bool positive = true;

  friend bool operator==(const TimedLiteral&, const TimedLiteral&) = default;
};

struct NumericInit {
  Atom fluent;
  Rational value;

  friend bool operator==(const NumericInit&, const NumericInit&) = default;
};

struct Metric {
  bool minimize = true;
  Expr expression;

  friend bool operator==(const Metric&, const Metric&) = default;
};

struct ProblemAst {
  std::string name;
  std::string domain_name;
  std::set<std::string> requirements;
  std::vector<TypedName> objects;
  std::vector<Atom> init;
  std::vector<NumericInit> numeric_init;
  std::vector<TimedLiteral> timed_literals;  // sorted by time, stable
  Formula goal;
  std::optional<Metric> metric;

  friend bool operator==(const ProblemAst&, const ProblemAst&) = default;
};

struct PlanStep {
  Rational time;
  bool explicit_time = false;
  std::string action;
  std::vector<std::string> args;
  std::optional<Rational> duration;
  int line = 0;

  friend bool operator==(const PlanStep&, const PlanStep&) = default;
};

struct PlanFile {
  std::vector<PlanStep> steps;

  friend bool operator==(const PlanFile&, const PlanFile&) = default;
};

}  // namespace pddlval
