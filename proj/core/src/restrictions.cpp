#include "pddlval/restrictions.hpp"

#include <algorithm>
#include <functional>

#include "pddlval/errors.hpp"
#include "pddlval/nnf.hpp"
#include "pddlval/parser.hpp"

namespace pddlval {

namespace {

void collect_effect_atoms(const Effect& e, std::vector<const Atom*>& out) {
  switch (e.kind) {
    case Effect::Kind::kAdd:
    case Effect::Kind::kDelete:
      out.push_back(&e.atom);
      return;
    case Effect::Kind::kNumeric:
      return;
    default:
      for (const auto& c : e.children) collect_effect_atoms(c, out);
  }
}

std::set<std::string> derived_heads(const DomainAst& domain) {
  std::set<std::string> heads;
  for (const Structure& s : domain.structures) {
    if (const auto* d = std::get_if<DerivedDef>(&s)) heads.insert(d->head.predicate);
  }
  return heads;
}

std::vector<RestrictionViolation> restriction_one(const DomainAst& domain,
                                                  const std::set<std::string>& derived) {
  std::vector<RestrictionViolation> out;
  auto scan = [&](const std::string& where, const Effect& effect) {
    std::vector<const Atom*> atoms;
    collect_effect_atoms(effect, atoms);
    for (const Atom* a : atoms) {
      if (derived.count(a->predicate)) {
        out.push_back({1, where, print_atom(*a),
                       "effect of '" + where + "' changes derived predicate " + print_atom(*a)});
      }
    }
  };
  for (const Structure& s : domain.structures) {
    if (const auto* a = std::get_if<ActionDef>(&s)) scan(a->name, a->effect);
    if (const auto* d = std::get_if<DurativeActionDef>(&s)) {
      scan(d->name, d->start_effect);
      scan(d->name, d->end_effect);
    }
  }
  return out;
}

void free_vars(const Formula& f, std::vector<std::string>& bound, std::vector<std::string>& out) {
  auto note = [&](const std::string& term) {
    if (!is_variable(term)) return;
    if (std::find(bound.begin(), bound.end(), term) != bound.end()) return;
    if (std::find(out.begin(), out.end(), term) == out.end()) out.push_back(term);
  };
  std::function<void(const Expr&)> expr_vars = [&](const Expr& e) {
    if (e.kind == Expr::Kind::kFluent) {
      for (const auto& a : e.fluent.args) note(a);
    }
    for (const auto& a : e.args) expr_vars(a);
  };
  switch (f.kind) {
    case Formula::Kind::kAtom:
    case Formula::Kind::kEquals:
      for (const auto& a : f.atom.args) note(a);
      return;
    case Formula::Kind::kCompare:
      for (const auto& e : f.operands) expr_vars(e);
      return;
    case Formula::Kind::kExists:
    case Formula::Kind::kForall: {
      for (const auto& v : f.variables) bound.push_back(v.name);
      free_vars(f.children.front(), bound, out);
      bound.resize(bound.size() - f.variables.size());
      return;
    }
    default:
      for (const auto& c : f.children) free_vars(c, bound, out);
  }
}

void negated_derived(const Formula& nnf, const std::set<std::string>& derived,
                     std::vector<const Atom*>& out) {
  if (nnf.kind == Formula::Kind::kNot) {
    const Formula& inner = nnf.children.front();
    if (inner.kind == Formula::Kind::kAtom && derived.count(inner.atom.predicate)) {
      out.push_back(&inner.atom);
    }
    return;
  }
  for (const auto& c : nnf.children) negated_derived(c, derived, out);
}

}  // namespace

std::vector<std::string> free_variables(const Formula& formula) {
  std::vector<std::string> bound;
  std::vector<std::string> out;
  free_vars(formula, bound, out);
  return out;
}

PredicateClasses classify_predicates(const DomainAst& domain) {
  PredicateClasses classes;
  classes.derived = derived_heads(domain);
  for (const auto& p : domain.predicates) {
    if (!classes.derived.count(p.name)) classes.basic.insert(p.name);
  }
  const auto violations = restriction_one(domain, classes.derived);
  if (!violations.empty()) throw RestrictionError(1, violations.front().message);
  return classes;
}

std::vector<RestrictionViolation> validate_rules(const DomainAst& domain) {
  const std::set<std::string> derived = derived_heads(domain);
  std::vector<RestrictionViolation> out;
  for (const Structure& s : domain.structures) {
    const auto* rule = std::get_if<DerivedDef>(&s);
    if (rule == nullptr) continue;
    const std::string where = print_atom(rule->head);

    std::set<std::string> seen;
    for (const auto& v : rule->head.args) {
      if (!seen.insert(v).second) {
        out.push_back({2, where, v, "rule head " + where + " repeats variable " + v});
      }
    }
    const std::vector<std::string> body_vars = free_variables(rule->body);
    for (const auto& v : body_vars) {
      if (!seen.count(v)) {
        out.push_back({2, where, v, "rule body of " + where + " has free variable " + v +
                                        " not in the head"});
      }
    }
    for (const auto& v : seen) {
      if (std::find(body_vars.begin(), body_vars.end(), v) == body_vars.end()) {
        out.push_back({2, where, v, "head variable " + v + " of " + where +
                                        " is not free in the rule body"});
      }
    }

    const Formula nnf = to_nnf(rule->body);
    std::vector<const Atom*> negated;
    negated_derived(nnf, derived, negated);
    for (const Atom* a : negated) {
      out.push_back({3, where, print_atom(*a),
                     "rule body of " + where + " contains derived atom " + print_atom(*a) +
                         " in negated form"});
    }
  }
  return out;
}

std::vector<RestrictionViolation> lint_domain(const DomainAst& domain) {
  std::vector<RestrictionViolation> out = restriction_one(domain, derived_heads(domain));
  for (auto& v : validate_rules(domain)) out.push_back(std::move(v));
  return out;
}

void check_restrictions(const DomainAst& domain) {
  const auto violations = lint_domain(domain);
  if (!violations.empty()) {
    throw RestrictionError(violations.front().restriction, violations.front().message);
  }
}

}  // namespace pddlval
