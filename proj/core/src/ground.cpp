#include "pddlval/ground.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "pddlval/errors.hpp"
#include "pddlval/nnf.hpp"
#include "pddlval/parser.hpp"
#include "pddlval/restrictions.hpp"
#include "pddlval/types.hpp"

namespace pddlval {

std::string signature(const std::string& name, const std::vector<std::string>& args) {
  std::string out = "(" + name;
  for (const auto& a : args) out += " " + a;
  return out + ")";
}

FactId FactTable::intern(const std::string& predicate, const std::vector<std::string>& args,
                         bool derived) {
  std::string key = signature(predicate, args);
  auto [it, inserted] = index_.try_emplace(key, static_cast<FactId>(names_.size()));
  if (inserted) {
    names_.push_back(std::move(key));
    predicates_.push_back(predicate);
    derived_.push_back(derived);
  }
  return it->second;
}

std::optional<FactId> FactTable::find(const std::string& predicate,
                                      const std::vector<std::string>& args) const {
  auto it = index_.find(signature(predicate, args));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

FluentId FluentTable::intern(const std::string& function, const std::vector<std::string>& args) {
  std::string key = signature(function, args);
  auto [it, inserted] = index_.try_emplace(key, static_cast<FluentId>(names_.size()));
  if (inserted) names_.push_back(std::move(key));
  return it->second;
}

std::optional<FluentId> FluentTable::find(const std::string& function,
                                          const std::vector<std::string>& args) const {
  auto it = index_.find(signature(function, args));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

GroundExpr GroundExpr::number(Rational v) {
  GroundExpr e;
  e.value = std::move(v);
  return e;
}

GroundExpr GroundExpr::of_fluent(FluentId id) {
  GroundExpr e;
  e.kind = Kind::kFluent;
  e.fluent = id;
  return e;
}

GroundFormula GroundFormula::falsity() {
  GroundFormula f;
  f.kind = Kind::kFalse;
  return f;
}

GroundFormula GroundFormula::literal(FactId fact, bool positive) {
  GroundFormula f;
  f.kind = positive ? Kind::kFact : Kind::kNotFact;
  f.fact = fact;
  return f;
}

GroundFormula GroundFormula::junction(Kind k, std::vector<GroundFormula> parts) {
  GroundFormula f;
  f.kind = k;
  f.children = std::move(parts);
  return f;
}

GroundFormula GroundFormula::compare(CompareOp op, GroundExpr lhs, GroundExpr rhs, bool positive) {
  GroundFormula f;
  f.kind = positive ? Kind::kCompare : Kind::kNotCompare;
  f.op = op;
  f.operands.push_back(std::move(lhs));
  f.operands.push_back(std::move(rhs));
  return f;
}

void collect_facts(const GroundFormula& formula, FactSet& out) {
  using K = GroundFormula::Kind;
  if (formula.kind == K::kFact || formula.kind == K::kNotFact) out.insert(formula.fact);
  for (const auto& c : formula.children) collect_facts(c, out);
}

void collect_fluents(const GroundExpr& expr, FluentSet& out) {
  if (expr.kind == GroundExpr::Kind::kFluent) out.insert(expr.fluent);
  for (const auto& a : expr.args) collect_fluents(a, out);
}

void collect_fluents(const GroundFormula& formula, FluentSet& out) {
  for (const auto& e : formula.operands) collect_fluents(e, out);
  for (const auto& c : formula.children) collect_fluents(c, out);
}

std::string_view to_string(ActionOrigin origin) {
  switch (origin) {
    case ActionOrigin::kInstantaneous: return "instantaneous";
    case ActionOrigin::kStart: return "start";
    case ActionOrigin::kEnd: return "end";
    case ActionOrigin::kInvariant: return "invariant";
    case ActionOrigin::kTimedLiteral: return "timed-literal";
  }
  return "instantaneous";
}

void compute_interference_sets(GroundAction& action) {
  action.gpre.clear();
  action.add.clear();
  action.del.clear();
  action.lhs.clear();
  action.rhs.clear();
  action.additive_lhs.clear();
  collect_facts(action.precondition, action.gpre);
  collect_fluents(action.precondition, action.rhs);
  FluentSet non_additive;
  for (const ConditionalEffect& e : action.effects) {
    collect_facts(e.condition, action.gpre);
    collect_fluents(e.condition, action.rhs);
    action.add.insert(e.add.begin(), e.add.end());
    action.del.insert(e.del.begin(), e.del.end());
    for (const NumericEffect& n : e.numeric) {
      action.lhs.insert(n.target);
      collect_fluents(n.value, action.rhs);
      if (n.op == AssignOp::kIncrease || n.op == AssignOp::kDecrease) {
        action.additive_lhs.insert(n.target);
      } else {
        non_additive.insert(n.target);
      }
    }
  }
  for (FluentId f : non_additive) action.additive_lhs.erase(f);
}

GroundAction make_timed_literal_action(const std::string& name, FactId fact, bool positive) {
  GroundAction a;
  a.name = name;
  a.origin = ActionOrigin::kTimedLiteral;
  ConditionalEffect e;
  (positive ? e.add : e.del).push_back(fact);
  a.effects.push_back(std::move(e));
  compute_interference_sets(a);
  return a;
}

const GroundAction* GroundTask::find_action(const std::string& sig) const {
  auto it = action_index.find(sig);
  return it == action_index.end() ? nullptr : &actions[it->second];
}

const GroundDurativeAction* GroundTask::find_durative(const std::string& sig) const {
  auto it = durative_index.find(sig);
  return it == durative_index.end() ? nullptr : &durative_actions[it->second];
}

namespace {

class Grounder {
 public:
  Grounder(const DomainAst& domain, const ProblemAst& problem, GroundTask& task)
      : domain_(domain), hierarchy_(domain), task_(task) {
    classes_ = classify_predicates(domain);
    for (const auto& c : domain.constants) add_object(c.name, c.types.front());
    for (const auto& o : problem.objects) add_object(o.name, o.types.front());
  }

  using Binding = std::vector<std::pair<std::string, std::string>>;

  const std::vector<std::string>& objects_of(const std::vector<std::string>& types) {
    std::string key;
    for (const auto& t : types) key += t + "|";
    auto it = by_type_.find(key);
    if (it != by_type_.end()) return it->second;
    std::vector<std::string> matching;
    for (std::size_t i = 0; i < task_.objects.size(); ++i) {
      if (hierarchy_.matches(object_types_[i], types)) matching.push_back(task_.objects[i]);
    }
    return by_type_.emplace(key, std::move(matching)).first->second;
  }

  /// Calls `visit` once per type-respecting assignment of `params`.
  void for_each_binding(const std::vector<TypedName>& params, Binding& binding,
                        const std::function<void()>& visit) {
    const std::size_t depth = binding.size();
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == params.size()) {
        visit();
        return;
      }
      for (const std::string& obj : objects_of(params[i].types)) {
        binding.emplace_back(params[i].name, obj);
        rec(i + 1);
        binding.pop_back();
      }
    };
    rec(0);
    binding.resize(depth);
  }

  static const std::string& resolve(const Binding& binding, const std::string& term) {
    if (!is_variable(term)) return term;
    for (auto it = binding.rbegin(); it != binding.rend(); ++it) {
      if (it->first == term) return it->second;
    }
    throw SemanticError("unbound variable '" + term + "'");
  }

  std::vector<std::string> resolve_args(const Binding& binding, const std::vector<std::string>& args) {
    std::vector<std::string> out;
    out.reserve(args.size());
    for (const auto& a : args) out.push_back(resolve(binding, a));
    return out;
  }

  FactId fact(const Binding& binding, const Atom& atom) {
    return task_.facts.intern(atom.predicate, resolve_args(binding, atom.args),
                              classes_.is_derived(atom.predicate));
  }

  GroundExpr expr(const Binding& binding, const Expr& e) {
    GroundExpr g;
    switch (e.kind) {
      case Expr::Kind::kNumber: return GroundExpr::number(e.value);
      case Expr::Kind::kFluent:
        return GroundExpr::of_fluent(
            task_.fluents.intern(e.fluent.predicate, resolve_args(binding, e.fluent.args)));
      case Expr::Kind::kAdd: g.kind = GroundExpr::Kind::kAdd; break;
      case Expr::Kind::kSub: g.kind = GroundExpr::Kind::kSub; break;
      case Expr::Kind::kMul: g.kind = GroundExpr::Kind::kMul; break;
      case Expr::Kind::kDiv: g.kind = GroundExpr::Kind::kDiv; break;
      case Expr::Kind::kNeg: g.kind = GroundExpr::Kind::kNeg; break;
      case Expr::Kind::kDuration: g.kind = GroundExpr::Kind::kDuration; return g;
      case Expr::Kind::kTotalTime: g.kind = GroundExpr::Kind::kTotalTime; return g;
    }
    for (const auto& a : e.args) g.args.push_back(expr(binding, a));
    return g;
  }

  /// `nnf` must already be in negation normal form.
  GroundFormula formula(Binding& binding, const Formula& nnf) {
    using K = Formula::Kind;
    using G = GroundFormula::Kind;
    switch (nnf.kind) {
      case K::kAtom: return GroundFormula::literal(fact(binding, nnf.atom), true);
      case K::kEquals:
        return resolve(binding, nnf.atom.args[0]) == resolve(binding, nnf.atom.args[1])
                   ? GroundFormula::truth()
                   : GroundFormula::falsity();
      case K::kCompare:
        return GroundFormula::compare(nnf.op, expr(binding, nnf.operands[0]),
                                      expr(binding, nnf.operands[1]));
      case K::kNot: {
        const Formula& inner = nnf.children.front();
        if (inner.kind == K::kAtom) return GroundFormula::literal(fact(binding, inner.atom), false);
        if (inner.kind == K::kEquals) {
          return resolve(binding, inner.atom.args[0]) == resolve(binding, inner.atom.args[1])
                     ? GroundFormula::falsity()
                     : GroundFormula::truth();
        }
        if (inner.kind == K::kCompare) {
          return GroundFormula::compare(inner.op, expr(binding, inner.operands[0]),
                                        expr(binding, inner.operands[1]), false);
        }
        throw std::logic_error("formula is not in negation normal form");
      }
      case K::kAnd:
      case K::kOr: {
        std::vector<GroundFormula> parts;
        for (const auto& c : nnf.children) parts.push_back(formula(binding, c));
        return GroundFormula::junction(nnf.kind == K::kAnd ? G::kAnd : G::kOr, std::move(parts));
      }
      case K::kExists:
      case K::kForall: {
        // forall x: conjunction over objects, exists x: disjunction.
        std::vector<GroundFormula> parts;
        for_each_binding(nnf.variables, binding,
                         [&] { parts.push_back(formula(binding, nnf.children.front())); });
        return GroundFormula::junction(nnf.kind == K::kForall ? G::kAnd : G::kOr, std::move(parts));
      }
      case K::kImply: break;
    }
    throw std::logic_error("formula is not in negation normal form");
  }

  void effects(Binding& binding, const Effect& e, std::vector<GroundFormula>& conditions,
               std::vector<ConditionalEffect>& out) {
    switch (e.kind) {
      case Effect::Kind::kAnd:
        for (const auto& c : e.children) effects(binding, c, conditions, out);
        return;
      case Effect::Kind::kForall:
        for_each_binding(e.variables, binding,
                         [&] { effects(binding, e.children.front(), conditions, out); });
        return;
      case Effect::Kind::kWhen:
        conditions.push_back(formula(binding, to_nnf(e.condition)));
        effects(binding, e.children.front(), conditions, out);
        conditions.pop_back();
        return;
      default: break;
    }
    ConditionalEffect& target = branch(conditions, out);
    if (e.kind == Effect::Kind::kAdd) {
      target.add.push_back(fact(binding, e.atom));
    } else if (e.kind == Effect::Kind::kDelete) {
      target.del.push_back(fact(binding, e.atom));
    } else {
      NumericEffect n;
      n.op = e.op;
      n.target = task_.fluents.intern(e.atom.predicate, resolve_args(binding, e.atom.args));
      n.value = expr(binding, e.value);
      target.numeric.push_back(std::move(n));
    }
  }

  /// Groups simple effects by their stack of enclosing `when` conditions.
  static ConditionalEffect& branch(const std::vector<GroundFormula>& conditions,
                                   std::vector<ConditionalEffect>& out) {
    if (conditions.empty()) {
      if (out.empty() || out.front().condition.kind != GroundFormula::Kind::kTrue) {
        out.insert(out.begin(), ConditionalEffect{});
      }
      return out.front();
    }
    ConditionalEffect e;
    e.condition = conditions.size() == 1
                      ? conditions.front()
                      : GroundFormula::junction(GroundFormula::Kind::kAnd, conditions);
    out.push_back(std::move(e));
    return out.back();
  }

  GroundAction action(Binding& binding, const std::string& name, ActionOrigin origin,
                      const Formula& precondition, const Effect& effect) {
    GroundAction a;
    a.name = name;
    a.origin = origin;
    a.precondition = formula(binding, to_nnf(precondition));
    std::vector<GroundFormula> conditions;
    effects(binding, effect, conditions, a.effects);
    compute_interference_sets(a);
    return a;
  }

  void run(const ProblemAst& problem) {
    Binding binding;
    for (const Structure& s : domain_.structures) {
      if (const auto* def = std::get_if<ActionDef>(&s)) {
        for_each_binding(def->parameters, binding, [&] {
          const std::string sig = signature(def->name, bound_values(binding));
          task_.action_index[sig] = task_.actions.size();
          task_.actions.push_back(action(binding, sig, ActionOrigin::kInstantaneous,
                                         def->precondition, def->effect));
        });
      } else if (const auto* def = std::get_if<DurativeActionDef>(&s)) {
        for_each_binding(def->parameters, binding, [&] {
          GroundDurativeAction da;
          da.name = signature(def->name, bound_values(binding));
          da.duration = expr(binding, def->duration);
          da.start = action(binding, da.name, ActionOrigin::kStart, def->at_start, def->start_effect);
          da.end = action(binding, da.name, ActionOrigin::kEnd, def->at_end, def->end_effect);
          da.invariant = action(binding, da.name, ActionOrigin::kInvariant, def->over_all, Effect{});
          task_.durative_index[da.name] = task_.durative_actions.size();
          task_.durative_actions.push_back(std::move(da));
        });
      } else if (const auto* def = std::get_if<DerivedDef>(&s)) {
        const Formula body = to_nnf(def->body);
        for_each_binding(def->head_types, binding, [&] {
          GroundRule rule;
          rule.head = fact(binding, def->head);
          rule.body = formula(binding, body);
          task_.rules.push_back(std::move(rule));
        });
      }
    }

    for (const Atom& a : problem.init) task_.init.insert(fact(binding, a));
    std::vector<std::pair<FluentId, Rational>> values;
    for (const NumericInit& n : problem.numeric_init) {
      values.emplace_back(task_.fluents.intern(n.fluent.predicate, n.fluent.args), n.value);
    }
    for (const TimedLiteral& t : problem.timed_literals) {
      GroundTimedLiteral til;
      til.time = t.time;
      til.fact = fact(binding, t.atom);
      til.positive = t.positive;
      const std::string lit = t.positive ? print_atom(t.atom) : "(not " + print_atom(t.atom) + ")";
      til.action = make_timed_literal_action("(at " + to_string(t.time) + " " + lit + ")", til.fact,
                                             t.positive);
      task_.timed_literals.push_back(std::move(til));
    }
    task_.goal = formula(binding, to_nnf(problem.goal));
    if (problem.metric) {
      task_.metric = GroundMetric{problem.metric->minimize, expr(binding, problem.metric->expression)};
    }

    task_.init_values.assign(task_.fluents.size(), std::nullopt);
    for (auto& [id, v] : values) task_.init_values[id] = v;

    task_.graph = build_dependency_graph(task_.rules);
    if (!task_.rules.empty()) {
      for (auto& a : task_.actions) a.dpre = dpre(a, task_.graph);
      for (auto& da : task_.durative_actions) {
        da.start.dpre = dpre(da.start, task_.graph);
        da.end.dpre = dpre(da.end, task_.graph);
        da.invariant.dpre = dpre(da.invariant, task_.graph);
      }
    }
  }

 private:
  void add_object(const std::string& name, const std::string& type) {
    if (std::find(task_.objects.begin(), task_.objects.end(), name) != task_.objects.end()) return;
    task_.objects.push_back(name);
    object_types_.push_back(type);
  }

  static std::vector<std::string> bound_values(const Binding& binding) {
    std::vector<std::string> out;
    for (const auto& [var, obj] : binding) out.push_back(obj);
    return out;
  }

  const DomainAst& domain_;
  TypeHierarchy hierarchy_;
  GroundTask& task_;
  PredicateClasses classes_;
  std::vector<std::string> object_types_;
  std::map<std::string, std::vector<std::string>> by_type_;
};

}  // namespace

GroundTask ground(const DomainAst& domain, const ProblemAst& problem) {
  check_restrictions(domain);
  GroundTask task;
  Grounder grounder(domain, problem, task);
  grounder.run(problem);
  return task;
}

std::string describe(const GroundExpr& e, const FluentTable& fluents) {
  switch (e.kind) {
    case GroundExpr::Kind::kNumber: return to_string(e.value);
    case GroundExpr::Kind::kFluent: return fluents.name(e.fluent);
    case GroundExpr::Kind::kDuration: return "?duration";
    case GroundExpr::Kind::kTotalTime: return "(total-time)";
    default: break;
  }
  const char* op = e.kind == GroundExpr::Kind::kAdd   ? "+"
                   : e.kind == GroundExpr::Kind::kMul ? "*"
                   : e.kind == GroundExpr::Kind::kDiv ? "/"
                                                      : "-";
  std::string out = std::string("(") + op;
  for (const auto& a : e.args) out += " " + describe(a, fluents);
  return out + ")";
}

std::string describe(const GroundFormula& f, const FactTable& facts, const FluentTable& fluents) {
  using K = GroundFormula::Kind;
  static const char* kOps[] = {"<", "<=", "=", ">=", ">"};
  switch (f.kind) {
    case K::kTrue: return "(and)";
    case K::kFalse: return "(or)";
    case K::kFact: return facts.name(f.fact);
    case K::kNotFact: return "(not " + facts.name(f.fact) + ")";
    case K::kCompare:
    case K::kNotCompare: {
      std::string c = std::string("(") + kOps[static_cast<int>(f.op)] + " " +
                      describe(f.operands[0], fluents) + " " + describe(f.operands[1], fluents) + ")";
      return f.kind == K::kCompare ? c : "(not " + c + ")";
    }
    case K::kAnd:
    case K::kOr: {
      std::string out = f.kind == K::kAnd ? "(and" : "(or";
      for (const auto& c : f.children) out += " " + describe(c, facts, fluents);
      return out + ")";
    }
  }
  return "";
}

std::string dump_ground_task(const GroundTask& task) {
  std::ostringstream out;
  auto set = [&](const char* label, const FactSet& s) {
    out << ' ' << label << "={";
    bool first = true;
    for (FactId f : s) {
      out << (first ? "" : " ") << task.facts.name(f);
      first = false;
    }
    out << '}';
  };
  for (std::size_t i = 0; i < task.facts.size(); ++i) {
    const auto id = static_cast<FactId>(i);
    out << "fact " << i << ' ' << task.facts.name(id) << (task.facts.is_derived(id) ? " derived" : " basic")
        << '\n';
  }
  for (std::size_t i = 0; i < task.fluents.size(); ++i) {
    out << "fluent " << i << ' ' << task.fluents.name(static_cast<FluentId>(i)) << '\n';
  }
  for (const GroundRule& r : task.rules) {
    out << "rule " << task.facts.name(r.head) << " <- " << describe(r.body, task.facts, task.fluents)
        << '\n';
  }
  auto action = [&](const GroundAction& a) {
    out << "action " << to_string(a.origin) << ' ' << a.name
        << " pre=" << describe(a.precondition, task.facts, task.fluents);
    set("gpre", a.gpre);
    set("dpre", a.dpre);
    set("add", a.add);
    set("del", a.del);
    out << '\n';
  };
  for (const auto& a : task.actions) action(a);
  for (const auto& da : task.durative_actions) {
    out << "durative " << da.name << " duration=" << describe(da.duration, task.fluents) << '\n';
    action(da.start);
    action(da.invariant);
    action(da.end);
  }
  for (const auto& t : task.timed_literals) action(t.action);
  return out.str();
}

}  // namespace pddlval
