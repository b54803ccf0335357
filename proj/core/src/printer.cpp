#include <sstream>

#include "pddlval/parser.hpp"

namespace pddlval {

namespace {

void print_typed(std::ostream& out, const std::vector<TypedName>& names) {
  bool first = true;
  for (const auto& n : names) {
    if (!first) out << ' ';
    first = false;
    out << n.name << " - ";
    if (n.types.size() == 1) {
      out << n.types.front();
    } else {
      out << "(either";
      for (const auto& t : n.types) out << ' ' << t;
      out << ')';
    }
  }
}

void print(std::ostream& out, const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::kNumber: out << to_string(e.value); return;
    case Expr::Kind::kFluent: out << print_atom(e.fluent); return;
    case Expr::Kind::kDuration: out << "?duration"; return;
    case Expr::Kind::kTotalTime: out << "(total-time)"; return;
    case Expr::Kind::kNeg: out << "(- "; print(out, e.args.front()); out << ')'; return;
    default: break;
  }
  const char* op = e.kind == Expr::Kind::kAdd   ? "+"
                   : e.kind == Expr::Kind::kSub ? "-"
                   : e.kind == Expr::Kind::kMul ? "*"
                                                : "/";
  out << '(' << op;
  for (const auto& a : e.args) {
    out << ' ';
    print(out, a);
  }
  out << ')';
}

const char* compare_text(CompareOp op) {
  switch (op) {
    case CompareOp::kLess: return "<";
    case CompareOp::kLessEq: return "<=";
    case CompareOp::kEq: return "=";
    case CompareOp::kGreaterEq: return ">=";
    case CompareOp::kGreater: return ">";
  }
  return "=";
}

void print(std::ostream& out, const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::kAtom: out << print_atom(f.atom); return;
    case K::kEquals: out << "(= " << f.atom.args[0] << ' ' << f.atom.args[1] << ')'; return;
    case K::kCompare:
      out << '(' << compare_text(f.op) << ' ';
      print(out, f.operands[0]);
      out << ' ';
      print(out, f.operands[1]);
      out << ')';
      return;
    case K::kExists:
    case K::kForall:
      out << (f.kind == K::kExists ? "(exists (" : "(forall (");
      print_typed(out, f.variables);
      out << ") ";
      print(out, f.children.front());
      out << ')';
      return;
    default: break;
  }
  const char* head = f.kind == K::kAnd ? "and" : f.kind == K::kOr ? "or" : f.kind == K::kNot ? "not" : "imply";
  out << '(' << head;
  for (const auto& c : f.children) {
    out << ' ';
    print(out, c);
  }
  out << ')';
}

const char* assign_text(AssignOp op) {
  switch (op) {
    case AssignOp::kAssign: return "assign";
    case AssignOp::kIncrease: return "increase";
    case AssignOp::kDecrease: return "decrease";
    case AssignOp::kScaleUp: return "scale-up";
    case AssignOp::kScaleDown: return "scale-down";
  }
  return "assign";
}

void print(std::ostream& out, const Effect& e) {
  using K = Effect::Kind;
  switch (e.kind) {
    case K::kAnd:
      out << "(and";
      for (const auto& c : e.children) {
        out << ' ';
        print(out, c);
      }
      out << ')';
      return;
    case K::kForall:
      out << "(forall (";
      print_typed(out, e.variables);
      out << ") ";
      print(out, e.children.front());
      out << ')';
      return;
    case K::kWhen:
      out << "(when ";
      print(out, e.condition);
      out << ' ';
      print(out, e.children.front());
      out << ')';
      return;
    case K::kAdd: out << print_atom(e.atom); return;
    case K::kDelete: out << "(not " << print_atom(e.atom) << ')'; return;
    case K::kNumeric:
      out << '(' << assign_text(e.op) << ' ' << print_atom(e.atom) << ' ';
      print(out, e.value);
      out << ')';
      return;
  }
}

void print_decls(std::ostream& out, const char* section, const std::vector<PredicateDecl>& decls) {
  if (decls.empty()) return;
  out << "  (" << section;
  for (const auto& d : decls) {
    out << "\n    (" << d.name;
    if (!d.parameters.empty()) out << ' ';
    print_typed(out, d.parameters);
    out << ')';
  }
  out << ")\n";
}

}  // namespace

std::string print_atom(const Atom& atom) {
  std::string out = "(" + atom.predicate;
  for (const auto& a : atom.args) out += " " + a;
  return out + ")";
}

std::string print_formula(const Formula& formula) {
  std::ostringstream out;
  print(out, formula);
  return out.str();
}

std::string print_expr(const Expr& expr) {
  std::ostringstream out;
  print(out, expr);
  return out.str();
}

std::string print_domain(const DomainAst& d) {
  std::ostringstream out;
  out << "(define (domain " << d.name << ")\n";
  if (!d.requirements.empty()) {
    out << "  (:requirements";
    for (const auto& r : d.requirements) out << " :" << r;
    out << ")\n";
  }
  if (!d.types.empty()) {
    out << "  (:types";
    for (const auto& t : d.types) out << ' ' << t.name << " - " << t.parent;
    out << ")\n";
  }
  if (!d.constants.empty()) {
    out << "  (:constants ";
    print_typed(out, d.constants);
    out << ")\n";
  }
  print_decls(out, ":predicates", d.predicates);
  print_decls(out, ":functions", d.functions);
  for (const Structure& s : d.structures) {
    if (const auto* a = std::get_if<ActionDef>(&s)) {
      out << "  (:action " << a->name << "\n    :parameters (";
      print_typed(out, a->parameters);
      out << ")\n    :precondition ";
      print(out, a->precondition);
      out << "\n    :effect ";
      print(out, a->effect);
      out << ")\n";
    } else if (const auto* da = std::get_if<DurativeActionDef>(&s)) {
      out << "  (:durative-action " << da->name << "\n    :parameters (";
      print_typed(out, da->parameters);
      out << ")\n    :duration (= ?duration ";
      print(out, da->duration);
      out << ")\n    :condition (and";
      auto cond = [&](const char* label, const Formula& f) {
        if (f.is_true()) return;
        out << " (" << label << ' ';
        print(out, f);
        out << ')';
      };
      cond("at start", da->at_start);
      cond("over all", da->over_all);
      cond("at end", da->at_end);
      out << ")\n    :effect (and";
      auto eff = [&](const char* label, const Effect& e) {
        if (e.is_empty()) return;
        out << " (" << label << ' ';
        print(out, e);
        out << ')';
      };
      eff("at start", da->start_effect);
      eff("at end", da->end_effect);
      out << "))\n";
    } else if (const auto* r = std::get_if<DerivedDef>(&s)) {
      out << "  (:derived (" << r->head.predicate;
      if (!r->head_types.empty()) out << ' ';
      print_typed(out, r->head_types);
      out << ")\n    ";
      print(out, r->body);
      out << ")\n";
    }
  }
  out << ")\n";
  return out.str();
}

std::string print_problem(const ProblemAst& p) {
  std::ostringstream out;
  out << "(define (problem " << p.name << ")\n  (:domain " << p.domain_name << ")\n";
  if (!p.requirements.empty()) {
    out << "  (:requirements";
    for (const auto& r : p.requirements) out << " :" << r;
    out << ")\n";
  }
  if (!p.objects.empty()) {
    out << "  (:objects ";
    print_typed(out, p.objects);
    out << ")\n";
  }
  out << "  (:init";
  for (const auto& a : p.init) out << "\n    " << print_atom(a);
  for (const auto& n : p.numeric_init) out << "\n    (= " << print_atom(n.fluent) << ' ' << to_string(n.value) << ')';
  for (const auto& t : p.timed_literals) {
    out << "\n    (at " << to_string(t.time) << ' '
        << (t.positive ? print_atom(t.atom) : "(not " + print_atom(t.atom) + ")") << ')';
  }
  out << ")\n  (:goal ";
  print(out, p.goal);
  out << ")\n";
  if (p.metric) {
    out << "  (:metric " << (p.metric->minimize ? "minimize " : "maximize ");
    print(out, p.metric->expression);
    out << ")\n";
  }
  out << ")\n";
  return out.str();
}

}  // namespace pddlval
