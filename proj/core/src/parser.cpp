#include "pddlval/parser.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "pddlval/errors.hpp"
#include "pddlval/types.hpp"

namespace pddlval {

Expr Expr::number(Rational v) {
  Expr e;
  e.kind = Kind::kNumber;
  e.value = std::move(v);
  return e;
}

Expr Expr::function(Atom a) {
  Expr e;
  e.kind = Kind::kFluent;
  e.fluent = std::move(a);
  return e;
}

Expr Expr::op(Kind k, std::vector<Expr> operands) {
  Expr e;
  e.kind = k;
  e.args = std::move(operands);
  return e;
}

Formula Formula::make_atom(Atom a) {
  Formula f;
  f.kind = Kind::kAtom;
  f.atom = std::move(a);
  return f;
}

Formula Formula::make_not(Formula inner) {
  Formula f;
  f.kind = Kind::kNot;
  f.children.push_back(std::move(inner));
  return f;
}

Formula Formula::junction(Kind k, std::vector<Formula> parts) {
  Formula f;
  f.kind = k;
  f.children = std::move(parts);
  return f;
}

Formula Formula::quantified(Kind k, std::vector<TypedName> vars, Formula body) {
  Formula f;
  f.kind = k;
  f.variables = std::move(vars);
  f.children.push_back(std::move(body));
  return f;
}

const PredicateDecl* DomainAst::find_predicate(const std::string& n) const {
  for (const auto& p : predicates) {
    if (p.name == n) return &p;
  }
  return nullptr;
}

const PredicateDecl* DomainAst::find_function(const std::string& n) const {
  for (const auto& f : functions) {
    if (f.name == n) return &f;
  }
  return nullptr;
}

namespace {

const std::set<std::string>& known_requirements() {
  static const std::set<std::string> flags = {
      "strips",           "typing",
      "negative-preconditions", "disjunctive-preconditions",
      "equality",         "existential-preconditions",
      "universal-preconditions", "quantified-preconditions",
      "conditional-effects", "fluents",
      "adl",              "durative-actions",
      "duration-inequalities", "derived-predicates",
      "timed-initial-literals"};
  return flags;
}

void expand_requirements(std::set<std::string>& flags) {
  if (flags.count("adl")) {
    flags.insert({"strips", "typing", "disjunctive-preconditions", "equality",
                  "quantified-preconditions", "conditional-effects"});
  }
  if (flags.count("quantified-preconditions")) {
    flags.insert({"existential-preconditions", "universal-preconditions"});
  }
  if (flags.count("timed-initial-literals")) flags.insert("durative-actions");
}

class Cursor {
 public:
  explicit Cursor(std::span<const Token> tokens) : tokens_(tokens) {}

  bool at_end() const { return pos_ >= tokens_.size(); }

  const Token& peek(std::size_t ahead = 0) const {
    if (pos_ + ahead >= tokens_.size()) fail_eof();
    return tokens_[pos_ + ahead];
  }

  bool peek_is(TokenKind kind, std::string_view text = {}, std::size_t ahead = 0) const {
    if (pos_ + ahead >= tokens_.size()) return false;
    const Token& t = tokens_[pos_ + ahead];
    return t.kind == kind && (text.empty() || t.text == text);
  }

  const Token& next() {
    const Token& t = peek();
    ++pos_;
    return t;
  }

  void expect(TokenKind kind, std::string_view production) {
    const Token& t = peek();
    if (t.kind != kind) fail(t, std::string(to_string(kind)) + " in " + std::string(production));
    ++pos_;
  }

  std::string expect_name(std::string_view production) {
    const Token& t = peek();
    if (t.kind != TokenKind::kSymbol) fail(t, "name in " + std::string(production));
    ++pos_;
    return t.text;
  }

  void expect_keyword(std::string_view keyword) {
    const Token& t = peek();
    if (t.kind != TokenKind::kKeyword || t.text != keyword) fail(t, std::string(keyword));
    ++pos_;
  }

  void expect_symbol(std::string_view symbol, std::string_view production) {
    const Token& t = peek();
    if (t.kind != TokenKind::kSymbol || t.text != symbol) {
      fail(t, "'" + std::string(symbol) + "' in " + std::string(production));
    }
    ++pos_;
  }

  /// Skips one balanced element.
  void skip_element() {
    int depth = 0;
    do {
      const Token& t = next();
      if (t.kind == TokenKind::kLParen) ++depth;
      if (t.kind == TokenKind::kRParen) --depth;
    } while (depth > 0);
  }

  [[noreturn]] void fail(const Token& at, const std::string& expected) const {
    throw SyntaxError("expected " + expected + ", got '" + at.text + "'", at.line, at.column);
  }

  [[noreturn]] void fail_eof() const {
    const int line = tokens_.empty() ? 1 : tokens_.back().line;
    const int column = tokens_.empty() ? 1 : tokens_.back().column;
    throw SyntaxError("unexpected end of input", line, column);
  }

  const Token& current_or_last() const {
    return pos_ < tokens_.size() ? tokens_[pos_] : tokens_.back();
  }

 private:
  std::span<const Token> tokens_;
  std::size_t pos_ = 0;
};

[[noreturn]] void semantic(const Token& at, const std::string& message) {
  throw SemanticError(std::to_string(at.line) + ":" + std::to_string(at.column) + ": " + message);
}

/// Context for checking names inside formulas, effects and expressions.
struct NameContext {
  const DomainAst* domain = nullptr;
  std::set<std::string> objects;   // constants (and problem objects)
  bool check_unbound = true;       // false inside derived bodies (restriction 2 reports it)
  bool allow_duration = false;
  bool allow_total_time = false;
  std::vector<std::string> scope;  // bound variables
};

class ScopeGuard {
 public:
  ScopeGuard(NameContext& ctx, const std::vector<TypedName>& vars) : ctx_(ctx), n_(vars.size()) {
    for (const auto& v : vars) ctx_.scope.push_back(v.name);
  }
  ~ScopeGuard() { ctx_.scope.resize(ctx_.scope.size() - n_); }
  ScopeGuard(const ScopeGuard&) = delete;
  ScopeGuard& operator=(const ScopeGuard&) = delete;

 private:
  NameContext& ctx_;
  std::size_t n_;
};

class PddlParser {
 public:
  PddlParser(std::span<const Token> tokens, NameContext ctx) : in_(tokens), ctx_(std::move(ctx)) {}

  Cursor& cursor() { return in_; }
  NameContext& context() { return ctx_; }

  std::vector<TypedName> typed_list(TokenKind element, std::string_view production) {
    std::vector<TypedName> out;
    std::size_t untyped_from = 0;
    while (!in_.peek_is(TokenKind::kRParen)) {
      if (in_.peek_is(TokenKind::kSymbol, "-")) {
        const Token& dash = in_.next();
        std::vector<std::string> types = type_spec(production);
        if (untyped_from == out.size()) in_.fail(dash, "names before '-' in " + std::string(production));
        for (std::size_t i = untyped_from; i < out.size(); ++i) out[i].types = types;
        untyped_from = out.size();
        continue;
      }
      const Token& t = in_.next();
      if (t.kind != element) in_.fail(t, std::string(to_string(element)) + " in " + std::string(production));
      out.push_back({t.text, {"object"}});
    }
    return out;
  }

  std::vector<std::string> type_spec(std::string_view production) {
    if (in_.peek_is(TokenKind::kLParen)) {
      in_.next();
      in_.expect_symbol("either", production);
      std::vector<std::string> alternatives;
      while (!in_.peek_is(TokenKind::kRParen)) alternatives.push_back(in_.expect_name(production));
      in_.next();
      if (alternatives.empty()) in_.fail(in_.current_or_last(), "type names in (either ...)");
      check_types(alternatives);
      return alternatives;
    }
    std::vector<std::string> single{in_.expect_name(production)};
    check_types(single);
    return single;
  }

  void check_types(const std::vector<std::string>& types) {
    if (types_ == nullptr) return;
    for (const auto& t : types) {
      if (!types_->is_declared(t)) semantic(in_.current_or_last(), "undeclared type '" + t + "'");
    }
  }

  void set_types(const TypeHierarchy* types) { types_ = types; }

  // ---- terms and atoms ----

  std::string term(std::string_view production) {
    const Token& t = in_.next();
    if (t.kind == TokenKind::kVariable) {
      if (ctx_.check_unbound &&
          std::find(ctx_.scope.begin(), ctx_.scope.end(), t.text) == ctx_.scope.end()) {
        semantic(t, "unbound variable '" + t.text + "'");
      }
      return t.text;
    }
    if (t.kind == TokenKind::kSymbol) {
      if (!ctx_.objects.count(t.text)) semantic(t, "undeclared object or constant '" + t.text + "'");
      return t.text;
    }
    in_.fail(t, "term in " + std::string(production));
  }

  /// Atom body after the opening parenthesis: predicate and terms.
  Atom atom_tail(bool function, std::string_view production) {
    const Token& head = in_.peek();
    Atom atom;
    atom.predicate = in_.expect_name(production);
    while (!in_.peek_is(TokenKind::kRParen)) atom.args.push_back(term(production));
    in_.next();
    const PredicateDecl* decl = function ? ctx_.domain->find_function(atom.predicate)
                                         : ctx_.domain->find_predicate(atom.predicate);
    if (decl == nullptr) {
      semantic(head, std::string(function ? "undeclared function '" : "undeclared predicate '") +
                         atom.predicate + "'");
    }
    if (decl->parameters.size() != atom.args.size()) {
      semantic(head, "'" + atom.predicate + "' expects " +
                         std::to_string(decl->parameters.size()) + " arguments, got " +
                         std::to_string(atom.args.size()));
    }
    return atom;
  }

  Atom atom(std::string_view production) {
    in_.expect(TokenKind::kLParen, production);
    return atom_tail(false, production);
  }

  // ---- numeric expressions ----

  Expr expr() {
    const Token& t = in_.peek();
    if (t.kind == TokenKind::kNumber) {
      in_.next();
      return Expr::number(parse_decimal(t.text));
    }
    if (t.kind == TokenKind::kVariable && t.text == "?duration") {
      if (!ctx_.allow_duration) semantic(t, "?duration outside a durative action");
      in_.next();
      Expr e;
      e.kind = Expr::Kind::kDuration;
      return e;
    }
    if (t.kind == TokenKind::kSymbol) {
      in_.next();
      if (t.text == "total-time") return total_time(t);
      return zero_ary_fluent(t);
    }
    if (t.kind != TokenKind::kLParen) in_.fail(t, "numeric expression");
    in_.next();
    const Token& head = in_.peek();
    if (head.kind == TokenKind::kSymbol) {
      static const std::map<std::string, Expr::Kind> ops = {
          {"+", Expr::Kind::kAdd}, {"-", Expr::Kind::kSub},
          {"*", Expr::Kind::kMul}, {"/", Expr::Kind::kDiv}};
      if (auto it = ops.find(head.text); it != ops.end()) {
        in_.next();
        std::vector<Expr> args;
        while (!in_.peek_is(TokenKind::kRParen)) args.push_back(expr());
        in_.next();
        Expr::Kind kind = it->second;
        if (kind == Expr::Kind::kSub && args.size() == 1) kind = Expr::Kind::kNeg;
        const bool binary = kind == Expr::Kind::kSub || kind == Expr::Kind::kDiv;
        if ((binary && args.size() != 2) || (!binary && kind != Expr::Kind::kNeg && args.size() < 2)) {
          semantic(head, "wrong number of operands for '" + head.text + "'");
        }
        return Expr::op(kind, std::move(args));
      }
      if (head.text == "total-time") {
        in_.next();
        in_.expect(TokenKind::kRParen, "(total-time)");
        return total_time(head);
      }
    }
    return Expr::function(atom_tail(true, "function term"));
  }

  Expr total_time(const Token& at) {
    if (!ctx_.allow_total_time) semantic(at, "total-time outside a metric");
    Expr e;
    e.kind = Expr::Kind::kTotalTime;
    return e;
  }

  Expr zero_ary_fluent(const Token& name) {
    const PredicateDecl* decl = ctx_.domain->find_function(name.text);
    if (decl == nullptr || !decl->parameters.empty()) {
      semantic(name, "'" + name.text + "' is not a 0-ary function");
    }
    return Expr::function(Atom{name.text, {}});
  }

  // ---- goal descriptions ----

  static std::optional<CompareOp> comparison(const std::string& s) {
    if (s == "<") return CompareOp::kLess;
    if (s == "<=") return CompareOp::kLessEq;
    if (s == "=") return CompareOp::kEq;
    if (s == ">=") return CompareOp::kGreaterEq;
    if (s == ">") return CompareOp::kGreater;
    return std::nullopt;
  }

  bool is_term_token(std::size_t ahead) const {
    if (!in_.peek_is(TokenKind::kVariable, {}, ahead) && !in_.peek_is(TokenKind::kSymbol, {}, ahead)) {
      return false;
    }
    const Token& t = in_.peek(ahead);
    if (t.kind == TokenKind::kVariable) return t.text != "?duration";
    // A bare 0-ary function name is a numeric operand, not an object.
    return ctx_.objects.count(t.text) > 0 || ctx_.domain->find_function(t.text) == nullptr;
  }

  Formula formula(std::string_view production = "goal description") {
    in_.expect(TokenKind::kLParen, production);
    if (in_.peek_is(TokenKind::kRParen)) {
      in_.next();
      return Formula::truth();
    }
    const Token& head = in_.peek();
    if (head.kind != TokenKind::kSymbol) in_.fail(head, std::string(production));
    const std::string& h = head.text;
    if (h == "and" || h == "or") {
      in_.next();
      std::vector<Formula> parts;
      while (!in_.peek_is(TokenKind::kRParen)) parts.push_back(formula(production));
      in_.next();
      return Formula::junction(h == "and" ? Formula::Kind::kAnd : Formula::Kind::kOr, std::move(parts));
    }
    if (h == "not") {
      in_.next();
      Formula inner = formula(production);
      in_.expect(TokenKind::kRParen, "(not ...)");
      return Formula::make_not(std::move(inner));
    }
    if (h == "imply") {
      in_.next();
      std::vector<Formula> parts;
      parts.push_back(formula(production));
      parts.push_back(formula(production));
      in_.expect(TokenKind::kRParen, "(imply ...)");
      return Formula::junction(Formula::Kind::kImply, std::move(parts));
    }
    if (h == "exists" || h == "forall") {
      in_.next();
      in_.expect(TokenKind::kLParen, "quantifier variables");
      std::vector<TypedName> vars = typed_list(TokenKind::kVariable, "quantifier variables");
      in_.next();
      ScopeGuard guard(ctx_, vars);
      Formula body = formula(production);
      in_.expect(TokenKind::kRParen, "quantified formula");
      return Formula::quantified(h == "exists" ? Formula::Kind::kExists : Formula::Kind::kForall,
                                 std::move(vars), std::move(body));
    }
    if (auto op = comparison(h)) {
      in_.next();
      if (*op == CompareOp::kEq && is_term_token(0) && is_term_token(1)) {
        Formula f;
        f.kind = Formula::Kind::kEquals;
        f.atom.predicate = "=";
        f.atom.args.push_back(term("(= t1 t2)"));
        f.atom.args.push_back(term("(= t1 t2)"));
        in_.expect(TokenKind::kRParen, "(= t1 t2)");
        return f;
      }
      Formula f;
      f.kind = Formula::Kind::kCompare;
      f.op = *op;
      f.operands.push_back(expr());
      f.operands.push_back(expr());
      in_.expect(TokenKind::kRParen, "numeric comparison");
      return f;
    }
    return Formula::make_atom(atom_tail(false, production));
  }

  // ---- effects ----

  static std::optional<AssignOp> assign_op(const std::string& s) {
    if (s == "assign") return AssignOp::kAssign;
    if (s == "increase") return AssignOp::kIncrease;
    if (s == "decrease") return AssignOp::kDecrease;
    if (s == "scale-up") return AssignOp::kScaleUp;
    if (s == "scale-down") return AssignOp::kScaleDown;
    return std::nullopt;
  }

  Effect effect() {
    in_.expect(TokenKind::kLParen, "effect");
    if (in_.peek_is(TokenKind::kRParen)) {
      in_.next();
      return Effect{};
    }
    const Token& head = in_.peek();
    if (head.kind != TokenKind::kSymbol) in_.fail(head, "effect");
    const std::string& h = head.text;
    Effect e;
    if (h == "and") {
      in_.next();
      while (!in_.peek_is(TokenKind::kRParen)) e.children.push_back(effect());
      in_.next();
      return e;
    }
    if (h == "forall") {
      in_.next();
      e.kind = Effect::Kind::kForall;
      in_.expect(TokenKind::kLParen, "forall variables");
      e.variables = typed_list(TokenKind::kVariable, "forall variables");
      in_.next();
      ScopeGuard guard(ctx_, e.variables);
      e.children.push_back(effect());
      in_.expect(TokenKind::kRParen, "(forall ...)");
      return e;
    }
    if (h == "when") {
      in_.next();
      e.kind = Effect::Kind::kWhen;
      e.condition = formula("effect condition");
      e.children.push_back(effect());
      in_.expect(TokenKind::kRParen, "(when ...)");
      return e;
    }
    if (h == "not") {
      in_.next();
      e.kind = Effect::Kind::kDelete;
      e.atom = atom("negative effect");
      in_.expect(TokenKind::kRParen, "(not ...)");
      return e;
    }
    if (auto op = assign_op(h)) {
      in_.next();
      e.kind = Effect::Kind::kNumeric;
      e.op = *op;
      if (in_.peek_is(TokenKind::kLParen)) {
        in_.next();
        e.atom = atom_tail(true, "assignment target");
      } else {
        const Token& name = in_.next();
        if (name.kind != TokenKind::kSymbol) in_.fail(name, "function term");
        e.atom = zero_ary_fluent(name).fluent;
      }
      e.value = expr();
      in_.expect(TokenKind::kRParen, "numeric effect");
      return e;
    }
    e.kind = Effect::Kind::kAdd;
    e.atom = atom_tail(false, "effect");
    return e;
  }

  // ---- durative actions ----

  bool peek_time_specifier(std::string_view first, std::string_view second) const {
    return in_.peek_is(TokenKind::kLParen) && in_.peek_is(TokenKind::kSymbol, first, 1) &&
           in_.peek_is(TokenKind::kSymbol, second, 2);
  }

  void timed_conditions(DurativeActionDef& da) {
    std::vector<Formula> start;
    std::vector<Formula> all;
    std::vector<Formula> end;
    auto one = [&](auto& self) -> void {
      if (peek_time_specifier("at", "start") || peek_time_specifier("at", "end") ||
          peek_time_specifier("over", "all")) {
        in_.next();
        const std::string first = in_.next().text;
        const std::string second = in_.next().text;
        Formula f = formula("timed condition");
        in_.expect(TokenKind::kRParen, "timed condition");
        (first == "over" ? all : second == "start" ? start : end).push_back(std::move(f));
        return;
      }
      in_.expect(TokenKind::kLParen, "durative condition");
      if (in_.peek_is(TokenKind::kRParen)) {
        in_.next();
        return;
      }
      in_.expect_symbol("and", "durative condition");
      while (!in_.peek_is(TokenKind::kRParen)) self(self);
      in_.next();
    };
    one(one);
    auto merge = [](std::vector<Formula> parts) {
      if (parts.size() == 1) return std::move(parts.front());
      return Formula::junction(Formula::Kind::kAnd, std::move(parts));
    };
    da.at_start = merge(std::move(start));
    da.over_all = merge(std::move(all));
    da.at_end = merge(std::move(end));
  }

  void timed_effects(DurativeActionDef& da) {
    std::vector<Effect> start;
    std::vector<Effect> end;
    auto one = [&](auto& self) -> void {
      if (peek_time_specifier("at", "start") || peek_time_specifier("at", "end")) {
        in_.next();
        in_.next();
        const std::string when = in_.next().text;
        Effect e = effect();
        in_.expect(TokenKind::kRParen, "timed effect");
        (when == "start" ? start : end).push_back(std::move(e));
        return;
      }
      in_.expect(TokenKind::kLParen, "durative effect");
      if (in_.peek_is(TokenKind::kRParen)) {
        in_.next();
        return;
      }
      const Token& head = in_.peek();
      if (!(head.kind == TokenKind::kSymbol && head.text == "and")) {
        in_.fail(head, "(at start ...), (at end ...) or (and ...) in durative effect");
      }
      in_.next();
      while (!in_.peek_is(TokenKind::kRParen)) self(self);
      in_.next();
    };
    one(one);
    auto merge = [](std::vector<Effect> parts) {
      if (parts.size() == 1) return std::move(parts.front());
      Effect e;
      e.children = std::move(parts);
      return e;
    };
    da.start_effect = merge(std::move(start));
    da.end_effect = merge(std::move(end));
  }

  Expr duration_constraint() {
    in_.expect(TokenKind::kLParen, "duration constraint");
    const Token& op = in_.peek();
    if (op.kind == TokenKind::kSymbol && (op.text == "<=" || op.text == ">=" || op.text == "and")) {
      semantic(op, "only exact duration constraints (= ?duration <expr>) are supported");
    }
    in_.expect_symbol("=", "duration constraint");
    const Token& var = in_.next();
    if (var.kind != TokenKind::kVariable || var.text != "?duration") in_.fail(var, "?duration");
    const bool saved = ctx_.allow_duration;
    ctx_.allow_duration = false;
    Expr e = expr();
    ctx_.allow_duration = saved;
    in_.expect(TokenKind::kRParen, "duration constraint");
    return e;
  }

 private:
  Cursor in_;
  NameContext ctx_;
  const TypeHierarchy* types_ = nullptr;
};

std::set<std::string> requirements(Cursor& in) {
  std::set<std::string> flags;
  while (!in.peek_is(TokenKind::kRParen)) {
    const Token& t = in.next();
    if (t.kind != TokenKind::kKeyword) in.fail(t, "requirement flag");
    const std::string flag = t.text.substr(1);
    if (!known_requirements().count(flag)) semantic(t, "unknown requirement flag '" + t.text + "'");
    flags.insert(flag);
  }
  in.next();
  expand_requirements(flags);
  return flags;
}

void check_unique(const std::vector<TypedName>& names, const Token& at, const std::string& what) {
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (!seen.insert(n.name).second) semantic(at, "duplicate " + what + " '" + n.name + "'");
  }
}

}  // namespace

DomainAst parse_domain(std::span<const Token> tokens) {
  DomainAst domain;
  NameContext ctx;
  ctx.domain = &domain;
  PddlParser p(tokens, ctx);
  Cursor& in = p.cursor();

  in.expect(TokenKind::kLParen, "domain definition");
  in.expect_symbol("define", "domain definition");
  in.expect(TokenKind::kLParen, "domain name");
  in.expect_symbol("domain", "domain name");
  domain.name = in.expect_name("domain name");
  in.expect(TokenKind::kRParen, "domain name");

  std::optional<TypeHierarchy> hierarchy(std::in_place, domain);
  p.set_types(&*hierarchy);
  std::set<std::string> seen_sections;
  while (!in.peek_is(TokenKind::kRParen)) {
    in.expect(TokenKind::kLParen, "domain section");
    const Token& key = in.next();
    if (key.kind != TokenKind::kKeyword) in.fail(key, "section keyword");
    const std::string& k = key.text;
    const bool structure = k == ":action" || k == ":durative-action" || k == ":derived";
    if (!structure && !seen_sections.insert(k).second) semantic(key, "duplicate section " + k);

    if (k == ":requirements") {
      domain.requirements = requirements(in);
    } else if (k == ":types") {
      p.set_types(nullptr);
      for (const TypedName& t : p.typed_list(TokenKind::kSymbol, ":types")) {
        if (t.types.size() != 1) semantic(key, "type '" + t.name + "' may not use (either ...)");
        if (t.name == "object") continue;
        domain.types.push_back({t.name, t.types.front()});
      }
      in.next();
      hierarchy.emplace(domain);
      p.set_types(&*hierarchy);
      for (const auto& decl : domain.types) {
        if (!hierarchy->is_declared(decl.parent)) semantic(key, "undeclared type '" + decl.parent + "'");
      }
    } else if (k == ":constants") {
      domain.constants = p.typed_list(TokenKind::kSymbol, ":constants");
      in.next();
      check_unique(domain.constants, key, "constant");
      for (const auto& c : domain.constants) p.context().objects.insert(c.name);
    } else if (k == ":predicates" || k == ":functions") {
      const bool functions = k == ":functions";
      auto& decls = functions ? domain.functions : domain.predicates;
      while (!in.peek_is(TokenKind::kRParen)) {
        in.expect(TokenKind::kLParen, std::string(k) + " declaration");
        PredicateDecl decl;
        decl.name = in.expect_name(std::string(k) + " declaration");
        decl.parameters = p.typed_list(TokenKind::kVariable, std::string(k) + " parameters");
        in.next();
        if (functions && in.peek_is(TokenKind::kSymbol, "-")) {
          in.next();
          in.expect_symbol("number", "function type");
        }
        for (const auto& d : decls) {
          if (d.name == decl.name) semantic(key, "duplicate declaration of '" + decl.name + "'");
        }
        decls.push_back(std::move(decl));
      }
      in.next();
    } else if (k == ":action") {
      ActionDef a;
      a.name = in.expect_name("action name");
      in.expect_keyword(":parameters");
      in.expect(TokenKind::kLParen, "parameter list");
      a.parameters = p.typed_list(TokenKind::kVariable, "parameter list");
      in.next();
      check_unique(a.parameters, key, "parameter");
      ScopeGuard guard(p.context(), a.parameters);
      while (!in.peek_is(TokenKind::kRParen)) {
        const Token& field = in.next();
        if (field.kind == TokenKind::kKeyword && field.text == ":precondition") {
          a.precondition = p.formula("precondition");
        } else if (field.kind == TokenKind::kKeyword && field.text == ":effect") {
          a.effect = p.effect();
        } else {
          in.fail(field, ":precondition or :effect");
        }
      }
      in.next();
      domain.structures.emplace_back(std::move(a));
    } else if (k == ":durative-action") {
      if (!domain.has_requirement("durative-actions")) {
        semantic(key, "durative action requires :durative-actions");
      }
      DurativeActionDef da;
      da.name = in.expect_name("durative action name");
      in.expect_keyword(":parameters");
      in.expect(TokenKind::kLParen, "parameter list");
      da.parameters = p.typed_list(TokenKind::kVariable, "parameter list");
      in.next();
      check_unique(da.parameters, key, "parameter");
      ScopeGuard guard(p.context(), da.parameters);
      bool has_duration = false;
      while (!in.peek_is(TokenKind::kRParen)) {
        const Token& field = in.next();
        if (field.kind == TokenKind::kKeyword && field.text == ":duration") {
          da.duration = p.duration_constraint();
          has_duration = true;
        } else if (field.kind == TokenKind::kKeyword && field.text == ":condition") {
          p.timed_conditions(da);
        } else if (field.kind == TokenKind::kKeyword && field.text == ":effect") {
          p.context().allow_duration = true;
          p.timed_effects(da);
          p.context().allow_duration = false;
        } else {
          in.fail(field, ":duration, :condition or :effect");
        }
      }
      in.next();
      if (!has_duration) semantic(key, "durative action '" + da.name + "' has no :duration");
      domain.structures.emplace_back(std::move(da));
    } else if (k == ":derived") {
      if (!domain.has_requirement("derived-predicates")) {
        semantic(key, ":derived requires the :derived-predicates requirement");
      }
      DerivedDef d;
      in.expect(TokenKind::kLParen, "derived predicate head");
      const Token& head = in.peek();
      d.head.predicate = in.expect_name("derived predicate head");
      d.head_types = p.typed_list(TokenKind::kVariable, "derived predicate head");
      in.next();
      const PredicateDecl* decl = domain.find_predicate(d.head.predicate);
      if (decl == nullptr) semantic(head, "undeclared predicate '" + d.head.predicate + "'");
      if (decl->parameters.size() != d.head_types.size()) {
        semantic(head, "'" + d.head.predicate + "' expects " +
                           std::to_string(decl->parameters.size()) + " arguments");
      }
      // Untyped head variables take the declared parameter types.
      bool typed = false;
      for (std::size_t i = 0; i < d.head_types.size(); ++i) {
        if (d.head_types[i].types != std::vector<std::string>{"object"}) typed = true;
      }
      for (std::size_t i = 0; i < d.head_types.size(); ++i) {
        d.head.args.push_back(d.head_types[i].name);
        if (!typed) d.head_types[i].types = decl->parameters[i].types;
      }
      p.context().check_unbound = false;
      d.body = p.formula("derived rule body");
      p.context().check_unbound = true;
      in.expect(TokenKind::kRParen, "(:derived ...)");
      domain.structures.emplace_back(std::move(d));
    } else {
      semantic(key, "unknown domain section '" + k + "'");
    }
  }
  in.next();
  if (!in.at_end()) in.fail(in.peek(), "end of input after domain");
  return domain;
}

ProblemAst parse_problem(std::span<const Token> tokens, const DomainAst& domain) {
  ProblemAst problem;
  NameContext ctx;
  ctx.domain = &domain;
  for (const auto& c : domain.constants) ctx.objects.insert(c.name);
  PddlParser p(tokens, ctx);
  Cursor& in = p.cursor();
  const TypeHierarchy hierarchy(domain);
  p.set_types(&hierarchy);

  std::set<std::string> derived;
  for (const Structure& s : domain.structures) {
    if (const auto* d = std::get_if<DerivedDef>(&s)) derived.insert(d->head.predicate);
  }

  in.expect(TokenKind::kLParen, "problem definition");
  in.expect_symbol("define", "problem definition");
  in.expect(TokenKind::kLParen, "problem name");
  in.expect_symbol("problem", "problem name");
  problem.name = in.expect_name("problem name");
  in.expect(TokenKind::kRParen, "problem name");

  in.expect(TokenKind::kLParen, "(:domain ...)");
  in.expect_keyword(":domain");
  const Token& dname = in.peek();
  problem.domain_name = in.expect_name("(:domain ...)");
  in.expect(TokenKind::kRParen, "(:domain ...)");
  if (problem.domain_name != domain.name) {
    semantic(dname, "problem refers to domain '" + problem.domain_name + "', not '" + domain.name + "'");
  }

  bool tils_allowed = domain.has_requirement("timed-initial-literals");
  bool has_goal = false;
  std::set<std::string> seen_sections;
  while (!in.peek_is(TokenKind::kRParen)) {
    in.expect(TokenKind::kLParen, "problem section");
    const Token& key = in.next();
    if (key.kind != TokenKind::kKeyword) in.fail(key, "section keyword");
    const std::string& k = key.text;
    if (!seen_sections.insert(k).second) semantic(key, "duplicate section " + k);

    if (k == ":requirements") {
      problem.requirements = requirements(in);
      if (problem.requirements.count("timed-initial-literals")) tils_allowed = true;
    } else if (k == ":objects") {
      problem.objects = p.typed_list(TokenKind::kSymbol, ":objects");
      in.next();
      check_unique(problem.objects, key, "object");
      for (const auto& o : problem.objects) {
        if (o.types.size() != 1) semantic(key, "object '" + o.name + "' may not use (either ...)");
        p.context().objects.insert(o.name);
      }
    } else if (k == ":init") {
      std::map<std::string, const TimedLiteral*> unused;
      while (!in.peek_is(TokenKind::kRParen)) {
        const Token& open = in.peek();
        if (in.peek_is(TokenKind::kSymbol, "at", 1) && in.peek_is(TokenKind::kNumber, {}, 2)) {
          in.next();
          in.next();
          const Token& when = in.next();
          if (!tils_allowed) semantic(open, "timed initial literal requires :timed-initial-literals");
          TimedLiteral til;
          til.time = parse_decimal(when.text);
          if (til.time <= 0) semantic(when, "timed initial literal time must be greater than 0");
          in.expect(TokenKind::kLParen, "timed literal");
          if (in.peek_is(TokenKind::kSymbol, "not")) {
            in.next();
            til.atom = p.atom("timed literal");
            til.positive = false;
            in.expect(TokenKind::kRParen, "(not ...)");
          } else {
            til.atom = p.atom_tail(false, "timed literal");
          }
          in.expect(TokenKind::kRParen, "(at <time> <literal>)");
          if (derived.count(til.atom.predicate)) {
            semantic(open, "timed initial literal on derived predicate '" + til.atom.predicate +
                               "': only basic predicates may be affected");
          }
          problem.timed_literals.push_back(std::move(til));
          continue;
        }
        in.expect(TokenKind::kLParen, "initial fact");
        if (in.peek_is(TokenKind::kSymbol, "=")) {
          in.next();
          NumericInit ni;
          if (in.peek_is(TokenKind::kLParen)) {
            in.next();
            ni.fluent = p.atom_tail(true, "initial fluent value");
          } else {
            ni.fluent = p.zero_ary_fluent(in.next()).fluent;
          }
          const Token& value = in.next();
          if (value.kind != TokenKind::kNumber) in.fail(value, "number");
          ni.value = parse_decimal(value.text);
          in.expect(TokenKind::kRParen, "(= <fluent> <number>)");
          problem.numeric_init.push_back(std::move(ni));
          continue;
        }
        if (in.peek_is(TokenKind::kSymbol, "not")) {
          // Closed-world: a negative initial fact carries no information.
          in.next();
          p.atom("negative initial fact");
          in.expect(TokenKind::kRParen, "(not ...)");
          continue;
        }
        Atom fact = p.atom_tail(false, "initial fact");
        if (derived.count(fact.predicate)) {
          semantic(open, "initial state may not contain derived predicate '" + fact.predicate + "'");
        }
        problem.init.push_back(std::move(fact));
      }
      in.next();
    } else if (k == ":goal") {
      problem.goal = p.formula("goal");
      in.expect(TokenKind::kRParen, "(:goal ...)");
      has_goal = true;
    } else if (k == ":metric") {
      Metric m;
      const std::string dir = in.expect_name("metric direction");
      if (dir != "minimize" && dir != "maximize") in.fail(key, "minimize or maximize");
      m.minimize = dir == "minimize";
      p.context().allow_total_time = true;
      m.expression = p.expr();
      p.context().allow_total_time = false;
      in.expect(TokenKind::kRParen, "(:metric ...)");
      problem.metric = std::move(m);
    } else if (k == ":length") {
      while (!in.peek_is(TokenKind::kRParen)) in.skip_element();
      in.next();
    } else {
      semantic(key, "unknown problem section '" + k + "'");
    }
  }
  in.next();
  if (!in.at_end()) in.fail(in.peek(), "end of input after problem");
  if (!has_goal) throw SemanticError("problem '" + problem.name + "' has no :goal");

  // Ground atoms must respect declared parameter types.
  std::map<std::string, std::string> object_type;
  for (const auto& c : domain.constants) object_type[c.name] = c.types.front();
  for (const auto& o : problem.objects) object_type[o.name] = o.types.front();
  auto check_args = [&](const Atom& a, const PredicateDecl* decl) {
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      if (!hierarchy.matches(object_type.at(a.args[i]), decl->parameters[i].types)) {
        throw SemanticError("argument '" + a.args[i] + "' of " + print_atom(a) + " has the wrong type");
      }
    }
  };
  for (const Atom& a : problem.init) check_args(a, domain.find_predicate(a.predicate));
  for (const NumericInit& n : problem.numeric_init) check_args(n.fluent, domain.find_function(n.fluent.predicate));
  for (const TimedLiteral& t : problem.timed_literals) check_args(t.atom, domain.find_predicate(t.atom.predicate));

  std::stable_sort(problem.timed_literals.begin(), problem.timed_literals.end(),
                   [](const TimedLiteral& a, const TimedLiteral& b) { return a.time < b.time; });
  for (std::size_t i = 0; i < problem.timed_literals.size(); ++i) {
    for (std::size_t j = i + 1; j < problem.timed_literals.size() &&
                                problem.timed_literals[j].time == problem.timed_literals[i].time;
         ++j) {
      const auto& a = problem.timed_literals[i];
      const auto& b = problem.timed_literals[j];
      if (a.atom == b.atom && a.positive != b.positive) {
        throw SemanticError("timed initial literals at time " + to_string(a.time) +
                            " both add and delete " + print_atom(a.atom));
      }
    }
  }
  return problem;
}

}  // namespace pddlval
