#include "pddlval/evaluate.hpp"

namespace pddlval {

Rational evaluate_expr(const GroundExpr& e, const NumericContext& ctx) {
  using K = GroundExpr::Kind;
  switch (e.kind) {
    case K::kNumber: return e.value;
    case K::kFluent: {
      if (ctx.values == nullptr || e.fluent >= ctx.values->size() || !(*ctx.values)[e.fluent]) {
        throw UndefinedValueError("fluent has no value", e.fluent);
      }
      return *(*ctx.values)[e.fluent];
    }
    case K::kDuration:
      if (ctx.duration == nullptr) throw UndefinedValueError("?duration is not bound", std::nullopt);
      return *ctx.duration;
    case K::kTotalTime:
      if (ctx.total_time == nullptr) throw UndefinedValueError("total-time is not bound", std::nullopt);
      return *ctx.total_time;
    case K::kNeg: return -evaluate_expr(e.args.front(), ctx);
    case K::kAdd:
    case K::kMul: {
      Rational acc = evaluate_expr(e.args.front(), ctx);
      for (std::size_t i = 1; i < e.args.size(); ++i) {
        const Rational v = evaluate_expr(e.args[i], ctx);
        acc = e.kind == K::kAdd ? Rational(acc + v) : Rational(acc * v);
      }
      return acc;
    }
    case K::kSub: return evaluate_expr(e.args[0], ctx) - evaluate_expr(e.args[1], ctx);
    case K::kDiv: {
      const Rational den = evaluate_expr(e.args[1], ctx);
      if (den == 0) throw UndefinedValueError("division by zero", std::nullopt);
      return evaluate_expr(e.args[0], ctx) / den;
    }
  }
  return 0;
}

bool compare(CompareOp op, const Rational& lhs, const Rational& rhs) {
  switch (op) {
    case CompareOp::kLess: return lhs < rhs;
    case CompareOp::kLessEq: return lhs <= rhs;
    case CompareOp::kEq: return lhs == rhs;
    case CompareOp::kGreaterEq: return lhs >= rhs;
    case CompareOp::kGreater: return lhs > rhs;
  }
  return false;
}

bool evaluate_formula(const GroundFormula& f, std::span<const std::uint8_t> truth,
                      const NumericContext& ctx) {
  using K = GroundFormula::Kind;
  switch (f.kind) {
    case K::kTrue: return true;
    case K::kFalse: return false;
    case K::kFact: return f.fact < truth.size() && truth[f.fact] != 0;
    case K::kNotFact: return !(f.fact < truth.size() && truth[f.fact] != 0);
    case K::kCompare:
    case K::kNotCompare: {
      const bool holds =
          compare(f.op, evaluate_expr(f.operands[0], ctx), evaluate_expr(f.operands[1], ctx));
      return f.kind == K::kCompare ? holds : !holds;
    }
    case K::kAnd:
      for (const auto& c : f.children) {
        if (!evaluate_formula(c, truth, ctx)) return false;
      }
      return true;
    case K::kOr:
      for (const auto& c : f.children) {
        if (evaluate_formula(c, truth, ctx)) return true;
      }
      return false;
  }
  return false;
}

}  // namespace pddlval
