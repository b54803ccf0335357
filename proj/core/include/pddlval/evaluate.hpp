#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>

#include "pddlval/ground.hpp"

namespace pddlval {

/// Reading a fluent that has no value (or dividing by zero).
class UndefinedValueError : public std::runtime_error {
 public:
  UndefinedValueError(const std::string& message, std::optional<FluentId> fluent)
      : std::runtime_error(message), fluent_(fluent) {}
  std::optional<FluentId> fluent() const { return fluent_; }

 private:
  std::optional<FluentId> fluent_;
};

/// Numeric side of an evaluation: fluent values plus the optional bindings
/// for `?duration` and `total-time`.
struct NumericContext {
  const NumericState* values = nullptr;
  const Rational* duration = nullptr;
  const Rational* total_time = nullptr;
};

/// Throws UndefinedValueError when a needed value is missing.
Rational evaluate_expr(const GroundExpr& expr, const NumericContext& ctx);

bool compare(CompareOp op, const Rational& lhs, const Rational& rhs);

/// Satisfaction of a ground NNF formula; `truth[f]` != 0 iff fact f holds.
/// Facts beyond the end of `truth` are false.
bool evaluate_formula(const GroundFormula& formula, std::span<const std::uint8_t> truth,
                      const NumericContext& ctx);

}  // namespace pddlval
