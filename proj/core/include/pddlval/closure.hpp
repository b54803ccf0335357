#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pddlval/ground.hpp"

namespace pddlval {

/// Set of basic facts; holds no derived fact.
using BasicState = FactSet;

/// A basic state together with everything the rules derive from it.
struct ClosedState {
  FactSet basic;
  FactSet derived;
  std::vector<std::uint8_t> truth;  // dense membership over basic and derived

  bool holds(FactId f) const { return f < truth.size() && truth[f] != 0; }
  FactSet all() const;

  friend bool operator==(const ClosedState& a, const ClosedState& b) {
    return a.basic == b.basic && a.derived == b.derived;
  }
};

/// Least fixed point of the ground rules over `basic`, computed semi-naively:
/// a rule is re-examined only when a derived fact its body mentions becomes
/// true. Numeric comparisons in rule bodies read `values` and are static for
/// the whole computation; a comparison over an undefined value is false.
ClosedState closure(const BasicState& basic, std::span<const GroundRule> rules,
                    std::size_t fact_count, const NumericState& values = {});

/// Naive loop: sweep the rules in `order` and add every applicable head,
/// repeating until nothing changes.
ClosedState closure_in_order(const BasicState& basic, std::span<const GroundRule> rules,
                             std::span<const std::size_t> order, std::size_t fact_count,
                             const NumericState& values = {});

/// Reference implementation that intersects every rule-closed superset of
/// `basic` obtained by adding rule heads. Exponential; refuses (throws
/// std::length_error) when more than `max_candidates` heads are open.
ClosedState closure_oracle(const BasicState& basic, std::span<const GroundRule> rules,
                           std::size_t fact_count, const NumericState& values = {},
                           std::size_t max_candidates = 16);

}  // namespace pddlval
