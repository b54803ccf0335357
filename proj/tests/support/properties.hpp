#pragma once

#include <string>

#include "oracles.hpp"

namespace pddlval::testing {

struct DegenerateStep {
  bool matches = false;
  bool executed = false;  // both sides produced a successor state
  std::string detail;     // why they differ, when they do
};

/// One random derived-free happening: execute_happening against eq2_execute.
DegenerateStep degenerate_step(Rng& rng);

}  // namespace pddlval::testing
