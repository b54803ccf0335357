#pragma once

#include <string>

namespace pddlval::bench {

/// Blocksworld with the recursive above rule.
const std::string& tower_domain();
/// One tower b1 on b2 on ... on bn.
std::string tower_problem(int n);
/// Untimed plan that unstacks the whole tower onto the table.
std::string unstack_plan(int n);

}  // namespace pddlval::bench
