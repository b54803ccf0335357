#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include <boost/container/flat_set.hpp>

namespace pddlval {

using FactId = std::uint32_t;
using FactSet = boost::container::flat_set<FactId>;

struct GroundRule;
struct GroundAction;

/// Directed graph over ground facts: F -> F' iff some ground rule has head F'
/// and mentions F in its body.
class DependencyGraph {
 public:
  void add_edge(FactId from, FactId to);

  bool has_edge(FactId from, FactId to) const;
  /// Path of length >= 1.
  bool has_path(FactId from, FactId to) const;
  std::size_t edge_count() const;
  const FactSet& predecessors(FactId node) const;

  /// Facts with a path of length >= 1 into some member of `targets`.
  FactSet facts_reaching(const FactSet& targets) const;

 private:
  std::unordered_map<FactId, FactSet> predecessors_;
};

DependencyGraph build_dependency_graph(std::span<const GroundRule> rules);

/// Facts that can influence the derived facts of the action's precondition.
FactSet dpre(const GroundAction& action, const DependencyGraph& graph);

}  // namespace pddlval
