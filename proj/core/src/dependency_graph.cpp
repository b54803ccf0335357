#include "pddlval/dependency_graph.hpp"

#include <deque>

#include "pddlval/ground.hpp"

namespace pddlval {

void DependencyGraph::add_edge(FactId from, FactId to) { predecessors_[to].insert(from); }

bool DependencyGraph::has_edge(FactId from, FactId to) const {
  auto it = predecessors_.find(to);
  return it != predecessors_.end() && it->second.count(from) > 0;
}

std::size_t DependencyGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& [node, preds] : predecessors_) n += preds.size();
  return n;
}

const FactSet& DependencyGraph::predecessors(FactId node) const {
  static const FactSet kEmpty;
  auto it = predecessors_.find(node);
  return it == predecessors_.end() ? kEmpty : it->second;
}

FactSet DependencyGraph::facts_reaching(const FactSet& targets) const {
  FactSet reached;
  std::deque<FactId> queue(targets.begin(), targets.end());
  while (!queue.empty()) {
    const FactId node = queue.front();
    queue.pop_front();
    for (FactId pred : predecessors(node)) {
      if (reached.insert(pred).second) queue.push_back(pred);
    }
  }
  return reached;
}

bool DependencyGraph::has_path(FactId from, FactId to) const {
  return facts_reaching(FactSet{to}).count(from) > 0;
}

DependencyGraph build_dependency_graph(std::span<const GroundRule> rules) {
  DependencyGraph graph;
  FactSet body;
  for (const GroundRule& rule : rules) {
    body.clear();
    collect_facts(rule.body, body);
    for (FactId f : body) graph.add_edge(f, rule.head);
  }
  return graph;
}

FactSet dpre(const GroundAction& action, const DependencyGraph& graph) {
  return graph.facts_reaching(action.gpre);
}

}  // namespace pddlval
