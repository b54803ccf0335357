#include "pddlval/executor.hpp"

namespace pddlval {

namespace {

std::string member_label(const HappeningMember& m) {
  switch (m.action->origin) {
    case ActionOrigin::kStart: return "start" + m.action->name;
    case ActionOrigin::kEnd: return "end" + m.action->name;
    default: return m.action->name;
  }
}

}  // namespace

std::vector<std::string> trace_records(const Trace& trace, const GroundTask& task) {
  std::vector<std::string> lines;
  const State* prev = &trace.initial;
  const ClosedState* prev_closed = &trace.initial_closed;
  for (const TraceStep& step : trace.steps) {
    std::string line = to_string(step.happening.time) + ":";
    for (const HappeningMember& m : step.happening.members) line += " " + member_label(m);
    line += " |";
    const FactSet before = prev_closed->all();
    const FactSet after = step.closed.all();
    for (FactId f : before) {
      if (!after.count(f)) line += " -" + task.facts.name(f);
    }
    for (FactId f : after) {
      if (!before.count(f)) line += " +" + task.facts.name(f);
    }
    line += " |";
    for (std::size_t i = 0; i < step.state.values.size(); ++i) {
      const auto& now = step.state.values[i];
      const std::optional<Rational> was = i < prev->values.size() ? prev->values[i] : std::nullopt;
      if (now != was && now) line += " " + task.fluents.name(static_cast<FluentId>(i)) + "=" + to_string(*now);
    }
    lines.push_back(std::move(line));
    prev = &step.state;
    prev_closed = &step.closed;
  }
  return lines;
}

}  // namespace pddlval
