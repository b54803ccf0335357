#include "pddlval/executor.hpp"

namespace pddlval {

Verdict validate(const GroundTask& task, const PlanFile& plan, const ValidateOptions& options) {
  Verdict verdict;
  const HappeningSequence seq = build_happenings(plan, task, options.tolerance);

  Trace& trace = verdict.trace;
  trace.t_end = seq.t_end;
  trace.initial = State{0, task.init, task.init_values};
  trace.initial.values.resize(task.fluents.size());
  trace.initial_closed = closure(trace.initial.facts, task.rules, task.facts.size(), trace.initial.values);

  std::optional<Failure> failure;
  for (const Happening& h : seq.happenings) {
    const State& pre = trace.final_state();
    HappeningResult r = execute_happening(pre, trace.final_closed(), h, task);
    if (!r.ok()) {
      failure = std::move(r.failure);
      break;
    }
    trace.steps.push_back(TraceStep{h, std::move(*r.state), std::move(*r.closed)});
  }

  // An invariant broken before the execution failure is the earlier error.
  if (auto broken = check_invariants(trace, seq.intervals, task)) {
    if (!failure || broken->time < failure->time) failure = std::move(broken);
  }
  if (failure) {
    verdict.failure = std::move(failure);
    return verdict;
  }

  const GoalOutcome goal = makespan_and_goal(trace, task.goal);
  const Rational last_time = trace.steps.empty() ? trace.t_end : trace.steps.back().happening.time;
  if (!goal.valid) {
    verdict.failure = Failure{last_time,
                              goal.undefined_numeric ? FailureReason::kUndefinedNumeric
                                                     : FailureReason::kGoalUnachieved,
                              goal.undefined_numeric ? "goal reads an undefined value"
                                                     : "goal is false in the final state",
                              {}};
    return verdict;
  }
  if (task.metric) {
    try {
      verdict.metric_value = evaluate_metric(*task.metric, *goal.makespan, trace.final_state());
    } catch (const UndefinedValueError& e) {
      std::string detail = "metric: ";
      detail += e.fluent() && *e.fluent() < task.fluents.size()
                    ? "value of " + task.fluents.name(*e.fluent()) + " is undefined"
                    : std::string(e.what());
      verdict.failure = Failure{last_time, FailureReason::kUndefinedNumeric, detail, {}};
      return verdict;
    }
  }
  verdict.valid = true;
  verdict.makespan = goal.makespan;
  return verdict;
}

Verdict validate(const DomainAst& domain, const ProblemAst& problem, const PlanFile& plan,
                 const ValidateOptions& options) {
  auto task = std::make_shared<const GroundTask>(ground(domain, problem));
  Verdict verdict = validate(*task, plan, options);
  verdict.task = std::move(task);
  return verdict;
}

}  // namespace pddlval
