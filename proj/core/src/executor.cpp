#include "pddlval/executor.hpp"

#include <algorithm>
#include <map>

#include "pddlval/errors.hpp"

namespace pddlval {

std::string_view to_string(FailureReason reason) {
  switch (reason) {
    case FailureReason::kPreconditionFalse: return "precondition-false";
    case FailureReason::kMutexPair: return "mutex-pair";
    case FailureReason::kActivityMismatch: return "activity-mismatch";
    case FailureReason::kUndefinedNumeric: return "undefined-numeric";
    case FailureReason::kInvariantViolated: return "invariant-violated";
    case FailureReason::kGoalUnachieved: return "goal-unachieved";
  }
  return "unknown";
}

namespace {

template <class Set>
bool intersects(const Set& a, const Set& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

bool reads_written(const GroundAction& reader, const GroundAction& writer) {
  return intersects(reader.gpre, writer.add) || intersects(reader.gpre, writer.del) ||
         intersects(reader.dpre, writer.add) || intersects(reader.dpre, writer.del);
}

struct Event {
  Rational time;
  HappeningMember member;
  // For durative steps: which interval and whether this is its start.
  std::size_t interval = HappeningMember::kNoStep;
  bool is_start = false;
};

}  // namespace

bool mutex(const GroundAction& a, const GroundAction& b) {
  if (reads_written(a, b) || reads_written(b, a)) return true;
  if (intersects(a.add, b.del) || intersects(b.add, a.del)) return true;
  if (intersects(a.lhs, b.rhs) || intersects(a.rhs, b.lhs)) return true;
  // Shared assignment targets commute only if both sides change them additively.
  for (FluentId f : a.lhs) {
    if (b.lhs.count(f) && !(a.additive_lhs.count(f) && b.additive_lhs.count(f))) return true;
  }
  return false;
}

bool evaluate(const GroundFormula& formula, const ClosedState& state, const NumericContext& numeric) {
  return evaluate_formula(formula, state.truth, numeric);
}

HappeningSequence build_happenings(const PlanFile& plan, const GroundTask& task,
                                   const Rational& tolerance) {
  HappeningSequence seq;
  std::vector<Event> events;
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    const PlanStep& step = plan.steps[i];
    const std::string sig = signature(step.action, step.args);
    if (step.duration) {
      const GroundDurativeAction* da = task.find_durative(sig);
      if (da == nullptr) throw SemanticError("no ground durative action " + sig);
      DurativeInterval interval;
      interval.action = da;
      interval.step = i;
      interval.start = step.time;
      interval.end = step.time + *step.duration;
      interval.duration = *step.duration;
      const std::size_t idx = seq.intervals.size();
      seq.intervals.push_back(interval);
      events.push_back({interval.start, {&da->start, da, *step.duration, i}, idx, true});
      events.push_back({interval.end, {&da->end, nullptr, *step.duration, i}, idx, false});
      seq.t_end = std::max(seq.t_end, interval.end);
    } else {
      const GroundAction* a = task.find_action(sig);
      if (a == nullptr) throw SemanticError("no ground action " + sig);
      events.push_back({step.time, {a, nullptr, std::nullopt, i}});
      seq.t_end = std::max(seq.t_end, step.time);
    }
  }
  for (const GroundTimedLiteral& til : task.timed_literals) {
    events.push_back({til.time, {&til.action, nullptr, std::nullopt, HappeningMember::kNoStep}});
  }
  std::stable_sort(events.begin(), events.end(),
                   [](const Event& a, const Event& b) { return a.time < b.time; });

  for (Event& e : events) {
    if (seq.happenings.empty() || e.time - seq.happenings.back().time > tolerance) {
      seq.happenings.push_back({e.time, {}});
    }
    seq.happenings.back().members.push_back(e.member);
    if (e.interval != HappeningMember::kNoStep) {
      auto& interval = seq.intervals[e.interval];
      (e.is_start ? interval.start_happening : interval.end_happening) = seq.happenings.size() - 1;
    }
  }
  return seq;
}

HappeningResult execute_happening(const State& state, const ClosedState& closed, const Happening& h,
                                  const GroundTask& task) {
  HappeningResult result;
  auto fail = [&](FailureReason reason, std::string detail, std::vector<std::string> actions) {
    result.failure = Failure{h.time, reason, std::move(detail), std::move(actions)};
    return result;
  };
  auto numeric_for = [&](const HappeningMember& m) {
    return NumericContext{&state.values, m.duration ? &*m.duration : nullptr, nullptr};
  };
  auto undefined_detail = [&](const UndefinedValueError& e) {
    if (e.fluent() && *e.fluent() < task.fluents.size()) {
      return "value of " + task.fluents.name(*e.fluent()) + " is undefined";
    }
    return std::string(e.what());
  };

  // Activity: every member must be applicable in the current state.
  for (const HappeningMember& m : h.members) {
    try {
      if (!evaluate(m.action->precondition, closed, numeric_for(m))) {
        return fail(FailureReason::kPreconditionFalse,
                    "precondition of " + m.action->name + " is false", {m.action->name});
      }
      if (m.durative != nullptr) {
        const Rational required = evaluate_expr(m.durative->duration, numeric_for(m));
        if (required != *m.duration) {
          return fail(FailureReason::kActivityMismatch,
                      "duration of " + m.durative->name + " must be " + to_string(required) +
                          ", plan states " + to_string(*m.duration),
                      {m.action->name});
        }
      }
    } catch (const UndefinedValueError& e) {
      return fail(FailureReason::kUndefinedNumeric, undefined_detail(e), {m.action->name});
    }
  }

  for (std::size_t i = 0; i < h.members.size(); ++i) {
    for (std::size_t j = i + 1; j < h.members.size(); ++j) {
      if (mutex(*h.members[i].action, *h.members[j].action)) {
        const std::string a = h.members[i].action->name;
        const std::string b = h.members[j].action->name;
        return fail(FailureReason::kMutexPair, a + " and " + b + " are mutex", {a, b});
      }
    }
  }

  FactSet adds;
  FactSet dels;
  std::vector<std::pair<const NumericEffect*, Rational>> updates;
  for (const HappeningMember& m : h.members) {
    try {
      for (const ConditionalEffect& e : m.action->effects) {
        if (!evaluate(e.condition, closed, numeric_for(m))) continue;
        adds.insert(e.add.begin(), e.add.end());
        dels.insert(e.del.begin(), e.del.end());
        for (const NumericEffect& n : e.numeric) {
          updates.emplace_back(&n, evaluate_expr(n.value, numeric_for(m)));
        }
      }
    } catch (const UndefinedValueError& e) {
      return fail(FailureReason::kUndefinedNumeric, undefined_detail(e), {m.action->name});
    }
  }

  State next;
  next.time = h.time;
  next.values = state.values;
  if (next.values.size() < task.fluents.size()) next.values.resize(task.fluents.size());
  for (const auto& [effect, rhs] : updates) {
    std::optional<Rational>& slot = next.values[effect->target];
    if (effect->op == AssignOp::kAssign) {
      slot = rhs;
      continue;
    }
    if (!slot) {
      return fail(FailureReason::kUndefinedNumeric,
                  "value of " + task.fluents.name(effect->target) + " is undefined", {});
    }
    switch (effect->op) {
      case AssignOp::kIncrease: *slot += rhs; break;
      case AssignOp::kDecrease: *slot -= rhs; break;
      case AssignOp::kScaleUp: *slot *= rhs; break;
      case AssignOp::kScaleDown:
        if (rhs == 0) return fail(FailureReason::kUndefinedNumeric, "scale-down by zero", {});
        *slot /= rhs;
        break;
      case AssignOp::kAssign: break;
    }
  }

  for (FactId f : state.facts) {
    if (!dels.count(f)) next.facts.insert(f);
  }
  next.facts.insert(adds.begin(), adds.end());
  // Derived facts never persist across a happening; they are recomputed.
  for (auto it = next.facts.begin(); it != next.facts.end();) {
    it = (*it < task.facts.size() && task.facts.is_derived(*it)) ? next.facts.erase(it) : std::next(it);
  }
  result.closed = closure(next.facts, task.rules, task.facts.size(), next.values);
  result.state = std::move(next);
  return result;
}

std::optional<Failure> check_invariants(const Trace& trace, std::span<const DurativeInterval> intervals,
                                        const GroundTask& task) {
  std::optional<Failure> earliest;
  for (const DurativeInterval& interval : intervals) {
    const GroundAction& invariant = interval.action->invariant;
    if (invariant.precondition.kind == GroundFormula::Kind::kTrue) continue;
    const NumericContext base{nullptr, &interval.duration, nullptr};
    for (std::size_t k = interval.start_happening;
         k < interval.end_happening && k < trace.steps.size(); ++k) {
      const TraceStep& step = trace.steps[k];
      if (earliest && earliest->time <= step.happening.time) break;
      NumericContext ctx = base;
      ctx.values = &step.state.values;
      std::optional<Failure> failure;
      try {
        if (!evaluate(invariant.precondition, step.closed, ctx)) {
          failure = Failure{step.happening.time, FailureReason::kInvariantViolated,
                            "over-all condition of " + invariant.name + " [" + to_string(interval.start) +
                                ", " + to_string(interval.end) + "] is false",
                            {invariant.name}};
        }
      } catch (const UndefinedValueError& e) {
        std::string detail = e.what();
        if (e.fluent() && *e.fluent() < task.fluents.size()) {
          detail = "value of " + task.fluents.name(*e.fluent()) + " is undefined";
        }
        failure = Failure{step.happening.time, FailureReason::kUndefinedNumeric, detail, {invariant.name}};
      }
      if (failure) {
        earliest = std::move(failure);
        break;
      }
    }
  }
  return earliest;
}

GoalOutcome makespan_and_goal(const Trace& trace, const GroundFormula& goal) {
  GoalOutcome out;
  const std::size_t n = trace.steps.size();
  // holds[k]: goal after happening k-1 (k = 0 is the initial state).
  std::vector<int> holds(n + 1, 0);
  for (std::size_t k = 0; k <= n; ++k) {
    const State& s = k == 0 ? trace.initial : trace.steps[k - 1].state;
    const ClosedState& c = k == 0 ? trace.initial_closed : trace.steps[k - 1].closed;
    try {
      holds[k] = evaluate(goal, c, NumericContext{&s.values, nullptr, nullptr}) ? 1 : 0;
    } catch (const UndefinedValueError&) {
      holds[k] = 0;
      if (k == n) out.undefined_numeric = true;
    }
  }
  if (!holds[n]) return out;
  out.valid = true;

  // suffix[k]: goal holds after every happening from index k-1 on.
  std::size_t first_ok = n;  // smallest k with holds[k..n] all true
  while (first_ok > 0 && holds[first_ok - 1]) --first_ok;

  // The state at time t is the one after the last happening at or before t.
  auto state_index_at = [&](const Rational& t) {
    std::size_t k = 0;
    while (k < n && trace.steps[k].happening.time <= t) ++k;
    return k;
  };
  const std::size_t at_end = state_index_at(trace.t_end);
  if (at_end >= first_ok) {
    out.makespan = trace.t_end;
  } else {
    // Candidate times after t_end are happening times; the earliest one whose
    // state starts an all-true suffix wins.
    out.makespan = trace.steps[first_ok - 1].happening.time;
  }
  return out;
}

Rational evaluate_metric(const GroundMetric& metric, const Rational& makespan, const State& final_state) {
  return evaluate_expr(metric.expression, NumericContext{&final_state.values, nullptr, &makespan});
}

}  // namespace pddlval
