#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pddlval/ast.hpp"
#include "pddlval/closure.hpp"
#include "pddlval/evaluate.hpp"
#include "pddlval/ground.hpp"

namespace pddlval {

/// (t, s, x): time, basic facts and fluent values. Derived facts are never
/// stored; they come from closure().
struct State {
  Rational time;
  FactSet facts;
  NumericState values;

  friend bool operator==(const State&, const State&) = default;
};

struct HappeningMember {
  static constexpr std::size_t kNoStep = std::numeric_limits<std::size_t>::max();

  const GroundAction* action = nullptr;
  /// Set for the start part of a durative step; its duration constraint is
  /// checked against `duration` in the state the happening executes in.
  const GroundDurativeAction* durative = nullptr;
  std::optional<Rational> duration;  // binds ?duration
  std::size_t step = kNoStep;        // plan step index, or kNoStep for timed literals
};

struct Happening {
  Rational time;
  std::vector<HappeningMember> members;
};

/// Execution interval of one durative plan step.
struct DurativeInterval {
  const GroundDurativeAction* action = nullptr;
  std::size_t step = 0;
  Rational start;
  Rational end;
  Rational duration;
  std::size_t start_happening = 0;
  std::size_t end_happening = 0;
};

struct HappeningSequence {
  std::vector<Happening> happenings;  // strictly increasing times
  std::vector<DurativeInterval> intervals;
  Rational t_end;  // largest plan time (durative ends included), 0 for the empty plan
};

enum class FailureReason {
  kPreconditionFalse,
  kMutexPair,
  kActivityMismatch,
  kUndefinedNumeric,
  kInvariantViolated,
  kGoalUnachieved,
};

std::string_view to_string(FailureReason reason);

struct Failure {
  Rational time;
  FailureReason reason = FailureReason::kPreconditionFalse;
  std::string detail;
  std::vector<std::string> actions;
};

struct TraceStep {
  Happening happening;
  State state;  // after execution
  ClosedState closed;
};

struct Trace {
  State initial;
  ClosedState initial_closed;
  std::vector<TraceStep> steps;
  Rational t_end;

  const State& final_state() const { return steps.empty() ? initial : steps.back().state; }
  const ClosedState& final_closed() const {
    return steps.empty() ? initial_closed : steps.back().closed;
  }
};

struct Verdict {
  bool valid = false;
  std::optional<Failure> failure;
  std::optional<Rational> makespan;
  std::optional<Rational> metric_value;
  Trace trace;
  /// Owner of the ground actions the trace points to, when validate()
  /// grounded the task itself.
  std::shared_ptr<const GroundTask> task;
};

struct ValidateOptions {
  /// Happening times whose distance to the first time of a group is at most
  /// this value are merged into that group's happening. 0 = exact grouping.
  Rational tolerance = 0;
};

/// Merges the plan's timed simple actions (durative steps split into start
/// at t and end at t + duration) with the timed initial literals.
HappeningSequence build_happenings(const PlanFile& plan, const GroundTask& task,
                                   const Rational& tolerance = 0);

/// True iff the two actions may interfere: propositional interference
/// including derived-precondition dependencies, add/delete conflicts, or
/// numeric read/write and write/write conflicts other than commuting
/// increase/decrease on both sides.
bool mutex(const GroundAction& a, const GroundAction& b);

/// Satisfaction in a closed state.
bool evaluate(const GroundFormula& formula, const ClosedState& state, const NumericContext& numeric);

struct HappeningResult {
  std::optional<State> state;
  std::optional<ClosedState> closed;
  std::optional<Failure> failure;

  bool ok() const { return state.has_value(); }
};

/// Executes one happening from `state` (whose closure is `closed`). The
/// result is undefined when a member's precondition is false, a durative
/// start's stated duration differs from its constraint, any member pair is
/// mutex, or a needed fluent has no value. Otherwise the new basic state is
/// (s \ Del) u Add with derived facts removed and the closure recomputed, and
/// the fluents are updated with right-hand sides read in `state`.
HappeningResult execute_happening(const State& state, const ClosedState& closed, const Happening& h,
                                  const GroundTask& task);

/// Every over-all condition must hold in the state after its start
/// happening and after each happening strictly before its end happening.
/// Only the executed prefix of the trace is checked; reports the earliest
/// violation.
std::optional<Failure> check_invariants(const Trace& trace, std::span<const DurativeInterval> intervals,
                                        const GroundTask& task);

struct GoalOutcome {
  bool valid = false;
  std::optional<Rational> makespan;
  bool undefined_numeric = false;
};

/// The makespan is the smallest t >= t_end such that the goal holds in the
/// state at time t and after every later happening.
GoalOutcome makespan_and_goal(const Trace& trace, const GroundFormula& goal);

/// Metric expression with total-time bound to the makespan. Throws
/// UndefinedValueError on an undefined fluent.
Rational evaluate_metric(const GroundMetric& metric, const Rational& makespan, const State& final_state);

Verdict validate(const GroundTask& task, const PlanFile& plan, const ValidateOptions& options = {});

/// Grounds and validates. Input errors (restrictions, semantic errors) throw;
/// plan failures are reported in the Verdict.
Verdict validate(const DomainAst& domain, const ProblemAst& problem, const PlanFile& plan,
                 const ValidateOptions& options = {});

/// One line per happening: time, members, fact and fluent changes.
std::vector<std::string> trace_records(const Trace& trace, const GroundTask& task);

}  // namespace pddlval
