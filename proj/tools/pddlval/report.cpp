#include "report.hpp"

#include <sstream>

namespace pddlval::cli {

namespace {

std::string member_label(const HappeningMember& m) {
  switch (m.action->origin) {
    case ActionOrigin::kStart: return "start " + m.action->name;
    case ActionOrigin::kEnd: return "end " + m.action->name;
    default: return m.action->name;
  }
}

}  // namespace

std::vector<TraceEntry> trace_entries(const Trace& trace, const GroundTask& task) {
  std::vector<TraceEntry> out;
  const State* prev = &trace.initial;
  const ClosedState* prev_closed = &trace.initial_closed;
  for (const TraceStep& step : trace.steps) {
    TraceEntry e;
    e.time = to_string(step.happening.time);
    for (const auto& m : step.happening.members) e.members.push_back(member_label(m));
    const FactSet before = prev_closed->all();
    const FactSet after = step.closed.all();
    for (FactId f : after) {
      if (!before.count(f)) e.added.push_back(task.facts.name(f));
    }
    for (FactId f : before) {
      if (!after.count(f)) e.deleted.push_back(task.facts.name(f));
    }
    for (std::size_t i = 0; i < step.state.values.size(); ++i) {
      const auto& now = step.state.values[i];
      const std::optional<Rational> was = i < prev->values.size() ? prev->values[i] : std::nullopt;
      if (now && now != was) e.fluents[task.fluents.name(static_cast<FluentId>(i))] = to_string(*now);
    }
    out.push_back(std::move(e));
    prev = &step.state;
    prev_closed = &step.closed;
  }
  return out;
}

GroundStats ground_stats(const GroundTask& task) {
  return {task.facts.size(), task.fluents.size(), task.actions.size(),
          task.durative_actions.size(), task.rules.size(), task.timed_literals.size()};
}

Report make_report(const Verdict& verdict, const GroundTask& task, int verbosity) {
  Report r;
  r.status = verdict.valid ? "valid" : "invalid";
  r.failure = verdict.failure;
  if (verdict.makespan) r.makespan = to_string(*verdict.makespan);
  if (task.metric) r.metric_direction = task.metric->minimize ? "minimize" : "maximize";
  if (verdict.metric_value) r.metric_value = to_string(*verdict.metric_value);
  r.t_end = to_string(verdict.trace.t_end);
  r.happenings = verdict.trace.steps.size();
  if (verbosity > 0) r.trace = trace_entries(verdict.trace, task);
  return r;
}

nlohmann::json to_json(const Report& r) {
  using nlohmann::json;
  json j;
  j["status"] = r.status;
  if (r.error) {
    json e{{"kind", r.error->kind}, {"message", r.error->message}};
    e["restriction"] = r.error->restriction ? json(*r.error->restriction) : json(nullptr);
    j["error"] = e;
  }
  if (r.status == "valid" || r.status == "invalid") {
    j["valid"] = r.status == "valid";
    if (r.failure) {
      j["failure"] = {{"time", to_string(r.failure->time)},
                      {"reason", std::string(to_string(r.failure->reason))},
                      {"detail", r.failure->detail},
                      {"actions", r.failure->actions}};
    } else {
      j["failure"] = nullptr;
    }
    j["makespan"] = r.makespan ? json(*r.makespan) : json(nullptr);
    if (r.metric_direction) {
      j["metric"] = {{"direction", *r.metric_direction},
                     {"value", r.metric_value ? json(*r.metric_value) : json(nullptr)}};
    } else {
      j["metric"] = nullptr;
    }
    j["t_end"] = r.t_end ? json(*r.t_end) : json(nullptr);
    j["happenings"] = r.happenings.value_or(0);
  }
  if (r.trace) {
    json trace = json::array();
    for (const auto& e : *r.trace) {
      trace.push_back({{"time", e.time},
                       {"members", e.members},
                       {"added", e.added},
                       {"deleted", e.deleted},
                       {"fluents", e.fluents}});
    }
    j["trace"] = trace;
  }
  if (r.stats) {
    j["ground"] = {{"facts", r.stats->facts},
                   {"fluents", r.stats->fluents},
                   {"actions", r.stats->actions},
                   {"durative_actions", r.stats->durative_actions},
                   {"rules", r.stats->rules},
                   {"timed_literals", r.stats->timed_literals}};
  }
  j["timing"] = {{"parse_ms", r.timing.parse_ms},
                 {"ground_ms", r.timing.ground_ms},
                 {"validate_ms", r.timing.validate_ms}};
  return j;
}

std::string to_text(const Report& r) {
  std::ostringstream out;
  out << "status: " << r.status << '\n';
  if (r.error) {
    out << "error: " << r.error->kind;
    if (r.error->restriction) out << " (restriction " << *r.error->restriction << ')';
    out << ": " << r.error->message << '\n';
  }
  if (r.failure) {
    out << "failure: " << to_string(r.failure->reason) << " at " << to_string(r.failure->time) << '\n'
        << "detail: " << r.failure->detail << '\n';
    for (const auto& a : r.failure->actions) out << "action: " << a << '\n';
  }
  if (r.status == "valid" || r.status == "invalid") {
    out << "makespan: " << r.makespan.value_or("none") << '\n';
    if (r.metric_direction) {
      out << "metric: " << *r.metric_direction << ' ' << r.metric_value.value_or("none") << '\n';
    }
    out << "t_end: " << r.t_end.value_or("0") << '\n';
    out << "happenings: " << r.happenings.value_or(0) << '\n';
  }
  if (r.trace) {
    out << "trace:\n";
    for (const auto& e : *r.trace) {
      out << "  " << e.time << ':';
      for (const auto& m : e.members) out << ' ' << m;
      out << " |";
      for (const auto& f : e.added) out << " +" << f;
      for (const auto& f : e.deleted) out << " -" << f;
      out << " |";
      for (const auto& [name, value] : e.fluents) out << ' ' << name << '=' << value;
      out << '\n';
    }
  }
  if (r.stats) {
    out << "ground: facts=" << r.stats->facts << " fluents=" << r.stats->fluents
        << " actions=" << r.stats->actions << " durative_actions=" << r.stats->durative_actions
        << " rules=" << r.stats->rules << " timed_literals=" << r.stats->timed_literals << '\n';
  }
  out << "timing: parse_ms=" << r.timing.parse_ms << " ground_ms=" << r.timing.ground_ms
      << " validate_ms=" << r.timing.validate_ms << '\n';
  return out.str();
}

}  // namespace pddlval::cli
