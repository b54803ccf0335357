#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pddlval/executor.hpp"

namespace pddlval::cli {

struct TraceEntry {
  std::string time;
  std::vector<std::string> members;
  std::vector<std::string> added;
  std::vector<std::string> deleted;
  std::map<std::string, std::string> fluents;
};

struct GroundStats {
  std::size_t facts = 0;
  std::size_t fluents = 0;
  std::size_t actions = 0;
  std::size_t durative_actions = 0;
  std::size_t rules = 0;
  std::size_t timed_literals = 0;
};

struct ErrorInfo {
  std::string kind;  // "io", "syntax", "semantic", "restriction"
  std::optional<int> restriction;
  std::string message;
};

struct Timing {
  double parse_ms = 0;
  double ground_ms = 0;
  double validate_ms = 0;
};

/// Everything a run reports; rendered either as text or as one JSON object.
struct Report {
  std::string status;  // "valid", "invalid", "ok" (check-only) or "error"
  std::optional<Failure> failure;
  std::optional<std::string> makespan;
  std::optional<std::string> metric_direction;
  std::optional<std::string> metric_value;
  std::optional<std::string> t_end;
  std::optional<std::size_t> happenings;
  std::optional<std::vector<TraceEntry>> trace;
  std::optional<GroundStats> stats;
  std::optional<ErrorInfo> error;
  Timing timing;
};

Report make_report(const Verdict& verdict, const GroundTask& task, int verbosity);
std::vector<TraceEntry> trace_entries(const Trace& trace, const GroundTask& task);
GroundStats ground_stats(const GroundTask& task);

nlohmann::json to_json(const Report& report);
std::string to_text(const Report& report);

}  // namespace pddlval::cli
