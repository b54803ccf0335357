#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pddlval/ast.hpp"
#include "pddlval/executor.hpp"
#include "pddlval/ground.hpp"
#include "pddlval/rational.hpp"

namespace pddlval::testing {

/// Absolute path of a file below tests/fixtures.
std::string fixture_path(const std::string& relative);
std::string read_text(const std::string& path);

struct Loaded {
  DomainAst domain;
  ProblemAst problem;
  std::shared_ptr<GroundTask> task;
};

Loaded load(const std::string& domain, const std::string& problem);
PlanFile load_plan(const Loaded& loaded, const std::string& plan);
PlanFile plan_from_text(const Loaded& loaded, const std::string& text);

/// A fixture plan with its expected verdict.
struct PlanCase {
  std::string domain;
  std::string problem;
  std::string plan;
  bool valid = false;
  std::optional<Rational> makespan;
  std::optional<FailureReason> failure;
  std::optional<Rational> failure_time;
};

const std::vector<PlanCase>& plan_cases();

/// Every domain/problem pair of the fixture corpus that grounds without error.
std::vector<std::pair<std::string, std::string>> fixture_tasks();

struct LintCase {
  std::string domain;
  std::string problem;
  int restriction = 0;  // 0 for legal domains
};

/// The restriction-linting corpus: 9 illegal and 9 legal domains.
std::vector<LintCase> lint_cases();

}  // namespace pddlval::testing
