#include "fixtures.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "pddlval/parser.hpp"

namespace pddlval::testing {

std::string fixture_path(const std::string& relative) {
  return std::string(PDDLVAL_FIXTURE_DIR) + "/" + relative;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Loaded load(const std::string& domain, const std::string& problem) {
  Loaded l;
  l.domain = parse_domain(read_text(fixture_path(domain)));
  l.problem = parse_problem(read_text(fixture_path(problem)), l.domain);
  l.task = std::make_shared<GroundTask>(ground(l.domain, l.problem));
  return l;
}

PlanFile load_plan(const Loaded& loaded, const std::string& plan) {
  return plan_from_text(loaded, read_text(fixture_path(plan)));
}

PlanFile plan_from_text(const Loaded& loaded, const std::string& text) {
  return parse_plan(text, loaded.domain, loaded.problem);
}

const std::vector<PlanCase>& plan_cases() {
  using R = FailureReason;
  static const std::vector<PlanCase> cases = {
      {"blocksworld/domain.pddl", "blocksworld/three.pddl", "blocksworld/three-move.plan", true,
       Rational(1), {}, {}},
      {"blocksworld/domain.pddl", "blocksworld/reverse.pddl", "blocksworld/three-reverse.plan", true,
       Rational(4), {}, {}},
      {"blocksworld/domain.pddl", "blocksworld/two-stacks.pddl", "blocksworld/parallel.plan", true,
       Rational(1), {}, {}},
      {"blocksworld/domain-derived-pre.pddl", "blocksworld/two-stacks-derived.pddl",
       "blocksworld/parallel.plan", false, {}, R::kMutexPair, Rational(1)},
      {"blocksworld/domain-derived-pre.pddl", "blocksworld/two-stacks-derived.pddl",
       "blocksworld/sequential.plan", true, Rational(2), {}, {}},
      {"shop/domain.pddl", "shop/shopping.pddl", "shop/at-10.plan", true, Rational(10), {}, {}},
      {"shop/domain.pddl", "shop/shopping.pddl", "shop/at-8.plan", false, {}, R::kPreconditionFalse,
       Rational(8)},
      {"shop/domain.pddl", "shop/open-window.pddl", "shop/empty.plan", false, {}, R::kGoalUnachieved,
       Rational(20)},
      {"shop/domain.pddl", "shop/opens-at-9.pddl", "shop/empty.plan", true, Rational(9), {}, {}},
      {"shop/domain.pddl", "shop/browsing.pddl", "shop/browse-10.plan", true, Rational(12), {}, {}},
      {"shop/domain.pddl", "shop/browsing.pddl", "shop/browse-19.plan", false, {},
       R::kInvariantViolated, Rational(20)},
      {"shop/domain.pddl", "shop/browsing.pddl", "shop/browse-wrong-duration.plan", false, {},
       R::kActivityMismatch, Rational(10)},
      {"fuel/domain.pddl", "fuel/two-trucks.pddl", "fuel/refuel.plan", true, Rational(17, 2), {}, {}},
      {"fuel/domain.pddl", "fuel/two-trucks.pddl", "fuel/no-refuel.plan", false, {},
       R::kPreconditionFalse, Rational(9, 2)},
      {"fuel/domain.pddl", "fuel/two-trucks.pddl", "fuel/wrong-duration.plan", false, {},
       R::kActivityMismatch, Rational(1, 2)},
      {"fuel/domain.pddl", "fuel/two-trucks.pddl", "fuel/refuel-race.plan", false, {},
       R::kPreconditionFalse, Rational(7, 2)},
      {"briefcase/domain.pddl", "briefcase/paycheck.pddl", "briefcase/deliver.plan", true, Rational(3),
       {}, {}},
      {"briefcase/domain.pddl", "briefcase/paycheck.pddl", "briefcase/forget.plan", false, {},
       R::kGoalUnachieved, Rational(4)},
  };
  return cases;
}

std::vector<std::pair<std::string, std::string>> fixture_tasks() {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& c : plan_cases()) {
    std::pair<std::string, std::string> p{c.domain, c.problem};
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  for (const auto& c : lint_cases()) {
    if (c.restriction == 0) out.emplace_back(c.domain, c.problem);
  }
  return out;
}

std::vector<LintCase> lint_cases() {
  namespace fs = std::filesystem;
  std::vector<LintCase> out;
  for (const char* folder : {"lint/illegal", "lint/legal"}) {
    std::vector<std::string> names;
    for (const auto& entry : fs::directory_iterator(fixture_path(folder))) {
      const std::string name = entry.path().filename().string();
      if (entry.path().extension() != ".pddl" || name.find("-problem.pddl") != std::string::npos) continue;
      names.push_back(name);
    }
    std::sort(names.begin(), names.end());
    for (const auto& name : names) {
      const std::string stem = name.substr(0, name.size() - 5);
      LintCase c;
      c.domain = std::string(folder) + "/" + name;
      c.problem = std::string(folder) + "/" + stem + "-problem.pddl";
      // Illegal files are named r<N>-...; legal ones carry no prefix.
      if (std::string(folder) == "lint/illegal") c.restriction = stem[1] - '0';
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace pddlval::testing
