#include <map>
#include <sstream>

#include "pddlval/errors.hpp"
#include "pddlval/parser.hpp"
#include "pddlval/types.hpp"

namespace pddlval {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void plan_error(int line, const std::string& message) {
  throw SyntaxError("plan: " + message, line, 1);
}

Rational number_or_fail(std::string_view text, int line) {
  try {
    return parse_decimal(trim(text));
  } catch (const std::invalid_argument&) {
    plan_error(line, "malformed number '" + std::string(trim(text)) + "'");
  }
}

}  // namespace

PlanFile parse_plan(std::string_view text, const DomainAst& domain, const ProblemAst& problem) {
  const TypeHierarchy hierarchy(domain);
  std::map<std::string, std::string> object_type;
  for (const auto& c : domain.constants) object_type[c.name] = c.types.front();
  for (const auto& o : problem.objects) object_type[o.name] = o.types.front();

  std::map<std::string, std::pair<const std::vector<TypedName>*, bool>> actions;
  for (const Structure& s : domain.structures) {
    if (const auto* a = std::get_if<ActionDef>(&s)) actions[a->name] = {&a->parameters, false};
    if (const auto* d = std::get_if<DurativeActionDef>(&s)) actions[d->name] = {&d->parameters, true};
  }

  PlanFile plan;
  std::size_t timed = 0;
  int line_no = 0;
  std::istringstream lines{std::string(text)};
  std::string raw;
  while (std::getline(lines, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (auto c = line.find(';'); c != std::string_view::npos) line = line.substr(0, c);
    line = trim(line);
    if (line.empty()) continue;

    PlanStep step;
    step.line = line_no;
    const auto open = line.find('(');
    const auto close = line.find(')');
    if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
      plan_error(line_no, "expected (<action> <args>*)");
    }
    std::string_view prefix = trim(line.substr(0, open));
    if (!prefix.empty()) {
      if (prefix.back() != ':') plan_error(line_no, "expected ':' after step time");
      step.time = number_or_fail(prefix.substr(0, prefix.size() - 1), line_no);
      step.explicit_time = true;
      if (step.time <= 0) plan_error(line_no, "step time must be greater than 0");
      ++timed;
    }
    std::string_view suffix = trim(line.substr(close + 1));
    if (!suffix.empty()) {
      if (suffix.front() != '[' || suffix.back() != ']') plan_error(line_no, "expected [<duration>]");
      step.duration = number_or_fail(suffix.substr(1, suffix.size() - 2), line_no);
    }

    std::vector<Token> tokens;
    try {
      tokens = tokenize(line.substr(open + 1, close - open - 1));
    } catch (const SyntaxError& e) {
      plan_error(line_no, e.bare_message());
    }
    if (tokens.empty() || tokens.front().kind != TokenKind::kSymbol) plan_error(line_no, "missing action name");
    step.action = tokens.front().text;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      if (tokens[i].kind != TokenKind::kSymbol) plan_error(line_no, "action arguments must be object names");
      step.args.push_back(tokens[i].text);
    }

    auto it = actions.find(step.action);
    if (it == actions.end()) plan_error(line_no, "unknown action '" + step.action + "'");
    const auto& [params, durative] = it->second;
    if (params->size() != step.args.size()) {
      plan_error(line_no, "'" + step.action + "' expects " + std::to_string(params->size()) +
                              " arguments, got " + std::to_string(step.args.size()));
    }
    for (std::size_t i = 0; i < step.args.size(); ++i) {
      auto obj = object_type.find(step.args[i]);
      if (obj == object_type.end()) plan_error(line_no, "undeclared object '" + step.args[i] + "'");
      if (!hierarchy.matches(obj->second, (*params)[i].types)) {
        plan_error(line_no, "object '" + step.args[i] + "' has the wrong type for '" + step.action + "'");
      }
    }
    if (durative && !step.duration) plan_error(line_no, "durative action '" + step.action + "' needs [<duration>]");
    if (!durative && step.duration) plan_error(line_no, "'" + step.action + "' is not durative");
    plan.steps.push_back(std::move(step));
  }

  if (timed != 0 && timed != plan.steps.size()) {
    throw SyntaxError("plan: either every step or no step carries a time", 1, 1);
  }
  if (timed == 0) {
    for (std::size_t i = 0; i < plan.steps.size(); ++i) plan.steps[i].time = Rational(i + 1);
  }
  return plan;
}

}  // namespace pddlval
