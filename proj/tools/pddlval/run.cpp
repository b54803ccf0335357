#include "run.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pddlval/errors.hpp"
#include "pddlval/executor.hpp"
#include "pddlval/ground.hpp"
#include "pddlval/parser.hpp"
#include "report.hpp"

namespace pddlval::cli {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << file.rdbuf();
  if (file.bad()) throw std::runtime_error("cannot read " + path);
  return buf.str();
}

/// Input-side failure tagged with the file it came from.
struct InputFailure {
  ErrorInfo info;
};

template <class F>
auto guarded(const std::string& source, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const RestrictionError& e) {
    throw InputFailure{{"restriction", e.restriction(), source + ": " + e.what()}};
  } catch (const SyntaxError& e) {
    throw InputFailure{{"syntax", std::nullopt, source + ":" + e.what()}};
  } catch (const Error& e) {
    throw InputFailure{{"semantic", std::nullopt, source + ": " + e.what()}};
  }
}

void emit(const Report& report, const RunConfig& config, std::ostream& out) {
  if (config.format == OutputFormat::kJson) {
    out << to_json(report).dump(2) << '\n';
  } else {
    out << to_text(report);
  }
}

int execute(const RunConfig& config, std::istream& in, std::ostream& out, std::ostream& err) {
  Report report;
  try {
    auto t0 = Clock::now();
    const std::string domain_text = read_file(config.domain_path);
    const std::string problem_text = read_file(config.problem_path);
    const DomainAst domain = guarded(config.domain_path, [&] { return parse_domain(domain_text); });
    const ProblemAst problem =
        guarded(config.problem_path, [&] { return parse_problem(problem_text, domain); });
    std::optional<PlanFile> plan;
    if (!config.check_only) {
      std::string plan_text;
      std::string source = "<stdin>";
      if (config.plan_path) {
        plan_text = read_file(*config.plan_path);
        source = *config.plan_path;
      } else {
        std::ostringstream buf;
        buf << in.rdbuf();
        plan_text = buf.str();
      }
      plan = guarded(source, [&] { return parse_plan(plan_text, domain, problem); });
    }
    report.timing.parse_ms = elapsed_ms(t0);

    t0 = Clock::now();
    const GroundTask task = guarded(config.domain_path, [&] { return ground(domain, problem); });
    report.timing.ground_ms = elapsed_ms(t0);

    if (config.check_only) {
      report.status = "ok";
      report.stats = ground_stats(task);
      emit(report, config, out);
      return kExitValid;
    }

    t0 = Clock::now();
    const Verdict verdict = guarded(config.plan_path.value_or("<stdin>"), [&] {
      return validate(task, *plan, ValidateOptions{config.tolerance});
    });
    const Timing timing{report.timing.parse_ms, report.timing.ground_ms, elapsed_ms(t0)};
    report = make_report(verdict, task, config.verbosity);
    report.timing = timing;
    emit(report, config, out);
    if (!verdict.valid && verdict.failure) {
      err << "plan invalid: " << to_string(verdict.failure->reason) << " at "
          << to_string(verdict.failure->time) << ": " << verdict.failure->detail << '\n';
    }
    return verdict.valid ? kExitValid : kExitInvalid;
  } catch (const InputFailure& f) {
    report.status = "error";
    report.error = f.info;
    err << "error: " << f.info.message << '\n';
  } catch (const std::exception& e) {
    report.status = "error";
    report.error = ErrorInfo{"io", std::nullopt, e.what()};
    err << "error: " << e.what() << '\n';
  }
  emit(report, config, out);
  return kExitInputError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"PDDL2.2 plan validator", "pddlval"};
  app.require_subcommand(1);
  RunConfig config;
  std::string plan_path;
  std::string tolerance = "0";
  bool json = false;
  bool verbose = false;

  CLI::App* validate_cmd = app.add_subcommand("validate", "Validate a plan against a domain and problem");
  validate_cmd->add_option("domain", config.domain_path, "Domain file")->required();
  validate_cmd->add_option("problem", config.problem_path, "Problem file")->required();
  validate_cmd->add_option("plan", plan_path, "Plan file (standard input when omitted)");
  validate_cmd->add_flag("--json", json, "Print the report as one JSON object");
  validate_cmd->add_flag("--verbose,-v", verbose, "Include the per-happening trace");
  validate_cmd->add_option("--tolerance", tolerance, "Merge happening times at most this far apart");
  validate_cmd->add_flag("--check-only", config.check_only, "Parse and ground without a plan");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInputError;
  }

  try {
    config.tolerance = parse_decimal(tolerance);
  } catch (const std::invalid_argument&) {
    err << "error: --tolerance expects a decimal number, got '" << tolerance << "'\n";
    return kExitInputError;
  }
  if (config.tolerance < 0) {
    err << "error: --tolerance must be >= 0\n";
    return kExitInputError;
  }
  if (!plan_path.empty()) config.plan_path = plan_path;
  config.format = json ? OutputFormat::kJson : OutputFormat::kText;
  config.verbosity = verbose ? 1 : 0;
  return execute(config, in, out, err);
}

}  // namespace pddlval::cli
