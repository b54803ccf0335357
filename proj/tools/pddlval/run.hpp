#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pddlval/rational.hpp"

namespace pddlval::cli {

enum class OutputFormat { kText, kJson };

struct RunConfig {
  std::string domain_path;
  std::string problem_path;
  std::optional<std::string> plan_path;  // standard input when absent
  int verbosity = 0;
  OutputFormat format = OutputFormat::kText;
  Rational tolerance = 0;
  bool check_only = false;
};

/// Exit codes.
inline constexpr int kExitValid = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitInputError = 2;

/// Entry point behind the `pddlval` binary. `args` excludes the program
/// name. The report goes to `out`, diagnostics to `err`; plans are read from
/// `in` when no plan path is given.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace pddlval::cli
