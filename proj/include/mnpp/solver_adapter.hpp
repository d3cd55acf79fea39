#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mnpp/linear_model.hpp"

namespace mnpp {

/// External MIP solver invoked through a shell command template.
///
/// Placeholders: {model} (LP file to read), {solution} (file to write),
/// {seconds} (time limit). The solver must write one "name value" pair per
/// line; absent variables read as 0. Lines starting with '#' are comments,
/// except "# status <word>" which reports the termination status
/// (optimal, time_limit / feasible, infeasible, error).
struct SolverAdapter {
  std::string command;

  /// Template from the MNPP_SOLVER_CMD environment variable, if set.
  static std::optional<SolverAdapter> from_environment();
};

enum class SolveStatus { kOptimal, kFeasibleTimeout, kInfeasible, kError };

std::string_view to_string(SolveStatus status);

struct SolveResult {
  SolveStatus status = SolveStatus::kError;
  /// Objective of the returned point; never set without a solution.
  std::optional<double> objective;
  /// Value per model variable, in declaration order (empty without a solution).
  std::vector<double> values;
  std::string diagnostic;
};

struct SolutionFile {
  std::optional<std::string> status;
  std::vector<std::pair<std::string, double>> values;
};

/// Parses solver output; throws SolutionParseError naming the bad line.
SolutionFile parse_solution(std::istream& in);

/// Values in model order; throws SolverError on unknown names.
std::vector<double> solution_values(const LinearModel& model, const SolutionFile& file);

/// Substitutes placeholders. Paths are single-quoted for the shell.
std::string expand_command(std::string_view templ, const std::filesystem::path& model,
                           const std::filesystem::path& solution, double seconds);

/// Writes the model, runs the solver in a fresh working directory, reads the
/// solution back. The process is killed if it overruns the time limit by a
/// grace period. Binary values within 1e-5 of an integer are rounded.
SolveResult solve_external(const LinearModel& model, const SolverAdapter& adapter,
                           double time_limit_seconds);

}  // namespace mnpp
