#include "mnpp/solver_adapter.hpp"

#include <signal.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <thread>

#include "mnpp/errors.hpp"
#include "mnpp/lp_format.hpp"

namespace mnpp {

std::optional<SolverAdapter> SolverAdapter::from_environment() {
  const char* cmd = std::getenv("MNPP_SOLVER_CMD");
  if (cmd == nullptr || *cmd == '\0') return std::nullopt;
  return SolverAdapter{cmd};
}

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kFeasibleTimeout: return "feasible_timeout";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kError: return "error";
  }
  return "error";
}

SolutionFile parse_solution(std::istream& in) {
  SolutionFile out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) continue;
    if (first[0] == '#') {
      std::string key, word;
      std::istringstream rest(line.substr(line.find('#') + 1));
      if (rest >> key && key == "status" && rest >> word) out.status = word;
      continue;
    }
    std::string value_text, extra;
    if (!(fields >> value_text) || (fields >> extra)) throw SolutionParseError(lineno, line);
    char* end = nullptr;
    errno = 0;
    const double value = std::strtod(value_text.c_str(), &end);
    if (end == value_text.c_str() || *end != '\0' || errno == ERANGE) {
      throw SolutionParseError(lineno, line);
    }
    out.values.emplace_back(first, value);
  }
  return out;
}

std::vector<double> solution_values(const LinearModel& model, const SolutionFile& file) {
  std::vector<double> values(model.variables().size(), 0.0);
  for (std::size_t i = 0; i < file.values.size(); ++i) {
    const auto& [name, value] = file.values[i];
    auto idx = model.find(name);
    if (!idx) throw SolverError("solution names unknown variable '" + name + "'");
    values[*idx] = value;
  }
  return values;
}

namespace {

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char ch : s) {
    if (ch == '\'') out += "'\\''";
    else out += ch;
  }
  return out + "'";
}

void replace_all(std::string& s, std::string_view key, const std::string& value) {
  for (std::size_t pos = s.find(key); pos != std::string::npos;
       pos = s.find(key, pos + value.size())) {
    s.replace(pos, key.size(), value);
  }
}

std::filesystem::path make_work_dir() {
  std::string templ = (std::filesystem::temp_directory_path() / "mnpp-solve-XXXXXX").string();
  if (mkdtemp(templ.data()) == nullptr) {
    throw SolverError(std::string("cannot create solver work directory: ") + std::strerror(errno));
  }
  return templ;
}

struct ProcessOutcome {
  bool killed = false;
  int exit_code = -1;
};

ProcessOutcome run_with_limit(const std::string& command, const std::filesystem::path& log,
                              double hard_limit) {
  const pid_t pid = fork();
  if (pid < 0) throw SolverError(std::string("fork failed: ") + std::strerror(errno));
  if (pid == 0) {
    setpgid(0, 0);
    if (FILE* f = std::freopen(log.c_str(), "w", stdout)) {
      dup2(fileno(f), STDERR_FILENO);
    }
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  const auto start = std::chrono::steady_clock::now();
  ProcessOutcome out;
  int status = 0;
  while (true) {
    const pid_t r = waitpid(pid, &status, WNOHANG);
    if (r == pid) break;
    if (r < 0 && errno != EINTR) throw SolverError("waitpid failed");
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > hard_limit) {
      kill(-pid, SIGKILL);
      kill(pid, SIGKILL);
      waitpid(pid, &status, 0);
      out.killed = true;
      return out;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
  out.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

std::string tail_of(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (text.size() > 400) text = "..." + text.substr(text.size() - 400);
  return text;
}

}  // namespace

std::string expand_command(std::string_view templ, const std::filesystem::path& model,
                           const std::filesystem::path& solution, double seconds) {
  std::string cmd(templ);
  replace_all(cmd, "{model}", shell_quote(model.string()));
  replace_all(cmd, "{solution}", shell_quote(solution.string()));
  replace_all(cmd, "{seconds}", format_number(std::max(0.0, seconds)));
  return cmd;
}

SolveResult solve_external(const LinearModel& model, const SolverAdapter& adapter,
                           double time_limit_seconds) {
  SolveResult result;
  if (adapter.command.empty()) {
    result.diagnostic = "no solver command configured";
    return result;
  }
  const auto dir = make_work_dir();
  const auto model_path = dir / "model.lp";
  const auto solution_path = dir / "solution.txt";
  const auto log_path = dir / "solver.log";
  struct Cleanup {
    std::filesystem::path dir;
    ~Cleanup() {
      if (std::getenv("MNPP_KEEP_SOLVER_FILES") == nullptr) {
        std::error_code ec;
        std::filesystem::remove_all(dir, ec);
      }
    }
  } cleanup{dir};

  write_lp(model, model_path);
  const std::string cmd = expand_command(adapter.command, model_path, solution_path,
                                         time_limit_seconds);
  const double grace = std::max(5.0, 0.5 * time_limit_seconds);
  const auto outcome = run_with_limit(cmd, log_path, time_limit_seconds + grace);

  if (outcome.killed) {
    result.diagnostic = "solver exceeded the hard time limit and was killed";
    return result;
  }
  if (outcome.exit_code == 127) {
    result.diagnostic = "solver command not found: " + tail_of(log_path);
    return result;
  }
  if (!std::filesystem::exists(solution_path)) {
    result.diagnostic = "solver exited with code " + std::to_string(outcome.exit_code) +
                        " without a solution file: " + tail_of(log_path);
    return result;
  }

  std::ifstream in(solution_path);
  const SolutionFile file = parse_solution(in);
  const std::string status = file.status.value_or(outcome.exit_code == 0 ? "optimal" : "error");

  if (status == "infeasible") {
    result.status = SolveStatus::kInfeasible;
    return result;
  }
  const bool has_point = !file.values.empty();
  if (status == "optimal" && outcome.exit_code == 0) {
    result.status = SolveStatus::kOptimal;
  } else if ((status == "time_limit" || status == "timeout" || status == "feasible") && has_point) {
    result.status = SolveStatus::kFeasibleTimeout;
  } else {
    result.diagnostic = "solver reported status '" + status + "'" +
                        (has_point ? "" : " without an incumbent") + ", exit code " +
                        std::to_string(outcome.exit_code);
    return result;
  }

  result.values = solution_values(model, file);
  for (std::size_t i = 0; i < result.values.size(); ++i) {
    if (model.variable(i).kind != VarKind::kBinary) continue;
    const double r = std::round(result.values[i]);
    if (std::abs(result.values[i] - r) <= 1e-5) result.values[i] = r;
  }
  result.objective = model.objective_value(result.values);
  return result;
}

}  // namespace mnpp
