#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mnpp/heuristics.hpp"
#include "mnpp/instgen.hpp"
#include "mnpp/metrics.hpp"
#include "mnpp/model.hpp"
#include "mnpp/solver_adapter.hpp"

namespace mnpp {

// ---------------------------------------------------------------------------
// Single runs

enum class RunStatus { kOk, kOptimal, kFeasible, kTimeout, kInfeasible, kError, kSkipped };

std::string_view to_string(RunStatus status);
RunStatus parse_run_status(std::string_view text);
/// True when the run produced a price vector.
bool has_solution(RunStatus status);

struct RunOptions {
  double time_limit_seconds = 60.0;
  std::optional<SolverAdapter> solver;
  /// Restrict heuristic prices to the instance's spread bound, when it has one.
  bool respect_pi = true;
  bool sp_include_match = false;
  bool order_argmax = false;
};

struct RunOutcome {
  RunStatus status = RunStatus::kError;
  std::vector<Money> prices;
  PriceLadder ladder;
  Revenue revenue;  ///< market revenue of `prices`
  std::optional<double> mip_objective;
  std::size_t dp_calls = 0;
  double wall_seconds = 0.0;
  std::string message;
};

/// Runs one algorithm under a wall-clock limit. Heuristic timeouts come back
/// as kTimeout; ip1/ip2 without a configured solver throw SolverError, as do
/// the relaxation-ordered insertions.
RunOutcome run_algorithm(const Instance& inst, Algorithm alg, const RunOptions& options);

/// Exact optimum used as the gap reference.
enum class ReferenceMethod { kAuto, kBrute, kLadder, kIp1, kIp2, kNone };

std::string_view to_string(ReferenceMethod method);
ReferenceMethod parse_reference_method(std::string_view text);

struct Reference {
  ReferenceMethod method = ReferenceMethod::kNone;  ///< the method actually used
  RunOutcome outcome;
};

/// kAuto: brute force within the enumeration limit, else the ladder search
/// (|O| <= 8), else ip2 when a solver is configured, else nothing.
Reference compute_reference(const Instance& inst, ReferenceMethod method,
                            const RunOptions& options,
                            std::uint64_t enumeration_limit = 5'000'000);

// ---------------------------------------------------------------------------
// Suites

struct BenchConfig {
  std::string suite = "suite";
  /// Goes into output file names; empty means the current UTC time.
  std::string timestamp;
  std::uint64_t master_seed = 1;
  std::vector<ModelKind> models{ModelKind::kMnpp};
  std::vector<int> outlets{5, 10, 15};
  std::vector<int> demands{15, 30, 50};
  std::vector<double> densities{0.9, 0.75, 0.5, 0.25, 0.1};
  int draws = 10;
  GenParams base;
  std::vector<Algorithm> algorithms;
  ReferenceMethod reference = ReferenceMethod::kAuto;
  std::uint64_t enumeration_limit = 5'000'000;
  /// MNPP instances also get a logit optimum and the MNPP-prices gap under logit.
  bool cross_model = false;
  RunOptions run;
};

/// Parses the JSON config (same dialect as instance files). Unknown fields are
/// rejected; every field is optional.
BenchConfig parse_bench_config(std::string_view text);
BenchConfig load_bench_config(const std::filesystem::path& path);

/// One row of the runs table. The reference optimum appears as algorithm "opt".
struct RunRecord {
  std::string instance_id;
  ModelKind model = ModelKind::kMnpp;
  int n_outlets = 0;
  int n_demands = 0;
  double density = 0.0;
  std::size_t graph = 0;
  std::size_t draw = 0;
  std::uint64_t seed = 0;
  std::string algorithm;
  RunStatus status = RunStatus::kError;
  std::optional<double> revenue;
  std::optional<double> opt_revenue;
  std::optional<double> sp_revenue;
  std::optional<double> opt_gap;
  std::optional<double> gain_over_sp;
  std::optional<PmAccounting> pm;
  std::size_t dp_calls = 0;
  std::optional<double> cross_gap;
  std::vector<Money> prices;
  std::string note;
  double wall_seconds = 0.0;  ///< kept out of the runs table
};

inline constexpr std::string_view kRunsSchema = "mnpp-runs v1";

std::string runs_csv(const std::vector<RunRecord>& records);
std::string timings_csv(const std::vector<RunRecord>& records);
std::string long_csv(const std::vector<RunRecord>& records);
/// Parses a runs table written by runs_csv (timings are not restored).
std::vector<RunRecord> parse_runs_csv(std::string_view text);

/// Grouped means per (model, |N|, |O|, P) and algorithm, the price-matching
/// summary of the optimal solutions, and the cross-model gap summary.
std::string summary_json(const std::vector<RunRecord>& records, std::string_view suite);

/// Every record of one suite, in (instance, algorithm) order.
std::vector<RunRecord> run_suite_records(const BenchConfig& config, int jobs = 1);

struct SuiteFiles {
  std::filesystem::path runs;
  std::filesystem::path timings;
  std::filesystem::path summary;
  std::filesystem::path long_data;
  std::vector<RunRecord> records;
};

/// Runs the suite and writes `<suite>-<timestamp>_{runs,timings,long}.csv` and
/// `_summary.json` into out_dir.
SuiteFiles run_suite(const BenchConfig& config, const std::filesystem::path& out_dir,
                     int jobs = 1);

/// Summary over every *_runs.csv file in a directory, read in name order.
std::string report_from_directory(const std::filesystem::path& runs_dir);

}  // namespace mnpp
