#include "mnpp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

#include "json_fields.hpp"
#include "mnpp/csv.hpp"
#include "mnpp/errors.hpp"
#include "mnpp/exact.hpp"
#include "mnpp/formulations.hpp"
#include "mnpp/instance_io.hpp"
#include "mnpp/lp_format.hpp"

namespace mnpp {

using detail::Json;

namespace {

constexpr std::pair<RunStatus, std::string_view> kStatusNames[] = {
    {RunStatus::kOk, "ok"},           {RunStatus::kOptimal, "optimal"},
    {RunStatus::kFeasible, "feasible"}, {RunStatus::kTimeout, "timeout"},
    {RunStatus::kInfeasible, "infeasible"}, {RunStatus::kError, "error"},
    {RunStatus::kSkipped, "skipped"},
};

constexpr std::pair<ReferenceMethod, std::string_view> kReferenceNames[] = {
    {ReferenceMethod::kAuto, "auto"}, {ReferenceMethod::kBrute, "brute"},
    {ReferenceMethod::kLadder, "ladder"}, {ReferenceMethod::kIp1, "ip1"},
    {ReferenceMethod::kIp2, "ip2"},   {ReferenceMethod::kNone, "none"},
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

RunOutcome from_exact(const Instance& inst, std::vector<Money> prices) {
  RunOutcome out;
  out.status = RunStatus::kOptimal;
  out.revenue = evaluate_prices(inst, prices).revenue;
  out.prices = std::move(prices);
  return out;
}

}  // namespace

std::string_view to_string(RunStatus status) {
  for (const auto& [s, name] : kStatusNames) {
    if (s == status) return name;
  }
  return "error";
}

RunStatus parse_run_status(std::string_view text) {
  for (const auto& [s, name] : kStatusNames) {
    if (name == text) return s;
  }
  throw InputError("unknown run status '" + std::string(text) + "'");
}

bool has_solution(RunStatus status) {
  return status == RunStatus::kOk || status == RunStatus::kOptimal ||
         status == RunStatus::kFeasible;
}

std::string_view to_string(ReferenceMethod method) {
  for (const auto& [m, name] : kReferenceNames) {
    if (m == method) return name;
  }
  return "none";
}

ReferenceMethod parse_reference_method(std::string_view text) {
  for (const auto& [m, name] : kReferenceNames) {
    if (name == text) return m;
  }
  throw InputError("unknown reference method '" + std::string(text) + "'");
}

RunOutcome run_algorithm(const Instance& inst, Algorithm alg, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  RunOutcome out;
  if (is_exact_mip(alg)) {
    if (!options.solver) {
      throw SolverError(std::string(to_string(alg)) +
                        " needs a solver command (--solver-cmd or MNPP_SOLVER_CMD)");
    }
    const LinearModel model = build_formulation(
        inst, alg == Algorithm::kIp1 ? Formulation::kIp1 : Formulation::kIp2);
    const SolveResult solved = solve_external(model, *options.solver, options.time_limit_seconds);
    switch (solved.status) {
      case SolveStatus::kOptimal: out.status = RunStatus::kOptimal; break;
      case SolveStatus::kFeasibleTimeout:
        out.status = solved.values.empty() ? RunStatus::kTimeout : RunStatus::kFeasible;
        break;
      case SolveStatus::kInfeasible: out.status = RunStatus::kInfeasible; break;
      case SolveStatus::kError: throw SolverError(solved.diagnostic);
    }
    out.message = solved.diagnostic;
    if (has_solution(out.status)) {
      out.prices = decode_prices(inst, model, solved.values);
      out.revenue = evaluate_prices(inst, out.prices).revenue;
      out.mip_objective = solved.objective;
    }
  } else {
    HeuristicOptions h;
    h.dp.enforce_pi = options.respect_pi && inst.pi().has_value();
    h.sp_include_match = options.sp_include_match;
    h.order_argmax = options.order_argmax;
    h.deadline = Deadline::after(std::chrono::duration<double>(options.time_limit_seconds));
    h.solver = options.solver;
    try {
      HeuristicResult r = run_heuristic(inst, alg, h);
      out.status = RunStatus::kOk;
      out.prices = std::move(r.prices);
      out.ladder = std::move(r.ladder);
      out.revenue = r.revenue;
      out.dp_calls = r.dp_calls;
    } catch (const TimeoutError& e) {
      out.status = RunStatus::kTimeout;
      out.message = e.what();
    }
  }
  out.wall_seconds = seconds_since(start);
  return out;
}

Reference compute_reference(const Instance& inst, ReferenceMethod method,
                            const RunOptions& options, std::uint64_t enumeration_limit) {
  if (method == ReferenceMethod::kAuto) {
    double count = 1.0;
    for (int f = 0; f < inst.n_outlets(); ++f) count *= static_cast<double>(inst.grid().size());
    if (count <= static_cast<double>(enumeration_limit)) {
      method = ReferenceMethod::kBrute;
    } else if (inst.n_outlets() <= kMaxLadderOutlets) {
      method = ReferenceMethod::kLadder;
    } else if (options.solver) {
      method = ReferenceMethod::kIp2;
    } else {
      method = ReferenceMethod::kNone;
    }
  }

  const auto start = std::chrono::steady_clock::now();
  Reference ref;
  ref.method = method;
  switch (method) {
    case ReferenceMethod::kBrute:
      ref.outcome = from_exact(inst, brute_force(inst, enumeration_limit).prices);
      break;
    case ReferenceMethod::kLadder: {
      DpOptions dp;
      dp.enforce_pi = inst.pi().has_value();
      dp.ties = LadderTies::kIndexOrder;
      LadderExactResult r = ladder_exact(inst, dp);
      ref.outcome = from_exact(inst, std::move(r.prices));
      ref.outcome.ladder = std::move(r.ladder);
      break;
    }
    case ReferenceMethod::kIp1:
    case ReferenceMethod::kIp2:
      ref.outcome = run_algorithm(
          inst, method == ReferenceMethod::kIp1 ? Algorithm::kIp1 : Algorithm::kIp2, options);
      break;
    case ReferenceMethod::kAuto:
    case ReferenceMethod::kNone:
      ref.outcome.status = RunStatus::kSkipped;
      break;
  }
  ref.outcome.wall_seconds = seconds_since(start);
  return ref;
}

// ---------------------------------------------------------------------------
// Config

namespace {

Range range_field(const Json& j, std::string_view key) {
  const Json& v = j.at(std::string(key));
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw InputError("field '" + std::string(key) + "' must be a [lo, hi] pair");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

template <typename T>
std::vector<T> list_field(const Json& j, std::string_view key) {
  const Json& v = j.at(std::string(key));
  if (!v.is_array()) throw InputError("field '" + std::string(key) + "' must be an array");
  std::vector<T> out;
  for (const auto& item : v) {
    if constexpr (std::is_same_v<T, std::string>) {
      if (!item.is_string()) throw InputError("field '" + std::string(key) + "' holds strings");
    } else if constexpr (std::is_integral_v<T>) {
      if (!item.is_number_integer()) {
        throw InputError("field '" + std::string(key) + "' holds integers");
      }
    } else {
      if (!item.is_number()) throw InputError("field '" + std::string(key) + "' holds numbers");
    }
    out.push_back(item.get<T>());
  }
  return out;
}

bool bool_field(const Json& j, std::string_view key) {
  const Json& v = j.at(std::string(key));
  if (!v.is_boolean()) throw InputError("field '" + std::string(key) + "' must be true or false");
  return v.get<bool>();
}

}  // namespace

BenchConfig parse_bench_config(std::string_view text) {
  const Json doc = detail::parse_json(text, "bench config");
  detail::reject_unknown(
      doc, "",
      {"suite", "timestamp", "master_seed", "models", "outlets", "demands", "densities", "draws",
       "grid", "pi", "competitor_price", "volume", "beta", "gamma", "intercept", "slope",
       "algorithms", "reference", "enumeration_limit", "cross_model", "time_limit",
       "solver_cmd", "sp_include_match", "order_argmax", "respect_pi"});
  BenchConfig cfg;
  const auto has = [&](const char* key) { return doc.contains(key); };

  if (has("suite")) cfg.suite = detail::text(doc, "", "suite");
  if (cfg.suite.empty() || cfg.suite.find_first_of("/\\") != std::string::npos) {
    throw InputError("field 'suite' must be a non-empty name without path separators");
  }
  if (has("timestamp")) cfg.timestamp = detail::text(doc, "", "timestamp");
  if (has("master_seed")) {
    const Json& s = doc["master_seed"];
    if (!s.is_number_integer()) throw InputError("field 'master_seed' must be an integer");
    cfg.master_seed = s.get<std::uint64_t>();
  }
  if (has("models")) {
    cfg.models.clear();
    for (const auto& m : list_field<std::string>(doc, "models")) {
      cfg.models.push_back(parse_model_kind(m));
    }
  }
  if (has("outlets")) cfg.outlets = list_field<int>(doc, "outlets");
  if (has("demands")) cfg.demands = list_field<int>(doc, "demands");
  if (has("densities")) cfg.densities = list_field<double>(doc, "densities");
  if (has("draws")) {
    cfg.draws = static_cast<int>(detail::integer(doc, "", "draws"));
    if (cfg.draws < 0) throw InputError("field 'draws' must be non-negative");
  }
  if (has("grid")) {
    const Json& g = doc["grid"];
    detail::reject_unknown(g, "grid", {"min", "max", "step"});
    cfg.base.grid.min = Money::from_double(detail::number(g, "grid", "min"));
    cfg.base.grid.max = Money::from_double(detail::number(g, "grid", "max"));
    cfg.base.grid.step = Money::from_double(detail::number(g, "grid", "step"));
  }
  if (has("pi") && !doc["pi"].is_null()) {
    cfg.base.pi = Money::from_double(detail::number(doc, "", "pi"));
  }
  if (has("competitor_price")) cfg.base.competitor_price = range_field(doc, "competitor_price");
  if (has("volume")) cfg.base.volume = range_field(doc, "volume");
  if (has("beta")) cfg.base.beta = Share::from_double(detail::number(doc, "", "beta"));
  if (has("gamma")) cfg.base.gamma = Share::from_double(detail::number(doc, "", "gamma"));
  if (has("intercept")) cfg.base.intercept = range_field(doc, "intercept");
  if (has("slope")) cfg.base.slope = range_field(doc, "slope");
  if (has("algorithms")) {
    for (const auto& a : list_field<std::string>(doc, "algorithms")) {
      cfg.algorithms.push_back(parse_algorithm(a));
    }
  }
  if (has("reference")) cfg.reference = parse_reference_method(detail::text(doc, "", "reference"));
  if (has("enumeration_limit")) {
    const auto limit = detail::integer(doc, "", "enumeration_limit");
    if (limit < 1) throw InputError("field 'enumeration_limit' must be positive");
    cfg.enumeration_limit = static_cast<std::uint64_t>(limit);
  }
  if (has("cross_model")) cfg.cross_model = bool_field(doc, "cross_model");
  if (has("time_limit")) {
    cfg.run.time_limit_seconds = detail::number(doc, "", "time_limit");
    if (!(cfg.run.time_limit_seconds > 0)) throw InputError("field 'time_limit' must be positive");
  }
  if (has("solver_cmd") && !doc["solver_cmd"].is_null()) {
    cfg.run.solver = SolverAdapter{detail::text(doc, "", "solver_cmd")};
  }
  if (has("sp_include_match")) cfg.run.sp_include_match = bool_field(doc, "sp_include_match");
  if (has("order_argmax")) cfg.run.order_argmax = bool_field(doc, "order_argmax");
  if (has("respect_pi")) cfg.run.respect_pi = bool_field(doc, "respect_pi");

  cfg.base.sample_logit = cfg.cross_model;
  // surface parameter errors before any run starts
  for (int o : cfg.outlets) {
    for (int n : cfg.demands) {
      for (double p : cfg.densities) {
        GenParams check = cfg.base;
        check.n_outlets = o;
        check.n_demands = n;
        check.density = p;
        for (ModelKind m : cfg.models) {
          check.model = m;
          validate(check);
        }
      }
    }
  }
  return cfg;
}

BenchConfig load_bench_config(const std::filesystem::path& path) {
  try {
    return parse_bench_config(read_file(path));
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Suite execution

namespace {

struct SuiteInstance {
  ModelKind model;
  SuiteEntry entry;
};

std::string instance_id(const SuiteInstance& si) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s-o%d-n%d-p%s-g%03zu-d%02zu",
                std::string(to_string(si.model)).c_str(), si.entry.params.n_outlets,
                si.entry.params.n_demands, format_number(si.entry.params.density).c_str(),
                si.entry.graph_index, si.entry.draw_index);
  return buf;
}

RunRecord base_record(const SuiteInstance& si, const std::string& id) {
  RunRecord r;
  r.instance_id = id;
  r.model = si.model;
  r.n_outlets = si.entry.params.n_outlets;
  r.n_demands = si.entry.params.n_demands;
  r.density = si.entry.params.density;
  r.graph = si.entry.graph_index;
  r.draw = si.entry.draw_index;
  r.seed = si.entry.params.seed;
  return r;
}

void fill_outcome(RunRecord& rec, const Instance& inst, const RunOutcome& out,
                  const std::optional<Revenue>& opt, const std::optional<Revenue>& sp) {
  rec.status = out.status;
  rec.dp_calls = out.dp_calls;
  rec.wall_seconds = out.wall_seconds;
  rec.note = out.message;
  if (opt) rec.opt_revenue = opt->value();
  if (sp) rec.sp_revenue = sp->value();
  if (!has_solution(out.status)) return;
  rec.prices = out.prices;
  rec.revenue = out.revenue.value();
  if (opt) rec.opt_gap = opt_gap(out.revenue, *opt);
  if (sp) rec.gain_over_sp = gain_over_sp(out.revenue, *sp);
  rec.pm = pm_accounting(inst, out.prices);
}

template <typename F>
RunOutcome guarded(F&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    RunOutcome out;
    out.status = RunStatus::kError;
    out.message = e.what();
    return out;
  }
}

std::vector<RunRecord> run_instance(const SuiteInstance& si, const BenchConfig& cfg) {
  const std::string id = instance_id(si);
  std::vector<RunRecord> records;
  if (cfg.algorithms.empty()) return records;

  std::optional<Instance> generated;
  try {
    generated.emplace(generate(si.entry.params));
  } catch (const std::exception& e) {
    RunRecord r = base_record(si, id);
    r.algorithm = "generate";
    r.status = RunStatus::kError;
    r.note = e.what();
    records.push_back(std::move(r));
    return records;
  }
  const Instance& inst = *generated;

  std::optional<Revenue> opt;
  std::optional<RunOutcome> ref_outcome;
  std::string ref_method;
  if (cfg.reference != ReferenceMethod::kNone) {
    Reference ref;
    ref.method = cfg.reference;
    ref.outcome = guarded([&] {
      ref = compute_reference(inst, cfg.reference, cfg.run, cfg.enumeration_limit);
      return ref.outcome;
    });
    ref_outcome = ref.outcome;
    ref_method = std::string(to_string(ref.method));
    if (ref.outcome.status == RunStatus::kOptimal) opt = ref.outcome.revenue;
  }

  const RunOutcome sp_outcome =
      guarded([&] { return run_algorithm(inst, Algorithm::kSp, cfg.run); });
  std::optional<Revenue> sp;
  if (has_solution(sp_outcome.status)) sp = sp_outcome.revenue;

  if (ref_outcome && ref_outcome->status != RunStatus::kSkipped) {
    RunRecord r = base_record(si, id);
    r.algorithm = "opt";
    fill_outcome(r, inst, *ref_outcome, opt, sp);
    r.note = r.note.empty() ? ref_method : ref_method + ": " + r.note;
    if (cfg.cross_model && si.model == ModelKind::kMnpp && opt) {
      const Instance logit = inst.with_model(ModelKind::kBmnpp);
      const RunOutcome logit_opt = guarded([&] {
        return compute_reference(logit, cfg.reference, cfg.run, cfg.enumeration_limit).outcome;
      });
      if (logit_opt.status == RunStatus::kOptimal) {
        r.cross_gap = cross_model_gap(inst, ref_outcome->prices, logit_opt.revenue);
      }
    }
    records.push_back(std::move(r));
  }

  for (Algorithm alg : cfg.algorithms) {
    RunRecord r = base_record(si, id);
    r.algorithm = std::string(to_string(alg));
    const RunOutcome out = alg == Algorithm::kSp
                               ? sp_outcome
                               : guarded([&] { return run_algorithm(inst, alg, cfg.run); });
    fill_outcome(r, inst, out, opt, sp);
    records.push_back(std::move(r));
  }
  return records;
}

std::string current_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%SZ", &utc);
  return buf;
}

}  // namespace

std::vector<RunRecord> run_suite_records(const BenchConfig& config, int jobs) {
  std::vector<SuiteInstance> work;
  for (ModelKind model : config.models) {
    for (auto& entry : suite_params(config.master_seed, model, config.outlets, config.demands,
                                    config.densities, config.draws, config.base)) {
      work.push_back({model, std::move(entry)});
    }
  }

  std::vector<std::vector<RunRecord>> slots(work.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < work.size(); i = next++) {
      slots[i] = run_instance(work[i], config);
    }
  };
  const auto n_threads =
      static_cast<std::size_t>(std::clamp<long>(jobs, 1, static_cast<long>(std::max<std::size_t>(1, work.size()))));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<RunRecord> out;
  for (auto& slot : slots) {
    for (auto& r : slot) out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tables

namespace {

const CsvRow kRunsHeader = {
    "instance_id", "model",    "n_outlets", "n_demands",    "density",   "graph",
    "draw",        "seed",     "algorithm", "status",       "revenue",   "opt_revenue",
    "sp_revenue",  "opt_gap",  "gain_over_sp", "pm_count",  "pw_count",  "d_pm",
    "d_pw",        "r_pm",     "r_pw",      "d_pm_pct",     "r_pm_pct",  "dp_calls",
    "cross_gap",   "prices",   "note"};

std::string num(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

std::string join_prices(const std::vector<Money>& prices) {
  std::string out;
  for (std::size_t i = 0; i < prices.size(); ++i) {
    if (i) out += ';';
    out += format_number(prices[i].value());
  }
  return out;
}

std::optional<double> parse_opt(const std::string& s) {
  if (s.empty()) return std::nullopt;
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw InputError("");
    return v;
  } catch (const std::exception&) {
    throw InputError("runs table: bad number '" + s + "'");
  }
}

template <typename T>
T parse_int(const std::string& s) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(s, &used);
    if (used != s.size()) throw InputError("");
    return static_cast<T>(v);
  } catch (const std::exception&) {
    throw InputError("runs table: bad integer '" + s + "'");
  }
}

}  // namespace

std::string runs_csv(const std::vector<RunRecord>& records) {
  std::string out = "# " + std::string(kRunsSchema) + "\r\n";
  out += csv_line(kRunsHeader);
  for (const RunRecord& r : records) {
    const bool pm = r.pm.has_value();
    out += csv_line({r.instance_id,
                     std::string(to_string(r.model)),
                     std::to_string(r.n_outlets),
                     std::to_string(r.n_demands),
                     format_number(r.density),
                     std::to_string(r.graph),
                     std::to_string(r.draw),
                     std::to_string(r.seed),
                     r.algorithm,
                     std::string(to_string(r.status)),
                     num(r.revenue),
                     num(r.opt_revenue),
                     num(r.sp_revenue),
                     num(r.opt_gap),
                     num(r.gain_over_sp),
                     pm ? std::to_string(r.pm->pm_count) : "",
                     pm ? std::to_string(r.pm->pw_count) : "",
                     pm ? format_number(r.pm->d_pm) : "",
                     pm ? format_number(r.pm->d_pw) : "",
                     pm ? format_number(r.pm->r_pm) : "",
                     pm ? format_number(r.pm->r_pw) : "",
                     pm ? num(r.pm->d_pct_pm()) : "",
                     pm ? num(r.pm->r_pct_pm()) : "",
                     std::to_string(r.dp_calls),
                     num(r.cross_gap),
                     join_prices(r.prices),
                     r.note});
  }
  return out;
}

std::string timings_csv(const std::vector<RunRecord>& records) {
  std::string out = csv_line({"instance_id", "algorithm", "status", "wall_seconds"});
  for (const RunRecord& r : records) {
    out += csv_line({r.instance_id, r.algorithm, std::string(to_string(r.status)),
                     format_number(r.wall_seconds)});
  }
  return out;
}

std::string long_csv(const std::vector<RunRecord>& records) {
  std::string out = csv_line(
      {"instance_id", "model", "n_outlets", "n_demands", "density", "algorithm", "metric", "value"});
  for (const RunRecord& r : records) {
    const auto emit = [&](std::string_view metric, const std::optional<double>& v) {
      if (!v) return;
      out += csv_line({r.instance_id, std::string(to_string(r.model)), std::to_string(r.n_outlets),
                       std::to_string(r.n_demands), format_number(r.density), r.algorithm,
                       std::string(metric), format_number(*v)});
    };
    emit("revenue", r.revenue);
    emit("opt_gap", r.opt_gap);
    emit("gain_over_sp", r.gain_over_sp);
    if (r.pm) {
      emit("pm_count", r.pm->pm_count);
      emit("d_pm_pct", r.pm->d_pct_pm());
      emit("r_pm_pct", r.pm->r_pct_pm());
    }
    emit("cross_gap", r.cross_gap);
  }
  return out;
}

std::vector<RunRecord> parse_runs_csv(std::string_view text) {
  const CsvTable table = parse_csv(text);
  if (table.comments.empty() || table.comments.front() != " " + std::string(kRunsSchema)) {
    throw InputError("runs table: missing '# " + std::string(kRunsSchema) + "' header line");
  }
  std::vector<std::size_t> col;
  for (const auto& name : kRunsHeader) col.push_back(table.column(name));
  std::vector<RunRecord> out;
  for (const CsvRow& row : table.rows) {
    const auto at = [&](std::size_t i) -> const std::string& { return row[col[i]]; };
    RunRecord r;
    r.instance_id = at(0);
    r.model = parse_model_kind(at(1));
    r.n_outlets = parse_int<int>(at(2));
    r.n_demands = parse_int<int>(at(3));
    r.density = parse_opt(at(4)).value_or(0.0);
    r.graph = parse_int<std::size_t>(at(5));
    r.draw = parse_int<std::size_t>(at(6));
    r.seed = parse_int<std::uint64_t>(at(7));
    r.algorithm = at(8);
    r.status = parse_run_status(at(9));
    r.revenue = parse_opt(at(10));
    r.opt_revenue = parse_opt(at(11));
    r.sp_revenue = parse_opt(at(12));
    r.opt_gap = parse_opt(at(13));
    r.gain_over_sp = parse_opt(at(14));
    if (!at(15).empty()) {
      PmAccounting pm;
      pm.pm_count = parse_int<int>(at(15));
      pm.pw_count = parse_int<int>(at(16));
      pm.d_pm = parse_opt(at(17)).value_or(0.0);
      pm.d_pw = parse_opt(at(18)).value_or(0.0);
      pm.r_pm = parse_opt(at(19)).value_or(0.0);
      pm.r_pw = parse_opt(at(20)).value_or(0.0);
      r.pm = pm;
    }
    r.dp_calls = parse_int<std::size_t>(at(23));
    r.cross_gap = parse_opt(at(24));
    if (!at(25).empty()) {
      std::string_view rest = at(25);
      while (true) {
        const auto cut = rest.find(';');
        r.prices.push_back(
            Money::from_double(parse_opt(std::string(rest.substr(0, cut))).value_or(0.0)));
        if (cut == std::string_view::npos) break;
        rest.remove_prefix(cut + 1);
      }
    }
    r.note = at(26);
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Summary

namespace {

struct Stat {
  std::size_t n = 0;
  double sum = 0.0;
  std::optional<double> max;
  std::optional<double> min;

  void add(const std::optional<double>& v) {
    if (!v) return;
    ++n;
    sum += *v;
    max = max ? std::max(*max, *v) : *v;
    min = min ? std::min(*min, *v) : *v;
  }
  Json mean() const { return n ? Json(sum / static_cast<double>(n)) : Json(nullptr); }
  static Json opt(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }
};

struct AlgStats {
  std::size_t runs = 0, solved = 0, timeouts = 0, errors = 0;
  Stat revenue, gap, gs, pm_count, d_pm_pct, r_pm_pct, dp_calls;

  void add(const RunRecord& r) {
    ++runs;
    if (has_solution(r.status)) ++solved;
    if (r.status == RunStatus::kTimeout) ++timeouts;
    if (r.status == RunStatus::kError) ++errors;
    revenue.add(r.revenue);
    gap.add(r.opt_gap);
    gs.add(r.gain_over_sp);
    if (r.pm) {
      pm_count.add(r.pm->pm_count);
      d_pm_pct.add(r.pm->d_pct_pm());
      r_pm_pct.add(r.pm->r_pct_pm());
    }
    if (has_solution(r.status)) dp_calls.add(static_cast<double>(r.dp_calls));
  }

  Json to_json() const {
    Json j = Json::object();
    j["runs"] = runs;
    j["solved"] = solved;
    j["timeouts"] = timeouts;
    j["errors"] = errors;
    j["mean_revenue"] = revenue.mean();
    j["mean_opt_gap"] = gap.mean();
    j["max_opt_gap"] = Stat::opt(gap.max);
    j["mean_gain_over_sp"] = gs.mean();
    j["mean_pm_count"] = pm_count.mean();
    j["mean_d_pm_pct"] = d_pm_pct.mean();
    j["mean_r_pm_pct"] = r_pm_pct.mean();
    j["mean_dp_calls"] = dp_calls.mean();
    return j;
  }
};

// keeps first-appearance order of algorithm names inside a group
struct Group {
  std::vector<std::string> order;
  std::map<std::string, AlgStats> by_alg;

  void add(const RunRecord& r) {
    auto [it, inserted] = by_alg.try_emplace(r.algorithm);
    if (inserted) order.push_back(r.algorithm);
    it->second.add(r);
  }
};

}  // namespace

std::string summary_json(const std::vector<RunRecord>& records, std::string_view suite) {
  using GroupKey = std::tuple<int, int, int, double>;
  std::map<GroupKey, Group> groups;
  using SizeKey = std::tuple<int, int, int>;
  std::map<SizeKey, AlgStats> pm_groups;
  std::map<int, AlgStats> pm_overall;
  std::map<std::pair<int, int>, Stat> cross_groups;
  Stat cross_overall;

  for (const RunRecord& r : records) {
    const int model = static_cast<int>(r.model);
    groups[{model, r.n_demands, r.n_outlets, r.density}].add(r);
    if (r.algorithm == "opt" && r.pm) {
      pm_groups[{model, r.n_outlets, r.n_demands}].add(r);
      pm_overall[model].add(r);
    }
    if (r.algorithm == "opt" && r.cross_gap) {
      cross_groups[{r.n_outlets, r.n_demands}].add(r.cross_gap);
      cross_overall.add(r.cross_gap);
    }
  }

  Json doc = Json::object();
  doc["format"] = "mnpp-summary/1";
  doc["suite"] = suite;
  doc["records"] = records.size();

  Json jgroups = Json::array();
  for (const auto& [key, group] : groups) {
    Json g = Json::object();
    g["model"] = to_string(static_cast<ModelKind>(std::get<0>(key)));
    g["n_demands"] = std::get<1>(key);
    g["n_outlets"] = std::get<2>(key);
    g["density"] = std::get<3>(key);
    Json algs = Json::object();
    for (const auto& name : group.order) algs[name] = group.by_alg.at(name).to_json();
    g["algorithms"] = std::move(algs);
    jgroups.push_back(std::move(g));
  }
  doc["groups"] = std::move(jgroups);

  const auto pm_json = [](const AlgStats& s) {
    Json j = Json::object();
    j["instances"] = s.pm_count.n;
    j["mean_pm_count"] = s.pm_count.mean();
    j["mean_d_pm_pct"] = s.d_pm_pct.mean();
    j["mean_r_pm_pct"] = s.r_pm_pct.mean();
    return j;
  };
  Json pm = Json::array();
  for (const auto& [key, s] : pm_groups) {
    Json j = pm_json(s);
    j["model"] = to_string(static_cast<ModelKind>(std::get<0>(key)));
    j["n_outlets"] = std::get<1>(key);
    j["n_demands"] = std::get<2>(key);
    pm.push_back(std::move(j));
  }
  for (const auto& [model, s] : pm_overall) {
    Json j = pm_json(s);
    j["model"] = to_string(static_cast<ModelKind>(model));
    j["n_outlets"] = "all";
    j["n_demands"] = "all";
    pm.push_back(std::move(j));
  }
  doc["price_matching"] = std::move(pm);

  const auto gap_json = [](const Stat& s) {
    Json j = Json::object();
    j["instances"] = s.n;
    j["mean_gap"] = s.mean();
    j["min_gap"] = Stat::opt(s.min);
    j["max_gap"] = Stat::opt(s.max);
    return j;
  };
  Json cross = Json::array();
  for (const auto& [key, s] : cross_groups) {
    Json j = gap_json(s);
    j["n_outlets"] = key.first;
    j["n_demands"] = key.second;
    cross.push_back(std::move(j));
  }
  if (cross_overall.n) {
    Json j = gap_json(cross_overall);
    j["n_outlets"] = "all";
    j["n_demands"] = "all";
    cross.push_back(std::move(j));
  }
  doc["cross_model"] = std::move(cross);
  return doc.dump(2) + "\n";
}

SuiteFiles run_suite(const BenchConfig& config, const std::filesystem::path& out_dir, int jobs) {
  SuiteFiles files;
  files.records = run_suite_records(config, jobs);
  const std::string stem =
      config.suite + "-" + (config.timestamp.empty() ? current_timestamp() : config.timestamp);
  files.runs = out_dir / (stem + "_runs.csv");
  files.timings = out_dir / (stem + "_timings.csv");
  files.summary = out_dir / (stem + "_summary.json");
  files.long_data = out_dir / (stem + "_long.csv");
  write_file(files.runs, runs_csv(files.records));
  write_file(files.timings, timings_csv(files.records));
  write_file(files.summary, summary_json(files.records, config.suite));
  write_file(files.long_data, long_csv(files.records));
  return files;
}

std::string report_from_directory(const std::filesystem::path& runs_dir) {
  if (!std::filesystem::is_directory(runs_dir)) {
    throw InputError("'" + runs_dir.string() + "' is not a directory");
  }
  std::vector<std::filesystem::path> paths;
  for (const auto& entry : std::filesystem::directory_iterator(runs_dir)) {
    const std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && name.size() > 9 &&
        name.compare(name.size() - 9, 9, "_runs.csv") == 0) {
      paths.push_back(entry.path());
    }
  }
  if (paths.empty()) throw InputError("no *_runs.csv files in '" + runs_dir.string() + "'");
  std::sort(paths.begin(), paths.end());
  std::vector<RunRecord> records;
  for (const auto& p : paths) {
    try {
      for (auto& r : parse_runs_csv(read_file(p))) records.push_back(std::move(r));
    } catch (const InputError& e) {
      throw InputError(p.string() + ": " + e.what());
    }
  }
  return summary_json(records, runs_dir.filename().string());
}

}  // namespace mnpp
