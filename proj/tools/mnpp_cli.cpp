// mnpp: instance generation, pricing heuristics, exact oracles and benchmarks.
//
// Exit codes: 0 ok, 2 usage, 3 input, 4 solver, 5 every run timed out.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "mnpp/bench.hpp"
#include "mnpp/errors.hpp"
#include "mnpp/exact.hpp"
#include "mnpp/formulations.hpp"
#include "mnpp/heuristics.hpp"
#include "mnpp/instance_io.hpp"
#include "mnpp/instgen.hpp"
#include "mnpp/lp_format.hpp"
#include "mnpp/metrics.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kUsage = 2, kInput = 3, kSolver = 4, kTimeoutAll = 5 };

std::optional<mnpp::Money> parse_pi(const std::string& text) {
  if (text == "inf" || text == "none") return std::nullopt;
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || v < 0) throw std::invalid_argument(text);
    return mnpp::Money::from_double(v);
  } catch (const std::invalid_argument&) {
    throw mnpp::InputError("--pi expects a non-negative number or 'inf', got '" + text + "'");
  }
}

Json prices_json(const std::vector<mnpp::Money>& prices) {
  Json out = Json::array();
  for (auto p : prices) out.push_back(p.value());
  return out;
}

Json solution_json(const mnpp::Instance& inst, std::string_view method,
                   const mnpp::RunOutcome& out) {
  Json j = Json::object();
  j["format"] = "mnpp-solution/1";
  j["model"] = mnpp::to_string(inst.model());
  j["instance_seed"] = inst.seed();
  j["pi"] = inst.pi() ? Json(inst.pi()->value()) : Json(nullptr);
  j["algorithm"] = method;
  j["status"] = mnpp::to_string(out.status);
  if (mnpp::has_solution(out.status)) {
    j["revenue"] = out.revenue.value();
    j["prices"] = prices_json(out.prices);
    j["ladder"] = out.ladder;
    if (out.mip_objective) j["mip_objective"] = *out.mip_objective;
    const auto pm = mnpp::pm_accounting(inst, out.prices);
    Json acc = Json::object();
    acc["pm_count"] = pm.pm_count;
    acc["pw_count"] = pm.pw_count;
    acc["d_pm"] = pm.d_pm;
    acc["d_pw"] = pm.d_pw;
    acc["r_pm"] = pm.r_pm;
    acc["r_pw"] = pm.r_pw;
    j["price_matching"] = std::move(acc);
  } else {
    j["revenue"] = nullptr;
  }
  j["dp_calls"] = out.dp_calls;
  if (!out.message.empty()) j["message"] = out.message;
  return j;
}

void print_outcome(std::string_view method, const mnpp::RunOutcome& out, const fs::path& path) {
  std::printf("%s: %s", std::string(method).c_str(), std::string(mnpp::to_string(out.status)).c_str());
  if (mnpp::has_solution(out.status)) std::printf(", revenue %.2f", out.revenue.value());
  std::printf(" (%.3f s) -> %s\n", out.wall_seconds, path.string().c_str());
}

std::optional<mnpp::SolverAdapter> solver_from(const std::string& cmd) {
  if (!cmd.empty()) return mnpp::SolverAdapter{cmd};
  return mnpp::SolverAdapter::from_environment();
}

std::string suite_file_name(mnpp::ModelKind model, const mnpp::SuiteEntry& e) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%s-o%d-n%d-p%s-g%03zu-d%02zu.json",
                std::string(mnpp::to_string(model)).c_str(), e.params.n_outlets,
                e.params.n_demands, mnpp::format_number(e.params.density).c_str(), e.graph_index,
                e.draw_index);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Min-pricing heuristics, exact oracles and benchmarks"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a random instance (or the full design)");
  std::string gen_model = "mnpp";
  mnpp::GenParams gp;
  std::string gen_out;
  std::string gen_pi = "inf";
  std::optional<std::uint64_t> gen_graph_seed;
  double grid_min = 0, grid_max = 25, grid_step = 0.5;
  bool full_design = false;
  gen->add_option("--model", gen_model, "mnpp or bmnpp")->check(CLI::IsMember({"mnpp", "bmnpp"}));
  gen->add_option("--outlets", gp.n_outlets, "Number of outlets");
  gen->add_option("--demands", gp.n_demands, "Number of demand nodes");
  gen->add_option("--density", gp.density, "Edge density P in (0, 1]");
  gen->add_option("--seed", gp.seed, "Seed (master seed with --full-design)");
  gen->add_option("--graph-seed", gen_graph_seed, "Separate seed for the edge set");
  gen->add_option("--pi", gen_pi, "Price spread bound, or 'inf'");
  gen->add_option("--grid-min", grid_min);
  gen->add_option("--grid-max", grid_max);
  gen->add_option("--grid-step", grid_step);
  gen->add_flag("--sample-logit", gp.sample_logit, "Sample logit coefficients for MNPP too");
  gen->add_flag("--full-design", full_design, "Emit the 450-instance design into --out (a directory)");
  gen->add_option("--out", gen_out, "Output file (directory with --full-design)")->required();

  // solve
  auto* solve = app.add_subcommand("solve", "Run one algorithm on an instance");
  std::string alg_name, solve_in, solve_out, solver_cmd, solve_pi;
  double time_limit = 60.0;
  bool sp_match = false, order_argmax = false;
  solve->add_option("--alg", alg_name, "sp|greedy|order|fi|greedyI|orderI|ip1I|ip2I|ip1|ip2")
      ->required();
  solve->add_option("--in", solve_in, "Instance file")->required();
  solve->add_option("--out", solve_out, "Solution file")->required();
  solve->add_option("--solver-cmd", solver_cmd,
                    "Solver template with {model} {solution} {seconds}; default $MNPP_SOLVER_CMD");
  solve->add_option("--time-limit", time_limit, "Seconds")->check(CLI::PositiveNumber);
  solve->add_option("--pi", solve_pi, "Override the instance spread bound ('inf' removes it)");
  solve->add_flag("--sp-include-match", sp_match, "Single price also scores matched demand");
  solve->add_flag("--order-argmax", order_argmax, "Outlet ordering picks the highest score");

  // exact
  auto* exact = app.add_subcommand("exact", "Exact optimum by enumeration");
  std::string exact_method = "brute", exact_in, exact_out;
  std::uint64_t limit = mnpp::kDefaultEnumerationLimit;
  exact->add_option("--method", exact_method, "brute or ladder")
      ->check(CLI::IsMember({"brute", "ladder"}));
  exact->add_option("--in", exact_in, "Instance file")->required();
  exact->add_option("--out", exact_out, "Solution file")->required();
  exact->add_option("--limit", limit, "Maximum price vectors for brute force");

  // bench
  auto* bench = app.add_subcommand("bench", "Run an experiment suite");
  std::string config_path, out_dir, bench_timestamp, bench_solver;
  int jobs = 1;
  bench->add_option("--config", config_path, "Suite config (JSON)")->required();
  bench->add_option("--out-dir", out_dir, "Output directory")->required();
  bench->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  bench->add_option("--timestamp", bench_timestamp, "Timestamp used in file names");
  bench->add_option("--solver-cmd", bench_solver, "Solver template; overrides the config");

  // export
  auto* exp = app.add_subcommand("export", "Write IP1 or IP2 of an instance as an LP file");
  std::string formulation = "ip2", export_in, export_out;
  bool relaxed = false;
  exp->add_option("--formulation", formulation, "ip1 or ip2")->check(CLI::IsMember({"ip1", "ip2"}));
  exp->add_option("--in", export_in, "Instance file")->required();
  exp->add_option("--out", export_out, "LP file")->required();
  exp->add_flag("--relax", relaxed, "Write the LP relaxation");

  // report
  auto* report = app.add_subcommand("report", "Summarize runs tables");
  std::string runs_dir, report_out;
  report->add_option("--runs", runs_dir, "Directory holding *_runs.csv files")->required();
  report->add_option("--out", report_out, "Summary file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) {
      gp.model = mnpp::parse_model_kind(gen_model);
      gp.pi = parse_pi(gen_pi);
      gp.graph_seed = gen_graph_seed;
      gp.grid.min = mnpp::Money::from_double(grid_min);
      gp.grid.max = mnpp::Money::from_double(grid_max);
      gp.grid.step = mnpp::Money::from_double(grid_step);
      if (full_design) {
        const auto entries = mnpp::full_design_params(gp.seed, gp.model);
        for (const auto& e : entries) {
          mnpp::GenParams p = e.params;
          p.grid = gp.grid;
          p.pi = gp.pi;
          p.sample_logit = gp.sample_logit;
          mnpp::save_instance(mnpp::generate(p), fs::path(gen_out) / suite_file_name(gp.model, e));
        }
        std::printf("wrote %zu instances to %s\n", entries.size(), gen_out.c_str());
      } else {
        const mnpp::Instance inst = mnpp::generate(gp);
        mnpp::save_instance(inst, gen_out);
        std::printf("%s instance: %d outlets, %d demands, %zu edges -> %s\n",
                    std::string(mnpp::to_string(inst.model())).c_str(), inst.n_outlets(),
                    inst.n_demands(), inst.n_edges(), gen_out.c_str());
      }
      return kOk;
    }

    if (*solve) {
      const mnpp::Algorithm alg = mnpp::parse_algorithm(alg_name);
      mnpp::Instance inst = mnpp::load_instance(solve_in);
      if (!solve_pi.empty()) inst = inst.with_pi(parse_pi(solve_pi));
      mnpp::RunOptions opts;
      opts.time_limit_seconds = time_limit;
      opts.solver = solver_from(solver_cmd);
      opts.sp_include_match = sp_match;
      opts.order_argmax = order_argmax;
      const mnpp::RunOutcome out = mnpp::run_algorithm(inst, alg, opts);
      mnpp::write_file(solve_out, solution_json(inst, alg_name, out).dump(2) + "\n");
      print_outcome(alg_name, out, solve_out);
      return out.status == mnpp::RunStatus::kTimeout ? kTimeoutAll : kOk;
    }

    if (*exact) {
      const mnpp::Instance inst = mnpp::load_instance(exact_in);
      mnpp::RunOptions opts;
      const auto method = mnpp::parse_reference_method(exact_method);
      const mnpp::Reference ref = mnpp::compute_reference(inst, method, opts, limit);
      mnpp::write_file(exact_out, solution_json(inst, exact_method, ref.outcome).dump(2) + "\n");
      print_outcome(exact_method, ref.outcome, exact_out);
      return kOk;
    }

    if (*bench) {
      mnpp::BenchConfig cfg = mnpp::load_bench_config(config_path);
      if (!bench_timestamp.empty()) cfg.timestamp = bench_timestamp;
      if (!bench_solver.empty()) {
        cfg.run.solver = mnpp::SolverAdapter{bench_solver};
      } else if (!cfg.run.solver) {
        cfg.run.solver = mnpp::SolverAdapter::from_environment();
      }
      const mnpp::SuiteFiles files = mnpp::run_suite(cfg, out_dir, jobs);
      std::size_t timeouts = 0, errors = 0;
      for (const auto& r : files.records) {
        timeouts += r.status == mnpp::RunStatus::kTimeout;
        errors += r.status == mnpp::RunStatus::kError;
      }
      std::printf("%zu runs (%zu timeouts, %zu errors)\n  %s\n  %s\n  %s\n  %s\n",
                  files.records.size(), timeouts, errors, files.runs.string().c_str(),
                  files.summary.string().c_str(), files.long_data.string().c_str(),
                  files.timings.string().c_str());
      if (!files.records.empty() && timeouts == files.records.size()) return kTimeoutAll;
      return kOk;
    }

    if (*exp) {
      const mnpp::Instance inst = mnpp::load_instance(export_in);
      mnpp::LinearModel model = mnpp::build_formulation(
          inst, formulation == "ip1" ? mnpp::Formulation::kIp1 : mnpp::Formulation::kIp2);
      if (relaxed) model = mnpp::relax(std::move(model));
      mnpp::write_file(export_out, mnpp::to_lp_string(model));
      std::printf("%s: %zu variables, %zu constraints -> %s\n", formulation.c_str(),
                  model.variables().size(), model.constraints().size(), export_out.c_str());
      return kOk;
    }

    if (*report) {
      mnpp::write_file(report_out, mnpp::report_from_directory(runs_dir));
      std::printf("summary -> %s\n", report_out.c_str());
      return kOk;
    }
  } catch (const mnpp::SolverError& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return kSolver;
  } catch (const mnpp::TimeoutError& e) {
    std::fprintf(stderr, "timeout: %s\n", e.what());
    return kTimeoutAll;
  } catch (const mnpp::InputError& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return kInput;
  } catch (const mnpp::EnumerationTooLarge& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return kInput;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kInput;
  }
  return kUsage;
}
