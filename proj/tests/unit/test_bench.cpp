#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "fixtures.hpp"
#include "mnpp/bench.hpp"
#include "mnpp/csv.hpp"
#include "mnpp/errors.hpp"
#include "mnpp/exact.hpp"
#include "mnpp/instance_io.hpp"
#include "mnpp/metrics.hpp"

using namespace mnpp;
using namespace fixtures;

namespace {

BenchConfig small_config() {
  BenchConfig cfg;
  cfg.suite = "unit";
  cfg.timestamp = "T0";
  cfg.master_seed = 17;
  cfg.models = {ModelKind::kMnpp, ModelKind::kBmnpp};
  cfg.outlets = {3};
  cfg.demands = {5};
  cfg.densities = {0.5};
  cfg.draws = 3;
  cfg.base.grid.step = money(2.5);
  cfg.algorithms = {Algorithm::kSp, Algorithm::kGreedy, Algorithm::kFi, Algorithm::kOrderI};
  cfg.cross_model = true;
  cfg.base.sample_logit = true;
  return cfg;
}

}  // namespace

TEST_CASE("optimality gap and gain over single price") {
  CHECK(*opt_gap(900.0, 1000.0) == doctest::Approx(10.0));
  CHECK(*opt_gap(1000.0, 1000.0) == 0.0);
  CHECK_FALSE(opt_gap(5.0, 0.0).has_value());
  CHECK(*gain_over_sp(1600.0, 1400.0) == doctest::Approx(14.2857142857));
  CHECK(*gain_over_sp(7.0, 7.0) == 0.0);
  CHECK_FALSE(gain_over_sp(10.0, 0.0).has_value());

  const Revenue r1600 = evaluate_prices(disjoint_pair(), prices({9, 7})).revenue;
  const Revenue r1400 = evaluate_prices(disjoint_pair(), prices({7, 7})).revenue;
  CHECK(*gain_over_sp(r1600, r1400) == doctest::Approx(100.0 / 7.0));
  CHECK(*opt_gap(r1400, r1600) == doctest::Approx(12.5));
}

TEST_CASE("price matching accounting") {
  const Instance inst = disjoint_pair();
  const PmAccounting war = pm_accounting(inst, prices({9, 7}));
  CHECK(war.pm_count == 0);
  CHECK(war.pw_count == 2);
  CHECK(*war.r_pct_pm() == 0.0);
  CHECK(*war.r_pct_pm() + *war.r_pct_pw() == doctest::Approx(100.0));
  CHECK(war.r_pw == doctest::Approx(1600.0));
  CHECK(war.d_pw == doctest::Approx(200.0));

  const PmAccounting match = pm_accounting(inst, prices({10, 8}));
  CHECK(match.pm_count == 2);
  CHECK(match.r_pm == doctest::Approx(900.0));
  CHECK(*match.d_pct_pm() == doctest::Approx(100.0));

  const PmAccounting mixed = pm_accounting(inst, prices({10, 7}));
  CHECK(mixed.pm_count == 1);
  CHECK(mixed.pw_count == 1);
  CHECK(*mixed.r_pct_pm() + *mixed.r_pct_pw() == doctest::Approx(100.0));

  const PmAccounting none = pm_accounting(inst, prices({25, 25}));
  CHECK(none.pm_count + none.pw_count == 0);
  CHECK_FALSE(none.r_pct_pm().has_value());
}

TEST_CASE("cross-model gap vanishes at the logit optimum") {
  const Instance inst = random_tiny(6, ModelKind::kMnpp, 3, 5);
  const auto logit = brute_force(inst.with_model(ModelKind::kBmnpp));
  CHECK(*cross_model_gap(inst, logit.prices, logit.revenue) == doctest::Approx(0.0));
  const auto mnpp = brute_force(inst);
  CHECK(*cross_model_gap(inst, mnpp.prices, logit.revenue) >= -1e-9);
}

TEST_CASE("csv escaping and parsing") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_escape("two\nlines") == "\"two\nlines\"");
  CHECK(csv_line({"a", "b,c", ""}) == "a,\"b,c\",\r\n");

  const CsvTable t = parse_csv("# schema x\r\nk,v\r\n1,\"a,\"\"b\"\"\"\r\n2,\"x\r\ny\"\r\n3,\r\n");
  CHECK(t.comments == std::vector<std::string>{" schema x"});
  CHECK(t.header == CsvRow{"k", "v"});
  REQUIRE(t.rows.size() == 3);
  CHECK(t.rows[0][1] == "a,\"b\"");
  CHECK(t.rows[1][1] == "x\r\ny");
  CHECK(t.rows[2][1] == "");
  CHECK(t.column("v") == 1);
  CHECK_THROWS_AS(t.column("w"), InputError);
  CHECK_THROWS_AS(parse_csv("a,b\n1\n"), InputError);
  CHECK_THROWS_AS(parse_csv("a\n\"open\n"), InputError);
}

TEST_CASE("run statuses") {
  for (auto s : {RunStatus::kOk, RunStatus::kOptimal, RunStatus::kFeasible, RunStatus::kTimeout,
                 RunStatus::kInfeasible, RunStatus::kError, RunStatus::kSkipped}) {
    CHECK(parse_run_status(to_string(s)) == s);
  }
  CHECK(has_solution(RunStatus::kFeasible));
  CHECK_FALSE(has_solution(RunStatus::kTimeout));
}

TEST_CASE("single runs") {
  RunOptions opt;
  const RunOutcome fi = run_algorithm(disjoint_pair(), Algorithm::kFi, opt);
  CHECK(fi.status == RunStatus::kOk);
  CHECK(fi.revenue.value() == 1600.0);
  CHECK_THROWS_AS(run_algorithm(disjoint_pair(), Algorithm::kIp2, opt), SolverError);

  opt.time_limit_seconds = 0.0;
  const RunOutcome late = run_algorithm(random_tiny(2, ModelKind::kMnpp, 6, 12), Algorithm::kFi, opt);
  CHECK(late.status == RunStatus::kTimeout);
}

TEST_CASE("references") {
  RunOptions opt;
  const Reference brute = compute_reference(disjoint_pair(), ReferenceMethod::kAuto, opt);
  CHECK(brute.method == ReferenceMethod::kBrute);
  CHECK(brute.outcome.status == RunStatus::kOptimal);
  CHECK(brute.outcome.revenue.value() == 1600.0);

  const Reference ladder = compute_reference(disjoint_pair(), ReferenceMethod::kAuto, opt, 10);
  CHECK(ladder.method == ReferenceMethod::kLadder);
  CHECK(ladder.outcome.revenue.value() == 1600.0);

  const Instance nine = random_tiny(1, ModelKind::kMnpp, 9, 5);
  const Reference none = compute_reference(nine, ReferenceMethod::kAuto, opt, 10);
  CHECK(none.method == ReferenceMethod::kNone);
  CHECK(none.outcome.status == RunStatus::kSkipped);
}

TEST_CASE("bench config parsing") {
  const BenchConfig cfg = parse_bench_config(R"({
    "suite": "s", "models": ["mnpp", "bmnpp"], "outlets": [3], "demands": [4, 6],
    "densities": [0.5], "draws": 2, "grid": {"min": 0, "max": 10, "step": 0.5},
    "algorithms": ["sp", "fi"], "reference": "brute", "pi": 2.5, "cross_model": true
  })");
  CHECK(cfg.suite == "s");
  CHECK(cfg.models.size() == 2);
  CHECK(cfg.demands == std::vector<int>{4, 6});
  CHECK(cfg.base.grid.max == money(10));
  CHECK(cfg.algorithms == std::vector<Algorithm>{Algorithm::kSp, Algorithm::kFi});
  CHECK(cfg.reference == ReferenceMethod::kBrute);
  CHECK(cfg.base.pi == money(2.5));
  CHECK(cfg.cross_model);

  CHECK_THROWS_AS(parse_bench_config(R"({"suite": "s", "colour": 1})"), InputError);
  CHECK_THROWS_AS(parse_bench_config(R"({"algorithms": ["tabu"]})"), InputError);
  CHECK_THROWS_AS(parse_bench_config(R"({"densities": [2.0]})"), InputError);
  CHECK_THROWS_AS(parse_bench_config(R"({"grid": {"min": 0, "max": 1}})"), InputError);
}

TEST_CASE("an empty algorithm list gives a header-only runs table") {
  BenchConfig cfg = small_config();
  cfg.algorithms.clear();
  const auto records = run_suite_records(cfg);
  CHECK(records.empty());
  const CsvTable t = parse_csv(runs_csv(records));
  CHECK(t.rows.empty());
  CHECK(t.header.size() > 10);
}

TEST_CASE("suite records") {
  const BenchConfig cfg = small_config();
  const auto records = run_suite_records(cfg);
  // 2 models x 3 draws x (opt + 4 algorithms)
  REQUIRE(records.size() == 30);
  CHECK(records[0].algorithm == "opt");
  CHECK(records[0].note == "brute");
  CHECK(records[1].algorithm == "sp");
  int cross = 0;
  for (const auto& r : records) {
    CHECK(r.status != RunStatus::kError);
    if (r.algorithm == "opt") {
      CHECK(r.opt_gap == 0.0);
      cross += r.cross_gap.has_value();
    } else {
      CHECK(*r.opt_gap >= -1e-9);
    }
    if (r.algorithm == "sp") CHECK(r.gain_over_sp == 0.0);
  }
  CHECK(cross == 3);
}

TEST_CASE("runs table round trip") {
  const auto records = run_suite_records(small_config());
  const std::string text = runs_csv(records);
  CHECK(text.rfind("# mnpp-runs v1\r\n", 0) == 0);
  const auto back = parse_runs_csv(text);
  REQUIRE(back.size() == records.size());
  CHECK(runs_csv(back) == text);
  CHECK(back[0].prices == records[0].prices);
  CHECK(summary_json(back, "unit") == summary_json(records, "unit"));
  CHECK_THROWS_AS(parse_runs_csv("# other v9\r\na\r\n"), InputError);
}

TEST_CASE("suite output is independent of the worker count") {
  const BenchConfig cfg = small_config();
  const auto one = run_suite_records(cfg, 1);
  const auto two = run_suite_records(cfg, 2);
  CHECK(runs_csv(one) == runs_csv(two));
  CHECK(long_csv(one) == long_csv(two));
}

TEST_CASE("suite files and reports") {
  const auto dir = std::filesystem::temp_directory_path() / "mnpp_bench_test";
  std::filesystem::remove_all(dir);
  const SuiteFiles files = run_suite(small_config(), dir);
  CHECK(files.runs.filename() == "unit-T0_runs.csv");
  CHECK(std::filesystem::exists(files.timings));
  CHECK(std::filesystem::exists(files.long_data));
  const std::string summary = read_file(files.summary);
  CHECK(summary.find("\"price_matching\"") != std::string::npos);
  CHECK(summary.find("\"cross_model\"") != std::string::npos);
  CHECK(read_file(files.runs).find("wall_seconds") == std::string::npos);
  CHECK(summary == summary_json(files.records, "unit"));
  CHECK(report_from_directory(dir) == summary_json(files.records, "mnpp_bench_test"));
  std::filesystem::remove_all(dir);
}
