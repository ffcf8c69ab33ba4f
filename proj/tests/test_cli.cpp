#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "swarm_arena/cli.hpp"

using namespace swarm_arena;
namespace fs = std::filesystem;

namespace {

ParseOutcome parse(std::initializer_list<const char*> args) {
  return parse_command_line(std::vector<std::string>(args.begin(), args.end()));
}

fs::path fresh_dir(const char* tag) {
  const fs::path dir =
      fs::temp_directory_path() / (std::string("swarm_arena_cli_") + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("run flags are echoed into the options") {
  const ParseOutcome outcome = parse(
      {"run", "--eval", "2", "--runs", "30", "--seed", "42", "--out", "results/"});
  REQUIRE(outcome.options.has_value());
  const CliOptions& opt = *outcome.options;
  CHECK(opt.command == Command::Run);
  CHECK(opt.eval == 2);
  CHECK(opt.runs == 30);
  CHECK(opt.seed == 42);
  CHECK(opt.out == fs::path("results/"));
}

TEST_CASE("usage errors exit nonzero") {
  CHECK(parse({"run", "--eval", "1", "--runs", "0"}).exit_code != 0);
  CHECK_FALSE(parse({"run", "--eval", "1", "--runs", "0"}).options.has_value());
  CHECK(parse({"run", "--eval", "9"}).exit_code != 0);
  CHECK(parse({"run", "--no-such-flag"}).exit_code != 0);
  CHECK(parse({"frobnicate"}).exit_code != 0);
  CHECK(parse({}).exit_code != 0);
  CHECK(parse({"run", "--algorithms", "woa,abc"}).exit_code != 0);
  CHECK(parse({"run", "--problems", "P99"}).exit_code != 0);
  CHECK(parse({"compare", "--baseline", "nope"}).exit_code != 0);
}

TEST_CASE("help is not an error") {
  const ParseOutcome outcome = parse({"--help"});
  CHECK(outcome.exit_code == 0);
  CHECK_FALSE(outcome.options.has_value());
  CHECK(outcome.message.find("swarm-arena") != std::string::npos);
}

TEST_CASE("compare options parse with baseline and alpha") {
  const ParseOutcome outcome = parse(
      {"compare", "--baseline", "woa", "--alpha", "0.05", "--out", "results/"});
  REQUIRE(outcome.options.has_value());
  CHECK(outcome.options->command == Command::Compare);
  CHECK(outcome.options->baseline == Algorithm::Woa);
  CHECK(outcome.options->alpha == 0.05);
  CHECK(outcome.options->metric == CompareMetric::BestFitness);
  // --in falls back to the output directory.
  CHECK(outcome.options->in == fs::path("results/"));

  const ParseOutcome timed = parse(
      {"compare", "--in", "r", "--baseline", "pso", "--metric", "time"});
  REQUIRE(timed.options.has_value());
  CHECK(timed.options->baseline == Algorithm::Pso);
  CHECK(timed.options->metric == CompareMetric::WallTime);
  CHECK(timed.options->in == fs::path("r"));
}

TEST_CASE("selection lists split on commas") {
  const ParseOutcome outcome =
      parse({"run", "--algorithms", "woa,pso", "--problems", "P14,P8"});
  REQUIRE(outcome.options.has_value());
  CHECK(outcome.options->algorithms ==
        std::vector<Algorithm>{Algorithm::Woa, Algorithm::Pso});
  CHECK(outcome.options->problems ==
        std::vector<Problem>{Problem::P14, Problem::P8});
}

TEST_CASE("full profile swaps in the reference-scale defaults") {
  const ParseOutcome desk = parse({"run"});
  REQUIRE(desk.options.has_value());
  CHECK(desk.options->runs == 5);
  CHECK(desk.options->iters == 200);

  const ParseOutcome full = parse({"run", "--full"});
  REQUIRE(full.options.has_value());
  CHECK(full.options->runs == 30);
  CHECK(full.options->iters == 2000);

  const ParseOutcome mixed = parse({"run", "--full", "--runs", "3"});
  REQUIRE(mixed.options.has_value());
  CHECK(mixed.options->runs == 3);
  CHECK(mixed.options->iters == 2000);
}

TEST_CASE("config file values sit between defaults and flags") {
  const fs::path dir = fresh_dir("config");
  const fs::path cfg = dir / "arena.ini";
  std::ofstream(cfg) << "[run]\nruns=4\niters=25\n";

  const ParseOutcome from_file =
      parse({"run", "--config", cfg.string().c_str()});
  REQUIRE(from_file.options.has_value());
  CHECK(from_file.options->runs == 4);
  CHECK(from_file.options->iters == 25);

  const ParseOutcome overridden =
      parse({"run", "--config", cfg.string().c_str(), "--runs", "2"});
  REQUIRE(overridden.options.has_value());
  CHECK(overridden.options->runs == 2);
  CHECK(overridden.options->iters == 25);
}

TEST_CASE("variant labels recover the run dimension") {
  CHECK(detail::dim_from_variant_label("d30") == 30);
  CHECK(detail::dim_from_variant_label("d2") == 2);
  CHECK(detail::dim_from_variant_label("R2") == 2);
  CHECK_THROWS_AS(detail::dim_from_variant_label("x9"), std::invalid_argument);
}

TEST_CASE("run command writes data files and the manifest last") {
  const fs::path dir = fresh_dir("run");
  CliOptions opt;
  opt.command = Command::Run;
  opt.eval = 2;
  opt.algorithms = {Algorithm::Woa, Algorithm::Pso};
  opt.problems = {Problem::P14};
  opt.runs = 2;
  opt.iters = 20;
  opt.pop = 8;
  opt.seed = 5;
  opt.out = dir;
  REQUIRE(run_command(opt) == 0);
  CHECK(fs::exists(dir / "runs.csv"));
  CHECK(fs::exists(dir / "success.csv"));
  CHECK(fs::exists(dir / "costs.csv"));
  CHECK(fs::exists(dir / "manifest.json"));
  CHECK(fs::exists(dir / "trace_P14_pso_R3_1.csv"));

  SUBCASE("stats, compare, report, and convergence consume the output") {
    CliOptions stats;
    stats.command = Command::Stats;
    stats.in = dir;
    stats.out = dir;
    CHECK(run_command(stats) == 0);
    CHECK(fs::exists(dir / "stats.csv"));

    CliOptions compare;
    compare.command = Command::Compare;
    compare.in = dir;
    compare.out = dir;
    compare.baseline = Algorithm::Woa;
    CHECK(run_command(compare) == 0);
    CHECK(fs::exists(dir / "wilcoxon.csv"));
    CHECK(fs::exists(dir / "summary.csv"));

    CliOptions report;
    report.command = Command::Report;
    report.in = dir;
    report.out = dir;
    CHECK(run_command(report) == 0);

    CliOptions convergence;
    convergence.command = Command::Convergence;
    convergence.in = dir;
    convergence.out = dir;
    CHECK(run_command(convergence) == 0);
    CHECK(fs::exists(dir / "convergence_P14_woa.csv"));
  }
}

TEST_CASE("matrix reconstruction from rows matches the original tables") {
  const fs::path dir = fresh_dir("reconstruct");
  PlanOverrides overrides;
  overrides.problems = std::vector<Problem>{Problem::P14, Problem::P8};
  overrides.algorithms = std::vector<Algorithm>{Algorithm::Woa, Algorithm::Pso};
  overrides.runs = 3;
  overrides.iterations = 30;
  overrides.population = 8;
  const RunMatrix original = execute(plan_evaluation(EvaluationKind::Eval2, overrides));
  emit_runs(original, dir);

  const RunMatrix rebuilt = matrix_from_rows(read_runs_csv(dir / "runs.csv"));
  REQUIRE(rebuilt.records.size() == original.records.size());
  for (std::size_t i = 0; i < rebuilt.records.size(); ++i) {
    CHECK(rebuilt.records[i].key == original.records[i].key);
    CHECK(rebuilt.records[i].record.best_fitness ==
          original.records[i].record.best_fitness);
    CHECK(rebuilt.records[i].record.dim == original.records[i].record.dim);
  }

  const ComparisonTables a = compare_matrix(original, Algorithm::Woa, 0.05);
  const ComparisonTables b = compare_matrix(rebuilt, Algorithm::Woa, 0.05);
  REQUIRE(a.tests.size() == b.tests.size());
  for (std::size_t i = 0; i < a.tests.size(); ++i) {
    CHECK(a.tests[i].result.p_value == b.tests[i].result.p_value);
    CHECK(a.tests[i].result.verdict == b.tests[i].result.verdict);
  }
}
