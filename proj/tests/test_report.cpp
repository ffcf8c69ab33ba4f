#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "swarm_arena/report.hpp"

using namespace swarm_arena;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const char* tag) {
  const fs::path dir =
      fs::temp_directory_path() / (std::string("swarm_arena_test_") + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::size_t line_count(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::size_t lines = 0;
  std::string line;
  while (std::getline(in, line)) ++lines;
  return lines;
}

RunMatrix smoke_matrix() {
  PlanOverrides overrides;
  overrides.problems = std::vector<Problem>{Problem::P14};
  overrides.algorithms = std::vector<Algorithm>{Algorithm::Woa, Algorithm::Pso};
  overrides.runs = 2;
  overrides.iterations = 25;
  overrides.population = 8;
  overrides.master_seed = 3;
  return execute(plan_evaluation(EvaluationKind::Eval1, overrides));
}

// Matrix where the baseline strictly dominates every rival on every run.
RunMatrix dominance_matrix(const std::vector<Problem>& problems,
                           Algorithm baseline, std::size_t runs) {
  RunMatrix matrix;
  matrix.plan.algorithms = {Algorithm::Woa, Algorithm::Ff};
  matrix.plan.runs = runs;
  for (Problem p : problems) {
    matrix.plan.problems.push_back({p, {{"d2", SearchSpace::cube(-1, 1, 2)}}});
    for (Algorithm a : matrix.plan.algorithms) {
      for (std::size_t run = 0; run < runs; ++run) {
        MatrixRecord mr;
        mr.key = {p, a, 0, "d2", run};
        mr.record.problem = p;
        mr.record.algorithm = a;
        mr.record.dim = 2;
        mr.record.best_fitness = a == baseline
                                     ? 0.001 * static_cast<double>(run + 1)
                                     : 0.1 * static_cast<double>(run + 1);
        matrix.records.push_back(mr);
      }
    }
  }
  return matrix;
}

}  // namespace

TEST_CASE("csv quoting survives a round trip") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("with,comma") == "\"with,comma\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  const std::vector<std::string> fields =
      detail::split_csv_line("plain,\"with,comma\",\"say \"\"hi\"\"\"");
  REQUIRE(fields.size() == 3);
  CHECK(fields[0] == "plain");
  CHECK(fields[1] == "with,comma");
  CHECK(fields[2] == "say \"hi\"");
}

TEST_CASE("emit_runs writes one row per record and full traces") {
  const fs::path dir = fresh_dir("runs");
  const RunMatrix matrix = smoke_matrix();
  const std::vector<fs::path> files = emit_runs(matrix, dir);

  REQUIRE(!files.empty());
  CHECK(files[0].filename() == "runs.csv");
  CHECK(files.size() == 1 + matrix.records.size());
  CHECK(line_count(dir / "runs.csv") == 1 + 4);  // header + 4 records
  CHECK(line_count(dir / "trace_P14_woa_d2_0.csv") == 1 + 25);

  std::ifstream runs(dir / "runs.csv");
  std::string header;
  std::getline(runs, header);
  CHECK(header ==
        "problem,algorithm,variant,run,seed,best_fitness,evaluations,"
        "wall_time_s,peak_memory_bytes,success");
}

TEST_CASE("runs.csv round-trips every scalar field exactly") {
  const fs::path dir = fresh_dir("roundtrip");
  const RunMatrix matrix = smoke_matrix();
  emit_runs(matrix, dir);
  const std::vector<RunCsvRow> rows = read_runs_csv(dir / "runs.csv");
  REQUIRE(rows.size() == matrix.records.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const MatrixRecord& mr = matrix.records[i];
    CHECK(rows[i].problem == problem_id(mr.key.problem));
    CHECK(rows[i].algorithm == std::string(algorithm_id(mr.key.algorithm)));
    CHECK(rows[i].variant == mr.key.variant_label);
    CHECK(rows[i].run == mr.key.run_index);
    CHECK(rows[i].seed == mr.record.seed);
    CHECK(rows[i].best_fitness == mr.record.best_fitness);  // bit-exact
    CHECK(rows[i].evaluations == mr.record.evaluations);
    CHECK(rows[i].wall_time_s == mr.record.wall_time_s);
    CHECK(rows[i].peak_memory_bytes == mr.record.peak_memory_bytes);
  }
  CHECK_THROWS_AS(read_runs_csv(dir / "missing.csv"), std::runtime_error);
}

TEST_CASE("comparison against identical samples is all Equal") {
  RunMatrix matrix = dominance_matrix({Problem::P3, Problem::P4}, Algorithm::Woa, 6);
  // Overwrite the rival's values with the baseline's: identical pairs.
  for (MatrixRecord& mr : matrix.records)
    if (mr.key.algorithm == Algorithm::Ff)
      mr.record.best_fitness = 0.001 * static_cast<double>(mr.key.run_index + 1);
  const ComparisonTables tables = compare_matrix(matrix, Algorithm::Woa, 0.05);
  REQUIRE(tables.tests.size() == 2);
  for (const WilcoxonRow& row : tables.tests) {
    CHECK(row.result.verdict == Verdict::Equal);
    CHECK(row.result.n_effective == 0);
  }
}

TEST_CASE("strict dominance over four problems gives a 4/0/0 summary") {
  const fs::path dir = fresh_dir("dominance");
  const RunMatrix matrix = dominance_matrix(
      {Problem::P3, Problem::P4, Problem::P5, Problem::P8}, Algorithm::Woa, 30);
  const std::vector<fs::path> files =
      emit_comparison(matrix, Algorithm::Woa, 0.05, dir);
  REQUIRE(files.size() == 2);

  std::ifstream summary(dir / "summary.csv");
  std::string header, row;
  std::getline(summary, header);
  CHECK(header == "rival,variant,plus,equal,minus");
  std::getline(summary, row);
  CHECK(row == "ff,d2,4,0,0");

  std::ifstream wilcoxon(dir / "wilcoxon.csv");
  std::getline(wilcoxon, header);
  CHECK(header == "variant,problem,rival,p_value,t_plus,t_minus,verdict");
  std::size_t plus_rows = 0;
  while (std::getline(wilcoxon, row))
    if (row.back() == '+') ++plus_rows;
  CHECK(plus_rows == 4);
}

TEST_CASE("summary tallies sum to the number of compared problems") {
  PlanOverrides overrides;
  overrides.problems = std::vector<Problem>{Problem::P14, Problem::P8, Problem::P2};
  overrides.algorithms =
      std::vector<Algorithm>{Algorithm::Woa, Algorithm::Bsa, Algorithm::Pso};
  overrides.runs = 6;
  overrides.iterations = 40;
  overrides.population = 10;
  const RunMatrix matrix = execute(plan_evaluation(EvaluationKind::Eval2, overrides));
  const ComparisonTables tables = compare_matrix(matrix, Algorithm::Woa, 0.05);
  // 2 rivals x 3 spaces, each over 3 problems.
  REQUIRE(tables.summary.size() == 6);
  for (const ComparisonSummaryRow& row : tables.summary)
    CHECK(row.tally.plus + row.tally.equal + row.tally.minus == 3);
}

TEST_CASE("a missing baseline is rejected") {
  const RunMatrix matrix = dominance_matrix({Problem::P3}, Algorithm::Woa, 4);
  CHECK_THROWS_AS(compare_matrix(matrix, Algorithm::Bsa, 0.05),
                  std::invalid_argument);
}

TEST_CASE("success and cost emission are consistent with the aggregators") {
  const fs::path dir = fresh_dir("successcosts");
  const RunMatrix matrix = smoke_matrix();
  const std::vector<fs::path> files = emit_success_and_costs(matrix, dir);
  REQUIRE(files.size() == 2);

  std::ifstream success_file(dir / "success.csv");
  std::string header, line;
  std::getline(success_file, header);
  CHECK(header == "problem,algorithm,variant,success_fraction");
  std::size_t rows = 0;
  while (std::getline(success_file, line)) {
    const double fraction = std::strtod(
        line.substr(line.rfind(',') + 1).c_str(), nullptr);
    CHECK(fraction >= 0.0);
    CHECK(fraction <= 1.0);
    ++rows;
  }
  CHECK(rows == 2);  // one cell per (P14, woa/pso)

  const CostReport costs = cost_report(matrix);
  std::ifstream costs_file(dir / "costs.csv");
  std::getline(costs_file, header);
  CHECK(header ==
        "problem,algorithm,mean_wall_time_s,mean_peak_memory_bytes,"
        "time_winner,memory_winner");
  std::size_t cost_rows = 0;
  while (std::getline(costs_file, line)) {
    const std::vector<std::string> f = detail::split_csv_line(line);
    REQUIRE(f.size() == 6);
    CHECK(f[4] == std::string(algorithm_id(
                      costs.row(problem_from_id(f[0]), CostMetric::RunningTime)
                          .winner)));
    CHECK(f[5] == std::string(algorithm_id(
                      costs.row(problem_from_id(f[0]), CostMetric::MemoryUsage)
                          .winner)));
    ++cost_rows;
  }
  CHECK(cost_rows == 2);  // one problem x two algorithms
}

TEST_CASE("descriptive stats emission carries the seven measures") {
  const fs::path dir = fresh_dir("stats");
  const RunMatrix matrix = smoke_matrix();
  emit_descriptive_stats(matrix, dir);
  std::ifstream stats(dir / "stats.csv");
  std::string header;
  std::getline(stats, header);
  CHECK(header ==
        "problem,algorithm,variant,mean,std,best,worst,avg_time_s,"
        "n_success,n_fail");
  CHECK(line_count(dir / "stats.csv") == 1 + 2);
  std::string line;
  while (std::getline(stats, line)) {
    const std::vector<std::string> f = detail::split_csv_line(line);
    REQUIRE(f.size() == 10);
    const double best = std::strtod(f[5].c_str(), nullptr);
    const double mean = std::strtod(f[3].c_str(), nullptr);
    const double worst = std::strtod(f[6].c_str(), nullptr);
    CHECK(best <= mean);
    CHECK(mean <= worst);
    CHECK(std::stoul(f[8]) + std::stoul(f[9]) == matrix.plan.runs);
  }
}

TEST_CASE("convergence emission averages traces per problem and algorithm") {
  const fs::path dir = fresh_dir("convergence");
  const RunMatrix matrix = smoke_matrix();
  const std::vector<fs::path> files = emit_convergence(matrix, dir);
  REQUIRE(files.size() == 2);  // (P14, woa) and (P14, pso)
  CHECK(line_count(dir / "convergence_P14_woa.csv") == 1 + 25);

  // First averaged value equals the hand mean over the two runs.
  double expected = 0.0;
  for (const MatrixRecord& mr : matrix.records)
    if (mr.key.algorithm == Algorithm::Woa) expected += mr.record.trace[0] / 2.0;
  std::ifstream file(dir / "convergence_P14_woa.csv");
  std::string line;
  std::getline(file, line);
  std::getline(file, line);
  const double first = std::strtod(line.substr(line.find(',') + 1).c_str(), nullptr);
  CHECK(first == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("manifest lists outputs and is valid json") {
  const fs::path dir = fresh_dir("manifest");
  const RunMatrix matrix = smoke_matrix();
  const std::vector<fs::path> files = emit_runs(matrix, dir);
  const fs::path manifest_path = write_manifest(
      matrix.plan, "run", "2026-01-01T00:00:00Z", "2026-01-01T00:00:01Z",
      files, dir);
  REQUIRE(fs::exists(manifest_path));

  std::ifstream in(manifest_path);
  const nlohmann::json manifest = nlohmann::json::parse(in);
  CHECK(manifest.at("tool") == "swarm-arena");
  CHECK(manifest.at("version") == kVersion);
  CHECK(manifest.at("master_seed") == 3);
  CHECK(manifest.at("plan").at("runs") == 2);
  CHECK(manifest.at("plan").at("population") == 8);
  CHECK(manifest.at("outputs").size() == files.size());
  CHECK(manifest.at("outputs")[0] == "runs.csv");
}
