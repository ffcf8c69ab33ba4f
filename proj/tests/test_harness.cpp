#include <doctest.h>

#include <cstdint>
#include <set>
#include <vector>

#include "swarm_arena/harness.hpp"

using namespace swarm_arena;

namespace {

EvaluationPlan smoke_plan(std::size_t runs = 2, std::size_t iters = 50) {
  PlanOverrides overrides;
  overrides.problems = std::vector<Problem>{Problem::P14};
  overrides.algorithms = std::vector<Algorithm>{Algorithm::Woa, Algorithm::Pso};
  overrides.runs = runs;
  overrides.iterations = iters;
  overrides.population = 10;
  overrides.master_seed = 7;
  return plan_evaluation(EvaluationKind::Eval1, overrides);
}

RunRecord fake_record(Problem p, Algorithm a, std::size_t dim, double best) {
  RunRecord r;
  r.problem = p;
  r.algorithm = a;
  r.dim = dim;
  r.best_fitness = best;
  return r;
}

}  // namespace

TEST_CASE("evaluation 2 plans the published cell count") {
  const EvaluationPlan plan = plan_evaluation(EvaluationKind::Eval2);
  CHECK(plan.runs == 30);
  CHECK(plan.config.iterations == 2000);
  CHECK(plan.config.population_size == 30);
  CHECK(plan.algorithms.size() == 5);
  CHECK(plan.problems.size() == 16);
  // 16 problems x 5 algorithms x 3 spaces x 30 runs
  CHECK(plan.total_records() == 7200);
  for (const ProblemVariants& pv : plan.problems) {
    REQUIRE(pv.variants.size() == 3);
    CHECK(pv.variants[0].label == "R1");
    CHECK(pv.variants[0].space.bounds[0].lower == -5.0);
    CHECK(pv.variants[1].label == "R2");
    CHECK(pv.variants[1].space.bounds[0].upper == 250.0);
    CHECK(pv.variants[2].label == "R3");
    CHECK(pv.variants[2].space.bounds[0].lower == -500.0);
    for (const PlanVariant& v : pv.variants) CHECK(v.dim() == 2);
  }
}

TEST_CASE("evaluation 1 varies dimension only for variable problems") {
  const EvaluationPlan plan = plan_evaluation(EvaluationKind::Eval1);
  for (const ProblemVariants& pv : plan.problems) {
    const ProblemSpec& spec = problem_spec(pv.problem);
    if (spec.variable_dimension) {
      REQUIRE(pv.variants.size() == 3);
      CHECK(pv.variants[0].label == "d10");
      CHECK(pv.variants[1].label == "d30");
      CHECK(pv.variants[2].label == "d60");
      CHECK(pv.variants[2].dim() == 60);
    } else {
      REQUIRE(pv.variants.size() == 1);
      CHECK(pv.variants[0].label == "d2");
      CHECK(pv.variants[0].dim() == 2);
      CHECK(pv.variants[0].space.bounds[0].lower == spec.default_lower);
    }
  }
}

TEST_CASE("evaluation 3 covers the union of evaluations 1 and 2") {
  const EvaluationPlan plan = plan_evaluation(EvaluationKind::Eval3);
  for (const ProblemVariants& pv : plan.problems) {
    const ProblemSpec& spec = problem_spec(pv.problem);
    CHECK(pv.variants.size() == (spec.variable_dimension ? 6 : 4));
    CHECK(pv.variants.back().label == "R3");
  }
}

TEST_CASE("plan overrides are echoed and validated") {
  PlanOverrides overrides;
  overrides.runs = 2;
  const EvaluationPlan plan = plan_evaluation(EvaluationKind::Eval1, overrides);
  CHECK(plan.runs == 2);

  PlanOverrides bad_runs;
  bad_runs.runs = 0;
  CHECK_THROWS_AS(plan_evaluation(EvaluationKind::Eval1, bad_runs),
                  std::invalid_argument);

  PlanOverrides empty_algorithms;
  empty_algorithms.algorithms = std::vector<Algorithm>{};
  CHECK_THROWS_AS(plan_evaluation(EvaluationKind::Eval2, empty_algorithms),
                  std::invalid_argument);

  PlanOverrides bad_pop;
  bad_pop.population = 1;
  CHECK_THROWS_AS(plan_evaluation(EvaluationKind::Eval2, bad_pop),
                  std::invalid_argument);
}

TEST_CASE("trial seeds are deterministic, distinct, and pinned") {
  const std::uint64_t s1 =
      trial_seed(42, Algorithm::Woa, Problem::P14, 0, 0);
  const std::uint64_t s2 =
      trial_seed(42, Algorithm::Woa, Problem::P14, 0, 0);
  CHECK(s1 == s2);
  CHECK(trial_seed(42, Algorithm::Woa, Problem::P14, 0, 1) != s1);
  CHECK(trial_seed(42, Algorithm::Woa, Problem::P14, 1, 0) != s1);
  CHECK(trial_seed(42, Algorithm::Pso, Problem::P14, 0, 0) != s1);
  CHECK(trial_seed(43, Algorithm::Woa, Problem::P14, 0, 0) != s1);

  // Golden value of the documented mixing chain on all-zero inputs.
  CHECK(trial_seed(0, Algorithm::Woa, Problem::P1, 0, 0) ==
        UINT64_C(0x78ae5a9a6b5fd45e));
}

TEST_CASE("success applies the combined absolute and relative tolerance") {
  const ProblemSpec& sphere = problem_spec(Problem::P14);
  CHECK(success(fake_record(Problem::P14, Algorithm::Woa, 2, 1e-8), sphere));
  CHECK_FALSE(success(fake_record(Problem::P14, Algorithm::Woa, 2, 1e-3), sphere));

  // |(-106.76448) - (-106.76453)| = 5e-5 <= 1e-6 + 1e-6*106.76453
  const ProblemSpec& bird = problem_spec(Problem::P3);
  CHECK(success(fake_record(Problem::P3, Algorithm::Woa, 2, -106.76448), bird));

  // Styblinski-Tang's catalog minimum is per dimension.
  const ProblemSpec& styb = problem_spec(Problem::P15);
  CHECK(success(fake_record(Problem::P15, Algorithm::Woa, 2, 2 * -39.1661), styb));
  CHECK_FALSE(success(fake_record(Problem::P15, Algorithm::Woa, 2, -39.1661), styb));

  CHECK_THROWS_AS(success(fake_record(Problem::P14, Algorithm::Woa, 2, 0.0), bird),
                  std::invalid_argument);
}

TEST_CASE("execute produces the planned records in sorted order") {
  const EvaluationPlan plan = smoke_plan();
  const RunMatrix matrix = execute(plan);
  REQUIRE(matrix.records.size() == 4);  // 1 problem x 2 algorithms x 1 x 2 runs
  std::set<std::tuple<int, int, std::size_t, std::size_t>> keys;
  for (const MatrixRecord& mr : matrix.records) {
    keys.insert({static_cast<int>(mr.key.problem),
                 static_cast<int>(mr.key.algorithm), mr.key.variant_index,
                 mr.key.run_index});
    CHECK(mr.record.trace.size() == 50);
    CHECK(mr.record.seed == trial_seed(7, mr.key.algorithm, mr.key.problem,
                                       mr.key.variant_index, mr.key.run_index));
  }
  CHECK(keys.size() == 4);  // no duplicate keys

  // woa (enum 0) rows precede pso (enum 3); runs ascend within a cell.
  CHECK(matrix.records[0].key.algorithm == Algorithm::Woa);
  CHECK(matrix.records[0].key.run_index == 0);
  CHECK(matrix.records[1].key.run_index == 1);
  CHECK(matrix.records[2].key.algorithm == Algorithm::Pso);
}

TEST_CASE("execute is reproducible and schedule-independent") {
  const EvaluationPlan plan = smoke_plan(3, 40);
  const RunMatrix once = execute(plan);
  const RunMatrix twice = execute(plan);
  CHECK(once.records == twice.records);

  EvaluationPlan wide = plan;
  wide.parallelism = 8;
  const RunMatrix parallel = execute(wide);
  CHECK(parallel.records == once.records);

  std::size_t calls = 0, last_done = 0;
  const RunMatrix with_progress =
      execute(plan, [&](std::size_t done, std::size_t total) {
        ++calls;
        last_done = done;
        CHECK(total == 6);
      });
  CHECK(with_progress.records == once.records);
  CHECK(calls == 6);
  CHECK(last_done == 6);
}

TEST_CASE("execute attaches the failing cell to propagated errors") {
  EvaluationPlan plan = smoke_plan();
  plan.config.population_size = 1;  // invalid: rejected inside the trial
  CHECK_THROWS_WITH_AS(execute(plan),
                       doctest::Contains("problem=P14"), std::runtime_error);
}

TEST_CASE("success rates aggregate per cell, problem, and algorithm") {
  RunMatrix matrix;
  // P14: woa succeeds twice, pso once out of two; P7: nobody succeeds.
  auto add = [&](Problem p, Algorithm a, std::size_t run, double best) {
    MatrixRecord mr;
    mr.key = {p, a, 0, "d2", run};
    mr.record = fake_record(p, a, 2, best);
    matrix.records.push_back(mr);
  };
  add(Problem::P14, Algorithm::Woa, 0, 1e-9);
  add(Problem::P14, Algorithm::Woa, 1, 1e-8);
  add(Problem::P14, Algorithm::Pso, 0, 1e-7);
  add(Problem::P14, Algorithm::Pso, 1, 0.5);
  add(Problem::P7, Algorithm::Woa, 0, 1.0);
  add(Problem::P7, Algorithm::Woa, 1, 2.0);
  add(Problem::P7, Algorithm::Pso, 0, 3.0);
  add(Problem::P7, Algorithm::Pso, 1, 4.0);

  const SuccessReport report = success_rates(matrix);
  CHECK(report.cell(Problem::P14, Algorithm::Woa, "d2").fraction() == 1.0);
  CHECK(report.cell(Problem::P14, Algorithm::Pso, "d2").fraction() == 0.5);
  CHECK(report.cell(Problem::P7, Algorithm::Woa, "d2").fraction() == 0.0);

  CHECK(report.problem_summary(Problem::P14).pooled_fraction() == 0.75);
  CHECK(report.problem_summary(Problem::P14).minimized_by_any);
  CHECK(report.problem_summary(Problem::P7).pooled_fraction() == 0.0);
  CHECK_FALSE(report.problem_summary(Problem::P7).minimized_by_any);

  for (const AlgorithmSuccessSummary& as : report.per_algorithm) {
    CHECK(as.runs == 4);
    CHECK(as.problems_minimized == 1);  // only the sphere
  }
}

TEST_CASE("loosening the tolerance never lowers a success fraction") {
  const EvaluationPlan plan = smoke_plan(4, 30);
  const RunMatrix matrix = execute(plan);
  const SuccessReport tight = success_rates(matrix, {1e-9, 1e-9});
  const SuccessReport loose = success_rates(matrix, {1e-2, 1e-2});
  REQUIRE(tight.cells.size() == loose.cells.size());
  for (std::size_t i = 0; i < tight.cells.size(); ++i)
    CHECK(loose.cells[i].fraction() >= tight.cells[i].fraction());
}

TEST_CASE("cost fields stay zero when profiling is off") {
  const RunMatrix matrix = execute(smoke_plan());
  for (const MatrixRecord& mr : matrix.records) {
    CHECK(mr.record.wall_time_s == 0.0);
    CHECK(mr.record.peak_memory_bytes == 0);
  }
}
