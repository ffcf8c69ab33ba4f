// Evaluation harness: builds the run matrices for the three evaluations and
// executes them deterministically.
//
// Evaluation 1 varies the dimension (10/30/60) for the variable-dimension
// problems and runs the fixed-dimension ones at their native size, all in
// the catalog's default spaces. Evaluation 2 runs every problem at dimension
// 2 in the three shared spaces R1 [-5,5], R2 [-250,250] and R3 [-500,500].
// Evaluation 3 is the success-rate aggregation over the other two; planning
// it yields their combined cells so one batch produces the required data.
//
// Every trial derives its seed from (master_seed, algorithm, problem,
// variant, run) through iterated splitmix64 mixing, so the matrix is a pure
// function of the plan: worker count and scheduling order never change it.

#ifndef SWARM_ARENA_HARNESS_HPP
#define SWARM_ARENA_HARNESS_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "swarm_arena/optimizer.hpp"
#include "swarm_arena/profiling.hpp"
#include "swarm_arena/random.hpp"

namespace swarm_arena {

enum class EvaluationKind { Eval1 = 1, Eval2 = 2, Eval3 = 3 };

enum class ProfilingMode {
  None,           // cost fields stay 0; output files are byte-reproducible
  Time,           // wall time measured per trial
  TimeAndMemory,  // wall time and peak allocation; forces sequential trials
};

struct SuccessTolerance {
  double abs = 1e-6;
  double rel = 1e-6;
};

// One (dimension, space) setting a problem is run under.
struct PlanVariant {
  std::string label;  // "d10".."d60" for Evaluation 1, "R1".."R3" for 2
  SearchSpace space;

  std::size_t dim() const noexcept { return space.dim(); }
};

struct ProblemVariants {
  Problem problem;
  std::vector<PlanVariant> variants;
};

struct EvaluationPlan {
  EvaluationKind kind = EvaluationKind::Eval2;
  std::vector<Algorithm> algorithms;
  std::vector<ProblemVariants> problems;
  std::size_t runs = 30;
  OptimizerConfig config;
  SuccessTolerance tolerance;
  std::uint64_t master_seed = 0;
  ProfilingMode profiling = ProfilingMode::None;
  std::size_t parallelism = 1;

  std::size_t total_records() const {
    std::size_t cells = 0;
    for (const auto& pv : problems) cells += pv.variants.size();
    return cells * algorithms.size() * runs;
  }
};

struct PlanOverrides {
  std::optional<std::vector<Algorithm>> algorithms;
  std::optional<std::vector<Problem>> problems;
  std::optional<std::size_t> runs;
  std::optional<std::size_t> iterations;
  std::optional<std::size_t> population;
  std::optional<std::uint64_t> master_seed;
  std::optional<double> tol_abs;
  std::optional<double> tol_rel;
  std::optional<ProfilingMode> profiling;
  std::optional<std::size_t> parallelism;
};

namespace detail {

inline const std::array<std::size_t, 3> kEval1Dims = {10, 30, 60};

inline const std::array<std::pair<const char*, Interval>, 3> kEval2Spaces = {{
    {"R1", {-5.0, 5.0}},
    {"R2", {-250.0, 250.0}},
    {"R3", {-500.0, 500.0}},
}};

inline std::vector<PlanVariant> eval1_variants(Problem p) {
  const ProblemSpec& spec = problem_spec(p);
  std::vector<PlanVariant> out;
  if (spec.variable_dimension) {
    for (std::size_t d : kEval1Dims)
      out.push_back({"d" + std::to_string(d),
                     SearchSpace::cube(spec.default_lower, spec.default_upper, d)});
  } else {
    out.push_back({"d" + std::to_string(spec.native_dim),
                   SearchSpace::cube(spec.default_lower, spec.default_upper,
                                     spec.native_dim)});
  }
  return out;
}

inline std::vector<PlanVariant> eval2_variants() {
  std::vector<PlanVariant> out;
  for (const auto& [label, bounds] : kEval2Spaces)
    out.push_back({label, SearchSpace::cube(bounds.lower, bounds.upper, 2)});
  return out;
}

}  // namespace detail

inline EvaluationPlan plan_evaluation(EvaluationKind kind,
                                      const PlanOverrides& overrides = {}) {
  EvaluationPlan plan;
  plan.kind = kind;
  const auto default_algorithms = all_algorithms();
  plan.algorithms.assign(default_algorithms.begin(), default_algorithms.end());
  if (overrides.algorithms) {
    if (overrides.algorithms->empty())
      throw std::invalid_argument("plan: algorithm list must not be empty");
    plan.algorithms = *overrides.algorithms;
    // Matrix keys sort by enum order; normalize the plan to match.
    std::sort(plan.algorithms.begin(), plan.algorithms.end());
    plan.algorithms.erase(
        std::unique(plan.algorithms.begin(), plan.algorithms.end()),
        plan.algorithms.end());
  }

  const auto default_problems = all_problems();
  std::vector<Problem> problems(default_problems.begin(), default_problems.end());
  if (overrides.problems) {
    if (overrides.problems->empty())
      throw std::invalid_argument("plan: problem list must not be empty");
    problems = *overrides.problems;
    std::sort(problems.begin(), problems.end());
    problems.erase(std::unique(problems.begin(), problems.end()), problems.end());
  }
  for (Problem p : problems) {
    std::vector<PlanVariant> variants;
    switch (kind) {
      case EvaluationKind::Eval1:
        variants = detail::eval1_variants(p);
        break;
      case EvaluationKind::Eval2:
        variants = detail::eval2_variants();
        break;
      case EvaluationKind::Eval3: {
        variants = detail::eval1_variants(p);
        for (PlanVariant& v : detail::eval2_variants())
          variants.push_back(std::move(v));
        break;
      }
    }
    plan.problems.push_back({p, std::move(variants)});
  }

  if (overrides.runs) plan.runs = *overrides.runs;
  if (overrides.iterations) plan.config.iterations = *overrides.iterations;
  if (overrides.population) plan.config.population_size = *overrides.population;
  if (overrides.master_seed) plan.master_seed = *overrides.master_seed;
  if (overrides.tol_abs) plan.tolerance.abs = *overrides.tol_abs;
  if (overrides.tol_rel) plan.tolerance.rel = *overrides.tol_rel;
  if (overrides.profiling) plan.profiling = *overrides.profiling;
  if (overrides.parallelism) plan.parallelism = *overrides.parallelism;

  if (plan.runs < 1) throw std::invalid_argument("plan: runs must be >= 1");
  if (plan.parallelism < 1)
    throw std::invalid_argument("plan: parallelism must be >= 1");
  if (!(plan.tolerance.abs >= 0.0 && plan.tolerance.rel >= 0.0))
    throw std::invalid_argument("plan: tolerances must be nonnegative");
  plan.config.validate();
  return plan;
}

// Per-trial seed: iterated splitmix64 mixing of the five inputs, in the
// order master, algorithm, problem, variant, run.
inline std::uint64_t trial_seed(std::uint64_t master_seed, Algorithm algorithm,
                                Problem problem, std::size_t variant_index,
                                std::size_t run_index) {
  std::uint64_t h = mix64(master_seed);
  h = mix64(h ^ static_cast<std::uint64_t>(static_cast<int>(algorithm)));
  h = mix64(h ^ static_cast<std::uint64_t>(static_cast<int>(problem)));
  h = mix64(h ^ static_cast<std::uint64_t>(variant_index));
  h = mix64(h ^ static_cast<std::uint64_t>(run_index));
  return h;
}

struct RunCellKey {
  Problem problem{};
  Algorithm algorithm{};
  std::size_t variant_index = 0;
  std::string variant_label;
  std::size_t run_index = 0;

  bool operator==(const RunCellKey&) const = default;

  std::string describe() const {
    return "problem=" + problem_id(problem) +
           " algorithm=" + std::string(algorithm_id(algorithm)) +
           " variant=" + variant_label + " run=" + std::to_string(run_index);
  }
};

struct MatrixRecord {
  RunCellKey key;
  RunRecord record;

  bool operator==(const MatrixRecord&) const = default;
};

// Complete result set of one executed plan, sorted by
// (problem, algorithm, variant, run).
struct RunMatrix {
  EvaluationPlan plan;
  std::string created_at;  // manifest-only; never written into data files
  std::vector<MatrixRecord> records;
};

using ProgressSink = std::function<void(std::size_t completed, std::size_t total)>;

namespace detail {

inline std::string timestamp_utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

}  // namespace detail

inline RunMatrix execute(const EvaluationPlan& plan,
                         const ProgressSink& progress = {}) {
  struct Task {
    RunCellKey key;
    const SearchSpace* space;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  tasks.reserve(plan.total_records());
  for (const ProblemVariants& pv : plan.problems)
    for (Algorithm algorithm : plan.algorithms)
      for (std::size_t v = 0; v < pv.variants.size(); ++v)
        for (std::size_t run = 0; run < plan.runs; ++run)
          tasks.push_back(
              {RunCellKey{pv.problem, algorithm, v, pv.variants[v].label, run},
               &pv.variants[v].space,
               trial_seed(plan.master_seed, algorithm, pv.problem, v, run)});

  RunMatrix matrix;
  matrix.plan = plan;
  matrix.created_at = detail::timestamp_utc_now();
  matrix.records.resize(tasks.size());

  const bool profile_time = plan.profiling != ProfilingMode::None;
  const bool profile_memory = plan.profiling == ProfilingMode::TimeAndMemory;
  // Memory counters are per-thread; profiled trials must not interleave.
  const std::size_t workers =
      profile_memory ? 1 : std::min(plan.parallelism, std::max<std::size_t>(tasks.size(), 1));

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> completed{0};
  std::mutex progress_mutex;
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task& task = tasks[i];
      try {
        auto trial = [&] {
          return minimize(task.key.algorithm, task.key.problem, *task.space,
                          plan.config, task.seed);
        };
        auto [record, cost] = measure_cost(trial, profile_time, profile_memory);
        record.wall_time_s = cost.wall_time_s;
        record.peak_memory_bytes = cost.peak_memory_bytes;
        matrix.records[i] = MatrixRecord{task.key, std::move(record)};
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) {
          try {
            std::throw_with_nested(std::runtime_error("trial failed: " +
                                                      task.key.describe()));
          } catch (...) {
            first_error = std::current_exception();
          }
        }
        next.store(tasks.size());
        return;
      }
      const std::size_t done = completed.fetch_add(1) + 1;
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress(done, tasks.size());
      }
    }
  };

  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return matrix;
}

// Success: the run came within tolerance of the problem's published minimum
// (dimension-scaled where the catalog value is per dimension).
inline bool success(const RunRecord& record, const ProblemSpec& spec,
                    SuccessTolerance tol = {}) {
  if (spec.id != record.problem)
    throw std::invalid_argument("success: record and spec disagree on the problem");
  const double target = spec.global_minimum_at(record.dim);
  return std::abs(record.best_fitness - target) <=
         tol.abs + tol.rel * std::abs(target);
}

struct SuccessCell {
  Problem problem{};
  Algorithm algorithm{};
  std::string variant_label;
  std::size_t successes = 0;
  std::size_t runs = 0;

  double fraction() const {
    return runs == 0 ? 0.0
                     : static_cast<double>(successes) / static_cast<double>(runs);
  }
};

struct ProblemSuccessSummary {
  Problem problem{};
  std::size_t successes = 0;
  std::size_t runs = 0;
  bool minimized_by_any = false;

  double pooled_fraction() const {
    return runs == 0 ? 0.0
                     : static_cast<double>(successes) / static_cast<double>(runs);
  }
};

struct AlgorithmSuccessSummary {
  Algorithm algorithm{};
  std::size_t successes = 0;
  std::size_t runs = 0;
  std::size_t problems_minimized = 0;  // problems with at least one success

  double pooled_fraction() const {
    return runs == 0 ? 0.0
                     : static_cast<double>(successes) / static_cast<double>(runs);
  }
};

struct SuccessReport {
  std::vector<SuccessCell> cells;  // matrix order
  std::vector<ProblemSuccessSummary> per_problem;
  std::vector<AlgorithmSuccessSummary> per_algorithm;

  const SuccessCell& cell(Problem p, Algorithm a, std::string_view variant) const {
    for (const SuccessCell& c : cells)
      if (c.problem == p && c.algorithm == a && c.variant_label == variant)
        return c;
    throw std::out_of_range("success report: no such cell");
  }
  const ProblemSuccessSummary& problem_summary(Problem p) const {
    for (const ProblemSuccessSummary& s : per_problem)
      if (s.problem == p) return s;
    throw std::out_of_range("success report: no such problem");
  }
};

inline SuccessReport success_rates(const RunMatrix& matrix,
                                   SuccessTolerance tol = {}) {
  SuccessReport report;
  std::map<std::tuple<int, int, std::size_t>, std::size_t> cell_pos;
  std::map<int, std::size_t> problem_pos;
  std::map<int, std::size_t> algorithm_pos;

  for (const MatrixRecord& mr : matrix.records) {
    const bool ok = success(mr.record, problem_spec(mr.key.problem), tol);

    const auto cell_key =
        std::make_tuple(static_cast<int>(mr.key.problem),
                        static_cast<int>(mr.key.algorithm), mr.key.variant_index);
    auto it = cell_pos.find(cell_key);
    if (it == cell_pos.end()) {
      it = cell_pos.emplace(cell_key, report.cells.size()).first;
      report.cells.push_back(
          {mr.key.problem, mr.key.algorithm, mr.key.variant_label, 0, 0});
    }
    SuccessCell& cell = report.cells[it->second];
    cell.runs += 1;
    cell.successes += ok ? 1 : 0;

    auto pit = problem_pos.find(static_cast<int>(mr.key.problem));
    if (pit == problem_pos.end()) {
      pit = problem_pos.emplace(static_cast<int>(mr.key.problem),
                                report.per_problem.size())
                .first;
      report.per_problem.push_back({mr.key.problem, 0, 0, false});
    }
    ProblemSuccessSummary& ps = report.per_problem[pit->second];
    ps.runs += 1;
    ps.successes += ok ? 1 : 0;
    ps.minimized_by_any = ps.minimized_by_any || ok;

    auto ait = algorithm_pos.find(static_cast<int>(mr.key.algorithm));
    if (ait == algorithm_pos.end()) {
      ait = algorithm_pos.emplace(static_cast<int>(mr.key.algorithm),
                                  report.per_algorithm.size())
                .first;
      report.per_algorithm.push_back({mr.key.algorithm, 0, 0, 0});
    }
    AlgorithmSuccessSummary& as = report.per_algorithm[ait->second];
    as.runs += 1;
    as.successes += ok ? 1 : 0;
  }

  for (AlgorithmSuccessSummary& as : report.per_algorithm) {
    for (const ProblemSuccessSummary& ps : report.per_problem) {
      for (const SuccessCell& c : report.cells) {
        if (c.algorithm == as.algorithm && c.problem == ps.problem &&
            c.successes > 0) {
          ++as.problems_minimized;
          break;
        }
      }
    }
  }
  return report;
}

enum class CostMetric { RunningTime, MemoryUsage };

inline std::string_view cost_metric_name(CostMetric m) {
  return m == CostMetric::RunningTime ? "running_time" : "memory_usage";
}

// One row per problem per metric: the per-algorithm means (pooled over
// variants and runs) and the winning algorithm, lowest enum index on ties.
struct CostReportRow {
  Problem problem{};
  CostMetric metric{};
  std::vector<std::pair<Algorithm, double>> means;  // enum order
  Algorithm winner{};
};

struct CostReport {
  std::vector<CostReportRow> rows;

  const CostReportRow& row(Problem p, CostMetric m) const {
    for (const CostReportRow& r : rows)
      if (r.problem == p && r.metric == m) return r;
    throw std::out_of_range("cost report: no such row");
  }
};

inline CostReport cost_report(const RunMatrix& matrix) {
  struct Acc {
    double time_sum = 0.0;
    double memory_sum = 0.0;
    std::size_t count = 0;
  };
  std::map<std::pair<int, int>, Acc> acc;  // (problem, algorithm)
  for (const MatrixRecord& mr : matrix.records) {
    Acc& a = acc[{static_cast<int>(mr.key.problem),
                  static_cast<int>(mr.key.algorithm)}];
    a.time_sum += mr.record.wall_time_s;
    a.memory_sum += static_cast<double>(mr.record.peak_memory_bytes);
    a.count += 1;
  }

  std::vector<Problem> problems;
  std::vector<Algorithm> algorithms;
  for (Problem p : all_problems())
    if (std::any_of(acc.begin(), acc.end(), [&](const auto& kv) {
          return kv.first.first == static_cast<int>(p);
        }))
      problems.push_back(p);
  for (Algorithm a : all_algorithms())
    if (std::any_of(acc.begin(), acc.end(), [&](const auto& kv) {
          return kv.first.second == static_cast<int>(a);
        }))
      algorithms.push_back(a);

  CostReport report;
  for (Problem p : problems) {
    for (CostMetric metric : {CostMetric::RunningTime, CostMetric::MemoryUsage}) {
      CostReportRow row;
      row.problem = p;
      row.metric = metric;
      bool first = true;
      double best_mean = 0.0;
      for (Algorithm a : algorithms) {
        const Acc& cell = acc.at({static_cast<int>(p), static_cast<int>(a)});
        const double sum =
            metric == CostMetric::RunningTime ? cell.time_sum : cell.memory_sum;
        const double mean = sum / static_cast<double>(cell.count);
        row.means.emplace_back(a, mean);
        if (first || mean < best_mean) {
          first = false;
          best_mean = mean;
          row.winner = a;
        }
      }
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

}  // namespace swarm_arena

#endif  // SWARM_ARENA_HARNESS_HPP
