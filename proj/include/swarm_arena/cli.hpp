// Command-line front end: subcommands run | stats | compare | report |
// convergence over the evaluation harness.
//
// `run` executes a plan and emits runs.csv, per-run trace files, success.csv,
// costs.csv and a manifest.json written last. The other subcommands read a
// previous run's output directory (--in) and derive their tables from it, so
// statistics never require re-running trials.
//
// Option precedence: command-line flags override the --config file, which
// overrides built-in defaults. The default profile is desk-scale (5 runs,
// 200 iterations); --full switches to the reference-scale 30 runs x 2000
// iterations unless --runs/--iters are given explicitly.

#ifndef SWARM_ARENA_CLI_HPP
#define SWARM_ARENA_CLI_HPP

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "swarm_arena/harness.hpp"
#include "swarm_arena/report.hpp"
#include "swarm_arena/version.hpp"

namespace swarm_arena {

enum class Command { Run, Stats, Compare, Report, Convergence };

struct CliOptions {
  Command command = Command::Run;
  int eval = 2;
  std::vector<Algorithm> algorithms;  // empty means all five
  std::vector<Problem> problems;      // empty means the full catalog
  std::size_t runs = 5;
  std::size_t iters = 200;
  std::size_t pop = 30;
  std::uint64_t seed = 0;
  double tol_abs = 1e-6;
  double tol_rel = 1e-6;
  bool profile_time = false;
  bool profile_memory = false;
  std::size_t parallel = 1;
  std::filesystem::path out;
  std::filesystem::path in;
  Algorithm baseline = Algorithm::Woa;
  double alpha = 0.05;
  CompareMetric metric = CompareMetric::BestFitness;
};

// Either parsed options or a terminal outcome (usage error, --help).
struct ParseOutcome {
  std::optional<CliOptions> options;
  int exit_code = 0;
  std::string message;
};

namespace detail {

inline std::filesystem::path default_out_dir() {
  if (const char* env = std::getenv("SWARM_ARENA_OUT"); env && *env)
    return env;
  return "results";
}

inline std::vector<Algorithm> parse_algorithm_list(
    const std::vector<std::string>& ids) {
  std::vector<Algorithm> out;
  for (const std::string& id : ids) out.push_back(algorithm_from_id(id));
  return out;
}

inline std::vector<Problem> parse_problem_list(
    const std::vector<std::string>& ids) {
  std::vector<Problem> out;
  for (const std::string& id : ids) out.push_back(problem_from_id(id));
  return out;
}

}  // namespace detail

// Parses argv (without the program name). Never exits the process.
inline ParseOutcome parse_command_line(std::vector<std::string> args) {
  CLI::App app{"swarm-arena: fair benchmarking of five swarm optimizers"};
  app.require_subcommand(1);
  app.set_config("--config", "", "configuration file (INI, flags override it)");

  CliOptions opt;
  opt.out = detail::default_out_dir();

  std::vector<std::string> algorithm_ids;
  std::vector<std::string> problem_ids;
  std::string baseline_id = "woa";
  std::string metric_name = "fitness";
  std::string in_dir;
  bool full = false;

  auto add_output_opts = [&](CLI::App* cmd) {
    cmd->add_option("--out", opt.out, "output directory")
        ->envname("SWARM_ARENA_OUT");
  };
  auto add_input_opts = [&](CLI::App* cmd) {
    cmd->add_option("--in", in_dir,
                    "directory holding a previous run's output (default: --out)");
  };
  auto add_tolerance_opts = [&](CLI::App* cmd) {
    cmd->add_option("--tol-abs", opt.tol_abs, "absolute success tolerance")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--tol-rel", opt.tol_rel, "relative success tolerance")
        ->check(CLI::NonNegativeNumber);
  };
  auto add_selection_opts = [&](CLI::App* cmd) {
    cmd->add_option("--algorithms", algorithm_ids,
                    "comma-separated algorithm ids (woa,bsa,fdo,pso,ff)")
        ->delimiter(',');
    cmd->add_option("--problems", problem_ids,
                    "comma-separated problem ids (P1..P16)")
        ->delimiter(',');
  };

  CLI::App* run = app.add_subcommand("run", "execute an evaluation");
  run->fallthrough();  // lets --config (a parent option) follow the subcommand
  run->add_option("--eval", opt.eval, "evaluation to run: 1, 2 or 3")
      ->check(CLI::Range(1, 3));
  add_selection_opts(run);
  CLI::Option* runs_opt =
      run->add_option("--runs", opt.runs, "seeded runs per cell")
          ->check(CLI::PositiveNumber);
  CLI::Option* iters_opt =
      run->add_option("--iters", opt.iters, "iterations per run")
          ->check(CLI::PositiveNumber);
  run->add_option("--pop", opt.pop, "population size")->check(CLI::PositiveNumber);
  run->add_option("--seed", opt.seed, "master seed");
  add_tolerance_opts(run);
  run->add_flag("--profile-time", opt.profile_time,
                "measure wall time per trial (output no longer byte-reproducible)");
  run->add_flag("--profile-memory", opt.profile_memory,
                "measure wall time and peak allocation; forces --parallel 1");
  run->add_option("--parallel", opt.parallel, "worker threads")
      ->check(CLI::PositiveNumber);
  run->add_flag("--full", full,
                "reference-scale profile: 30 runs, 2000 iterations");
  add_output_opts(run);

  CLI::App* stats = app.add_subcommand(
      "stats", "descriptive statistics per problem/algorithm/variant");
  stats->fallthrough();
  add_input_opts(stats);
  add_tolerance_opts(stats);
  add_output_opts(stats);

  CLI::App* compare = app.add_subcommand(
      "compare", "Wilcoxon signed-rank comparison against a baseline");
  compare->fallthrough();
  add_input_opts(compare);
  compare->add_option("--baseline", baseline_id, "baseline algorithm id");
  compare->add_option("--alpha", opt.alpha, "significance level")
      ->check(CLI::Range(0.0, 1.0));
  compare->add_option("--metric", metric_name, "fitness or time")
      ->check(CLI::IsMember({"fitness", "time"}));
  add_output_opts(compare);

  CLI::App* report =
      app.add_subcommand("report", "success-rate and cost tables");
  report->fallthrough();
  add_input_opts(report);
  add_tolerance_opts(report);
  add_output_opts(report);

  CLI::App* convergence = app.add_subcommand(
      "convergence", "averaged best-so-far curve per problem and algorithm");
  convergence->fallthrough();
  add_input_opts(convergence);
  add_output_opts(convergence);

  try {
    std::reverse(args.begin(), args.end());  // CLI11 consumes back to front
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return {std::nullopt, 0, app.help()};
  } catch (const CLI::ParseError& e) {
    return {std::nullopt, e.get_exit_code() == 0 ? 1 : e.get_exit_code(),
            std::string(e.what())};
  }

  try {
    if (run->parsed()) {
      opt.command = Command::Run;
      if (full) {
        if (runs_opt->count() == 0) opt.runs = 30;
        if (iters_opt->count() == 0) opt.iters = 2000;
      }
    } else if (stats->parsed()) {
      opt.command = Command::Stats;
    } else if (compare->parsed()) {
      opt.command = Command::Compare;
    } else if (report->parsed()) {
      opt.command = Command::Report;
    } else {
      opt.command = Command::Convergence;
    }
    opt.algorithms = detail::parse_algorithm_list(algorithm_ids);
    opt.problems = detail::parse_problem_list(problem_ids);
    opt.baseline = algorithm_from_id(baseline_id);
    opt.metric = metric_name == "time" ? CompareMetric::WallTime
                                       : CompareMetric::BestFitness;
    opt.in = in_dir.empty() ? opt.out : std::filesystem::path(in_dir);
  } catch (const std::exception& e) {
    return {std::nullopt, 1, e.what()};
  }
  return {opt, 0, ""};
}

namespace detail {

inline std::size_t dim_from_variant_label(const std::string& label) {
  if (label.size() > 1 && label[0] == 'd')
    return static_cast<std::size_t>(std::stoul(label.substr(1)));
  if (label.size() > 1 && label[0] == 'R') return 2;
  throw std::invalid_argument("cannot infer dimension from variant label: " +
                              label);
}

}  // namespace detail

// Rebuilds a structural run matrix from runs.csv rows: enough for the
// stats/compare/report subcommands (no traces, placeholder spaces).
inline RunMatrix matrix_from_rows(const std::vector<RunCsvRow>& rows,
                                  SuccessTolerance tolerance = {}) {
  RunMatrix matrix;
  matrix.plan.tolerance = tolerance;
  matrix.plan.runs = 1;

  for (const RunCsvRow& row : rows) {
    const Problem problem = problem_from_id(row.problem);
    const Algorithm algorithm = algorithm_from_id(row.algorithm);
    const std::size_t dim = detail::dim_from_variant_label(row.variant);

    auto pit = std::find_if(matrix.plan.problems.begin(), matrix.plan.problems.end(),
                            [&](const ProblemVariants& pv) { return pv.problem == problem; });
    if (pit == matrix.plan.problems.end()) {
      matrix.plan.problems.push_back({problem, {}});
      pit = std::prev(matrix.plan.problems.end());
    }
    auto vit = std::find_if(pit->variants.begin(), pit->variants.end(),
                            [&](const PlanVariant& v) { return v.label == row.variant; });
    if (vit == pit->variants.end()) {
      pit->variants.push_back({row.variant, SearchSpace::cube(-1.0, 1.0, dim)});
      vit = std::prev(pit->variants.end());
    }
    const std::size_t variant_index =
        static_cast<std::size_t>(vit - pit->variants.begin());

    if (std::find(matrix.plan.algorithms.begin(), matrix.plan.algorithms.end(),
                  algorithm) == matrix.plan.algorithms.end())
      matrix.plan.algorithms.push_back(algorithm);
    matrix.plan.runs = std::max(matrix.plan.runs, row.run + 1);

    MatrixRecord mr;
    mr.key = {problem, algorithm, variant_index, row.variant, row.run};
    mr.record.algorithm = algorithm;
    mr.record.problem = problem;
    mr.record.dim = dim;
    mr.record.seed = row.seed;
    mr.record.best_fitness = row.best_fitness;
    mr.record.evaluations = row.evaluations;
    mr.record.wall_time_s = row.wall_time_s;
    mr.record.peak_memory_bytes = row.peak_memory_bytes;
    matrix.records.push_back(std::move(mr));
  }

  std::sort(matrix.plan.algorithms.begin(), matrix.plan.algorithms.end());
  std::sort(matrix.records.begin(), matrix.records.end(),
            [](const MatrixRecord& a, const MatrixRecord& b) {
              return std::make_tuple(static_cast<int>(a.key.problem),
                                     static_cast<int>(a.key.algorithm),
                                     a.key.variant_index, a.key.run_index) <
                     std::make_tuple(static_cast<int>(b.key.problem),
                                     static_cast<int>(b.key.algorithm),
                                     b.key.variant_index, b.key.run_index);
            });
  return matrix;
}

// Averages trace_*.csv files from a previous run, one output file per
// (problem, algorithm).
inline std::vector<std::filesystem::path> emit_convergence_from_dir(
    const std::filesystem::path& in, const std::filesystem::path& out) {
  struct Group {
    std::vector<double> sum;
    std::size_t count = 0;
  };
  std::map<std::pair<int, int>, Group> groups;

  std::vector<std::filesystem::path> trace_files;
  for (const auto& entry : std::filesystem::directory_iterator(in)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("trace_", 0) == 0 && entry.path().extension() == ".csv")
      trace_files.push_back(entry.path());
  }
  if (trace_files.empty())
    throw std::runtime_error("no trace_*.csv files found in " + in.string());
  std::sort(trace_files.begin(), trace_files.end());

  for (const std::filesystem::path& path : trace_files) {
    // trace_<problem>_<algorithm>_<variant>_<run>.csv
    const std::string stem = path.stem().string();
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t pos; (pos = stem.find('_', start)) != std::string::npos;
         start = pos + 1)
      parts.push_back(stem.substr(start, pos - start));
    parts.push_back(stem.substr(start));
    if (parts.size() != 5)
      throw std::runtime_error("unrecognized trace file name: " + path.string());
    const Problem problem = problem_from_id(parts[1]);
    const Algorithm algorithm = algorithm_from_id(parts[2]);

    std::ifstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + path.string());
    std::string line;
    std::getline(file, line);  // header
    std::vector<double> trace;
    while (std::getline(file, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      const auto comma = line.find(',');
      if (comma == std::string::npos)
        throw std::runtime_error("malformed trace row in " + path.string());
      trace.push_back(std::strtod(line.c_str() + comma + 1, nullptr));
    }

    Group& g = groups[{static_cast<int>(problem), static_cast<int>(algorithm)}];
    if (g.count == 0) g.sum.assign(trace.size(), 0.0);
    if (g.sum.size() != trace.size())
      throw std::runtime_error("trace length mismatch in " + path.string());
    for (std::size_t i = 0; i < trace.size(); ++i) g.sum[i] += trace[i];
    g.count += 1;
  }

  std::filesystem::create_directories(out);
  std::vector<std::filesystem::path> written;
  for (const auto& [key, group] : groups) {
    const std::filesystem::path path =
        out / ("convergence_" + problem_id(Problem(key.first)) + "_" +
               std::string(algorithm_id(Algorithm(key.second))) + ".csv");
    detail::CsvFile file(path);
    file.row({"iteration", "mean_best_so_far"});
    for (std::size_t i = 0; i < group.sum.size(); ++i)
      file.row({std::to_string(i + 1),
                format_double(group.sum[i] / static_cast<double>(group.count))});
    file.close();
    written.push_back(path);
  }
  return written;
}

inline int run_command(const CliOptions& opt) {
  switch (opt.command) {
    case Command::Run: {
      const std::string started_at = detail::timestamp_utc_now();
      PlanOverrides overrides;
      if (!opt.algorithms.empty()) overrides.algorithms = opt.algorithms;
      if (!opt.problems.empty()) overrides.problems = opt.problems;
      overrides.runs = opt.runs;
      overrides.iterations = opt.iters;
      overrides.population = opt.pop;
      overrides.master_seed = opt.seed;
      overrides.tol_abs = opt.tol_abs;
      overrides.tol_rel = opt.tol_rel;
      overrides.parallelism = opt.parallel;
      overrides.profiling = opt.profile_memory ? ProfilingMode::TimeAndMemory
                            : opt.profile_time ? ProfilingMode::Time
                                               : ProfilingMode::None;
      const EvaluationPlan plan =
          plan_evaluation(static_cast<EvaluationKind>(opt.eval), overrides);

      const std::size_t total = plan.total_records();
      const std::size_t step = std::max<std::size_t>(1, total / 20);
      RunMatrix matrix = execute(plan, [&](std::size_t done, std::size_t all) {
        if (done % step == 0 || done == all)
          std::fprintf(stderr, "swarm-arena: %zu/%zu trials\n", done, all);
      });

      std::vector<std::filesystem::path> outputs = emit_runs(matrix, opt.out);
      for (auto& p : emit_success_and_costs(matrix, opt.out))
        outputs.push_back(std::move(p));
      write_manifest(plan, "run", started_at, detail::timestamp_utc_now(),
                     outputs, opt.out);
      return 0;
    }
    case Command::Stats: {
      const RunMatrix matrix =
          matrix_from_rows(read_runs_csv(opt.in / "runs.csv"),
                           SuccessTolerance{opt.tol_abs, opt.tol_rel});
      emit_descriptive_stats(matrix, opt.out);
      return 0;
    }
    case Command::Compare: {
      const RunMatrix matrix =
          matrix_from_rows(read_runs_csv(opt.in / "runs.csv"),
                           SuccessTolerance{opt.tol_abs, opt.tol_rel});
      emit_comparison(matrix, opt.baseline, opt.alpha, opt.out, opt.metric);
      return 0;
    }
    case Command::Report: {
      const RunMatrix matrix =
          matrix_from_rows(read_runs_csv(opt.in / "runs.csv"),
                           SuccessTolerance{opt.tol_abs, opt.tol_rel});
      emit_success_and_costs(matrix, opt.out);
      return 0;
    }
    case Command::Convergence:
      emit_convergence_from_dir(opt.in, opt.out);
      return 0;
  }
  return 1;
}

}  // namespace swarm_arena

#endif  // SWARM_ARENA_CLI_HPP
