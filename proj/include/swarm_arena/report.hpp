// Result serialization: runs/trace/success/cost/stats/comparison CSV files
// and the JSON run manifest.
//
// All data files are byte-reproducible for a given plan and seed: doubles are
// printed with %.17g (lossless round-trip), rows follow the matrix order, and
// timestamps appear only in the manifest. The manifest is written last; its
// presence marks a complete run.

#ifndef SWARM_ARENA_REPORT_HPP
#define SWARM_ARENA_REPORT_HPP

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "swarm_arena/harness.hpp"
#include "swarm_arena/stats.hpp"
#include "swarm_arena/version.hpp"

namespace swarm_arena {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// RFC 4180: quote fields containing commas, quotes or line breaks.
inline std::string csv_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos)
    return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

namespace detail {

class CsvFile {
 public:
  explicit CsvFile(const std::filesystem::path& path)
      : path_(path), out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
  }

  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out_ << ',';
      out_ << csv_field(fields[i]);
    }
    out_ << '\n';
  }

  void close() {
    out_.close();
    if (!out_) throw std::runtime_error("failed writing " + path_.string());
  }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

// Splits one CSV line, honoring RFC 4180 quoting.
inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

}  // namespace detail

inline std::string trace_file_name(const RunCellKey& key) {
  return "trace_" + problem_id(key.problem) + "_" +
         std::string(algorithm_id(key.algorithm)) + "_" + key.variant_label +
         "_" + std::to_string(key.run_index) + ".csv";
}

// runs.csv plus one trace file per record. Returns the written paths,
// runs.csv first.
inline std::vector<std::filesystem::path> emit_runs(
    const RunMatrix& matrix, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;

  const std::filesystem::path runs_path = dir / "runs.csv";
  detail::CsvFile runs(runs_path);
  runs.row({"problem", "algorithm", "variant", "run", "seed", "best_fitness",
            "evaluations", "wall_time_s", "peak_memory_bytes", "success"});
  for (const MatrixRecord& mr : matrix.records) {
    const bool ok = success(mr.record, problem_spec(mr.key.problem),
                            matrix.plan.tolerance);
    runs.row({problem_id(mr.key.problem),
              std::string(algorithm_id(mr.key.algorithm)), mr.key.variant_label,
              std::to_string(mr.key.run_index), std::to_string(mr.record.seed),
              format_double(mr.record.best_fitness),
              std::to_string(mr.record.evaluations),
              format_double(mr.record.wall_time_s),
              std::to_string(mr.record.peak_memory_bytes), ok ? "1" : "0"});
  }
  runs.close();
  written.push_back(runs_path);

  for (const MatrixRecord& mr : matrix.records) {
    const std::filesystem::path trace_path = dir / trace_file_name(mr.key);
    detail::CsvFile trace(trace_path);
    trace.row({"iteration", "best_so_far"});
    for (std::size_t i = 0; i < mr.record.trace.size(); ++i)
      trace.row({std::to_string(i + 1), format_double(mr.record.trace[i])});
    trace.close();
    written.push_back(trace_path);
  }
  return written;
}

struct RunCsvRow {
  std::string problem;
  std::string algorithm;
  std::string variant;
  std::size_t run = 0;
  std::uint64_t seed = 0;
  double best_fitness = 0.0;
  std::uint64_t evaluations = 0;
  double wall_time_s = 0.0;
  std::uint64_t peak_memory_bytes = 0;
  bool success = false;
};

inline std::vector<RunCsvRow> read_runs_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string() + " for reading");
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("empty runs file: " + path.string());
  std::vector<RunCsvRow> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> f = detail::split_csv_line(line);
    if (f.size() != 10)
      throw std::runtime_error("malformed row in " + path.string() + ": " + line);
    RunCsvRow row;
    row.problem = f[0];
    row.algorithm = f[1];
    row.variant = f[2];
    row.run = std::stoull(f[3]);
    row.seed = std::stoull(f[4]);
    row.best_fitness = std::strtod(f[5].c_str(), nullptr);
    row.evaluations = std::stoull(f[6]);
    row.wall_time_s = std::strtod(f[7].c_str(), nullptr);
    row.peak_memory_bytes = std::stoull(f[8]);
    row.success = f[9] == "1";
    rows.push_back(std::move(row));
  }
  return rows;
}

enum class CompareMetric { BestFitness, WallTime };

struct WilcoxonRow {
  std::string variant;
  Problem problem{};
  Algorithm rival{};
  WilcoxonResult result;
};

struct ComparisonSummaryRow {
  Algorithm rival{};
  std::string variant;
  Tally tally;
};

struct ComparisonTables {
  std::vector<WilcoxonRow> tests;
  std::vector<ComparisonSummaryRow> summary;
};

// Pairwise Wilcoxon of the baseline against every other algorithm, one test
// per (variant, problem), paired by run index.
inline ComparisonTables compare_matrix(const RunMatrix& matrix,
                                       Algorithm baseline, double alpha,
                                       CompareMetric metric = CompareMetric::BestFitness) {
  auto value_of = [metric](const RunRecord& r) {
    return metric == CompareMetric::BestFitness ? r.best_fitness : r.wall_time_s;
  };

  // (problem, variant_index, algorithm) -> values ordered by run index.
  std::map<std::tuple<int, std::size_t, int>, std::vector<double>> samples;
  for (const MatrixRecord& mr : matrix.records)
    samples[{static_cast<int>(mr.key.problem), mr.key.variant_index,
             static_cast<int>(mr.key.algorithm)}]
        .push_back(value_of(mr.record));

  bool baseline_present = false;
  std::vector<Algorithm> rivals;
  for (Algorithm a : matrix.plan.algorithms) {
    if (a == baseline) baseline_present = true;
    else rivals.push_back(a);
  }
  if (!baseline_present)
    throw std::invalid_argument("baseline algorithm " +
                                std::string(algorithm_id(baseline)) +
                                " is not part of the run matrix");

  ComparisonTables tables;
  // Label-grouped tallies, labels in plan appearance order.
  std::vector<std::string> label_order;
  std::map<std::string, std::map<int, Tally>> tallies;  // label -> rival -> tally

  for (const ProblemVariants& pv : matrix.plan.problems) {
    for (std::size_t v = 0; v < pv.variants.size(); ++v) {
      const std::string& label = pv.variants[v].label;
      if (std::find(label_order.begin(), label_order.end(), label) ==
          label_order.end())
        label_order.push_back(label);
      const auto base_it = samples.find(
          {static_cast<int>(pv.problem), v, static_cast<int>(baseline)});
      if (base_it == samples.end())
        throw std::invalid_argument("baseline has no runs for " +
                                    problem_id(pv.problem) + " " + label);
      for (Algorithm rival : rivals) {
        const auto rival_it = samples.find(
            {static_cast<int>(pv.problem), v, static_cast<int>(rival)});
        if (rival_it == samples.end()) continue;
        WilcoxonRow row;
        row.variant = label;
        row.problem = pv.problem;
        row.rival = rival;
        row.result = wilcoxon_signed_rank(base_it->second, rival_it->second, alpha);
        auto& tally_cell = tallies[label][static_cast<int>(rival)];
        switch (row.result.verdict) {
          case Verdict::Plus: ++tally_cell.plus; break;
          case Verdict::Equal: ++tally_cell.equal; break;
          case Verdict::Minus: ++tally_cell.minus; break;
        }
        tables.tests.push_back(std::move(row));
      }
    }
  }

  for (Algorithm rival : rivals)
    for (const std::string& label : label_order) {
      auto lit = tallies.find(label);
      if (lit == tallies.end()) continue;
      auto rit = lit->second.find(static_cast<int>(rival));
      if (rit == lit->second.end()) continue;
      tables.summary.push_back({rival, label, rit->second});
    }
  return tables;
}

// wilcoxon.csv and summary.csv, mirroring the per-space comparison tables
// and their +/=/- footer rows.
inline std::vector<std::filesystem::path> emit_comparison(
    const RunMatrix& matrix, Algorithm baseline, double alpha,
    const std::filesystem::path& dir,
    CompareMetric metric = CompareMetric::BestFitness) {
  const ComparisonTables tables = compare_matrix(matrix, baseline, alpha, metric);
  std::filesystem::create_directories(dir);

  const std::filesystem::path wilcoxon_path = dir / "wilcoxon.csv";
  detail::CsvFile wilcoxon(wilcoxon_path);
  wilcoxon.row({"variant", "problem", "rival", "p_value", "t_plus", "t_minus",
                "verdict"});
  for (const WilcoxonRow& row : tables.tests)
    wilcoxon.row({row.variant, problem_id(row.problem),
                  std::string(algorithm_id(row.rival)),
                  format_double(row.result.p_value),
                  format_double(row.result.t_plus),
                  format_double(row.result.t_minus),
                  std::string(1, verdict_symbol(row.result.verdict))});
  wilcoxon.close();

  const std::filesystem::path summary_path = dir / "summary.csv";
  detail::CsvFile summary(summary_path);
  summary.row({"rival", "variant", "plus", "equal", "minus"});
  for (const ComparisonSummaryRow& row : tables.summary)
    summary.row({std::string(algorithm_id(row.rival)), row.variant,
                 std::to_string(row.tally.plus), std::to_string(row.tally.equal),
                 std::to_string(row.tally.minus)});
  summary.close();
  return {wilcoxon_path, summary_path};
}

// success.csv and costs.csv.
inline std::vector<std::filesystem::path> emit_success_and_costs(
    const RunMatrix& matrix, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);

  const SuccessReport report = success_rates(matrix, matrix.plan.tolerance);
  const std::filesystem::path success_path = dir / "success.csv";
  detail::CsvFile success_file(success_path);
  success_file.row({"problem", "algorithm", "variant", "success_fraction"});
  for (const SuccessCell& cell : report.cells)
    success_file.row({problem_id(cell.problem),
                      std::string(algorithm_id(cell.algorithm)),
                      cell.variant_label, format_double(cell.fraction())});
  success_file.close();

  const CostReport costs = cost_report(matrix);
  const std::filesystem::path costs_path = dir / "costs.csv";
  detail::CsvFile costs_file(costs_path);
  costs_file.row({"problem", "algorithm", "mean_wall_time_s",
                  "mean_peak_memory_bytes", "time_winner", "memory_winner"});
  for (const CostReportRow& time_row : costs.rows) {
    if (time_row.metric != CostMetric::RunningTime) continue;
    const CostReportRow& memory_row =
        costs.row(time_row.problem, CostMetric::MemoryUsage);
    for (std::size_t i = 0; i < time_row.means.size(); ++i) {
      costs_file.row({problem_id(time_row.problem),
                      std::string(algorithm_id(time_row.means[i].first)),
                      format_double(time_row.means[i].second),
                      format_double(memory_row.means[i].second),
                      std::string(algorithm_id(time_row.winner)),
                      std::string(algorithm_id(memory_row.winner))});
    }
  }
  costs_file.close();
  return {success_path, costs_path};
}

// stats.csv: the seven descriptive measures per (problem, algorithm, variant).
inline std::vector<std::filesystem::path> emit_descriptive_stats(
    const RunMatrix& matrix, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  struct Group {
    std::vector<double> fitness;
    std::vector<double> times;
    std::vector<bool> flags;
  };
  std::vector<std::tuple<int, int, std::size_t>> order;
  std::map<std::tuple<int, int, std::size_t>, Group> groups;
  std::map<std::tuple<int, int, std::size_t>, std::string> labels;
  for (const MatrixRecord& mr : matrix.records) {
    const auto key =
        std::make_tuple(static_cast<int>(mr.key.problem),
                        static_cast<int>(mr.key.algorithm), mr.key.variant_index);
    if (!groups.count(key)) order.push_back(key);
    Group& g = groups[key];
    labels[key] = mr.key.variant_label;
    g.fitness.push_back(mr.record.best_fitness);
    g.times.push_back(mr.record.wall_time_s);
    g.flags.push_back(
        success(mr.record, problem_spec(mr.key.problem), matrix.plan.tolerance));
  }

  const std::filesystem::path stats_path = dir / "stats.csv";
  detail::CsvFile stats_file(stats_path);
  stats_file.row({"problem", "algorithm", "variant", "mean", "std", "best",
                  "worst", "avg_time_s", "n_success", "n_fail"});
  for (const auto& key : order) {
    const Group& g = groups.at(key);
    // std::vector<bool> is not contiguous; flatten for the span interface.
    std::unique_ptr<bool[]> flags(new bool[g.flags.size()]);
    for (std::size_t i = 0; i < g.flags.size(); ++i) flags[i] = g.flags[i];
    const DescriptiveStats d =
        descriptive(g.fitness, g.times,
                    std::span<const bool>(flags.get(), g.flags.size()));
    stats_file.row({problem_id(Problem(std::get<0>(key))),
                    std::string(algorithm_id(Algorithm(std::get<1>(key)))),
                    labels.at(key), format_double(d.mean), format_double(d.std),
                    format_double(d.best), format_double(d.worst),
                    format_double(d.avg_time_s), std::to_string(d.n_success),
                    std::to_string(d.n_fail)});
  }
  stats_file.close();
  return {stats_path};
}

// One mean best-so-far curve per (problem, algorithm), pooled over variants
// and runs.
inline std::vector<std::filesystem::path> emit_convergence(
    const RunMatrix& matrix, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::pair<int, int>> order;
  std::map<std::pair<int, int>, std::pair<std::vector<double>, std::size_t>> sums;
  for (const MatrixRecord& mr : matrix.records) {
    const std::pair<int, int> key{static_cast<int>(mr.key.problem),
                                  static_cast<int>(mr.key.algorithm)};
    auto it = sums.find(key);
    if (it == sums.end()) {
      order.push_back(key);
      it = sums.emplace(key, std::make_pair(std::vector<double>(
                                                mr.record.trace.size(), 0.0),
                                            std::size_t{0}))
               .first;
    }
    auto& [sum, count] = it->second;
    if (sum.size() != mr.record.trace.size())
      throw std::invalid_argument("convergence: trace lengths differ within a group");
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += mr.record.trace[i];
    ++count;
  }

  std::vector<std::filesystem::path> written;
  for (const auto& key : order) {
    const auto& [sum, count] = sums.at(key);
    const std::filesystem::path path =
        dir / ("convergence_" + problem_id(Problem(key.first)) + "_" +
               std::string(algorithm_id(Algorithm(key.second))) + ".csv");
    detail::CsvFile out(path);
    out.row({"iteration", "mean_best_so_far"});
    for (std::size_t i = 0; i < sum.size(); ++i)
      out.row({std::to_string(i + 1),
               format_double(sum[i] / static_cast<double>(count))});
    out.close();
    written.push_back(path);
  }
  return written;
}

inline nlohmann::json plan_to_json(const EvaluationPlan& plan) {
  nlohmann::json variants = nlohmann::json::object();
  nlohmann::json problems = nlohmann::json::array();
  for (const ProblemVariants& pv : plan.problems) {
    problems.push_back(problem_id(pv.problem));
    nlohmann::json labels = nlohmann::json::array();
    for (const PlanVariant& v : pv.variants) labels.push_back(v.label);
    variants[problem_id(pv.problem)] = labels;
  }
  nlohmann::json algorithms = nlohmann::json::array();
  for (Algorithm a : plan.algorithms) algorithms.push_back(std::string(algorithm_id(a)));

  return nlohmann::json{
      {"evaluation", static_cast<int>(plan.kind)},
      {"algorithms", algorithms},
      {"problems", problems},
      {"variants", variants},
      {"runs", plan.runs},
      {"iterations", plan.config.iterations},
      {"population", plan.config.population_size},
      {"tolerance", {{"abs", plan.tolerance.abs}, {"rel", plan.tolerance.rel}}},
      {"master_seed", plan.master_seed},
      {"profiling", plan.profiling == ProfilingMode::None       ? "none"
                    : plan.profiling == ProfilingMode::Time     ? "time"
                                                                : "time+memory"},
      {"parallelism", plan.parallelism},
  };
}

// Written last: a manifest on disk means every listed output is complete.
inline std::filesystem::path write_manifest(
    const EvaluationPlan& plan, const std::string& command,
    const std::string& started_at, const std::string& finished_at,
    const std::vector<std::filesystem::path>& outputs,
    const std::filesystem::path& dir) {
  nlohmann::json manifest{
      {"tool", "swarm-arena"},
      {"version", kVersion},
      {"command", command},
      {"master_seed", plan.master_seed},
      {"started_at", started_at},
      {"finished_at", finished_at},
      {"plan", plan_to_json(plan)},
  };
  nlohmann::json files = nlohmann::json::array();
  for (const std::filesystem::path& p : outputs)
    files.push_back(p.filename().string());
  manifest["outputs"] = files;

  const std::filesystem::path path = dir / "manifest.json";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << manifest.dump(2) << '\n';
  out.close();
  if (!out) throw std::runtime_error("failed writing " + path.string());
  return path;
}

}  // namespace swarm_arena

#endif  // SWARM_ARENA_REPORT_HPP
