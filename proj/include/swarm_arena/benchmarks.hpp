// The 16-problem benchmark catalog: closed-form objectives, box bounds,
// global minima and literature success percentages.
//
// Closed forms follow the standard global-optimization references (Jamil &
// Yang's survey and the AMPGO collection). Each catalog entry keeps two
// minimum values: `global_minimum` is the rounded literature figure used for
// success checks, `reference_minimum` is the value refined to double
// precision, used as the hard lower bound no evaluation may undercut.

#ifndef SWARM_ARENA_BENCHMARKS_HPP
#define SWARM_ARENA_BENCHMARKS_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace swarm_arena {

enum class Problem : int {
  P1 = 0,   // Ackley
  P2,       // Alpine01
  P3,       // Bird
  P4,       // Leon
  P5,       // CrossInTray
  P6,       // Easom
  P7,       // Whitley
  P8,       // EggCrate
  P9,       // Griewank
  P10,      // HolderTable
  P11,      // Rastrigin
  P12,      // Rosenbrock
  P13,      // Salomon
  P14,      // Sphere
  P15,      // StyblinskiTang
  P16,      // Schwefel26
};

inline constexpr std::size_t kProblemCount = 16;

inline constexpr std::array<Problem, kProblemCount> kAllProblems = {
    Problem::P1,  Problem::P2,  Problem::P3,  Problem::P4,
    Problem::P5,  Problem::P6,  Problem::P7,  Problem::P8,
    Problem::P9,  Problem::P10, Problem::P11, Problem::P12,
    Problem::P13, Problem::P14, Problem::P15, Problem::P16};

inline constexpr const std::array<Problem, kProblemCount>& all_problems() noexcept {
  return kAllProblems;
}

struct Interval {
  double lower;
  double upper;

  bool operator==(const Interval&) const = default;
};

// Box-bounded search region, one interval per coordinate.
struct SearchSpace {
  std::vector<Interval> bounds;

  bool operator==(const SearchSpace&) const = default;

  std::size_t dim() const noexcept { return bounds.size(); }

  static SearchSpace cube(double lower, double upper, std::size_t dim) {
    if (!(lower < upper)) throw std::invalid_argument("SearchSpace: lower must be < upper");
    if (dim == 0) throw std::invalid_argument("SearchSpace: dim must be positive");
    return SearchSpace{std::vector<Interval>(dim, Interval{lower, upper})};
  }
};

struct ProblemSpec {
  Problem id;
  std::string_view name;
  double global_minimum;     // literature value as published
  double reference_minimum;  // double-precision refinement, lower-bound oracle
  bool minimum_is_global;    // reference bounds f on all of R^n, not just the
                             // default box (false for Bird, CrossInTray,
                             // HolderTable, Schwefel26, which dip lower on
                             // enlarged boxes)
  double default_lower;
  double default_upper;
  bool variable_dimension;   // true: any dim >= 1; false: fixed at native_dim
  std::size_t native_dim;
  double success_percent;    // literature success rate, (0, 100)

  // StyblinskiTang's minimum is quoted per dimension; every other entry is
  // dimension-independent.
  double global_minimum_at(std::size_t dim) const noexcept {
    return id == Problem::P15 ? global_minimum * static_cast<double>(dim)
                              : global_minimum;
  }
  double reference_minimum_at(std::size_t dim) const noexcept {
    return id == Problem::P15 ? reference_minimum * static_cast<double>(dim)
                              : reference_minimum;
  }
  bool valid_dim(std::size_t dim) const noexcept {
    return variable_dimension ? dim >= 1 : dim == native_dim;
  }

  // True when reference_minimum_at is a valid lower bound for evaluations
  // over `space`: either the bound holds everywhere, or the space stays
  // inside the default box the bound was established on.
  bool minimum_bounds(const SearchSpace& space) const noexcept {
    if (minimum_is_global) return true;
    for (const Interval& b : space.bounds)
      if (b.lower < default_lower || b.upper > default_upper) return false;
    return true;
  }
};

namespace detail {

inline constexpr double kPi = std::numbers::pi;

// Peak of x*sin(sqrt(x)) on [0, 500]; zero-shifts Schwefel 2.26 so the
// catalog minimum of 0 is attainable.
inline constexpr double kSchwefelPerDimPeak = 418.98288727243369;

// Refined minima for the entries Table values round away from.
inline constexpr double kBirdMin = -106.76453674926478;
inline constexpr double kCrossInTrayMin = -2.0626118708227397;
inline constexpr double kHolderTableMin = -19.208502567886757;
inline constexpr double kStyblinskiTangPerDimMin = -39.166165703771412;

inline const std::array<ProblemSpec, kProblemCount>& catalog_table() {
  static const std::array<ProblemSpec, kProblemCount> table = {{
      {Problem::P1, "Ackley", 0.0, 0.0, true, -32.0, 32.0, true, 2, 48.25},
      {Problem::P2, "Alpine01", 0.0, 0.0, true, 0.0, 10.0, false, 2, 65.17},
      {Problem::P3, "Bird", -106.76453, kBirdMin, false, -2.0 * kPi, 2.0 * kPi, false, 2, 59.00},
      {Problem::P4, "Leon", 0.0, 0.0, true, 0.0, 10.0, false, 2, 41.17},
      {Problem::P5, "CrossInTray", -2.062611, kCrossInTrayMin, false, -10.0, 10.0, false, 2, 74.08},
      {Problem::P6, "Easom", -1.0, -1.0, true, -100.0, 100.0, false, 2, 26.08},
      {Problem::P7, "Whitley", 0.0, 0.0, true, -10.24, 10.24, false, 2, 4.92},
      {Problem::P8, "EggCrate", 0.0, 0.0, true, -5.0, 5.0, false, 2, 64.92},
      {Problem::P9, "Griewank", 0.0, 0.0, true, -600.0, 600.0, true, 2, 6.08},
      {Problem::P10, "HolderTable", -19.2085, kHolderTableMin, false, -10.0, 10.0, false, 2, 80.08},
      {Problem::P11, "Rastrigin", 0.0, 0.0, true, -5.12, 5.12, true, 2, 39.50},
      {Problem::P12, "Rosenbrock", 0.0, 0.0, true, -5.0, 10.0, true, 2, 44.17},
      {Problem::P13, "Salomon", 0.0, 0.0, true, -100.0, 100.0, false, 2, 10.33},
      {Problem::P14, "Sphere", 0.0, 0.0, true, -1.0, 1.0, false, 2, 82.75},
      {Problem::P15, "StyblinskiTang", -39.1661, kStyblinskiTangPerDimMin, true, -5.0, 5.0, true, 2, 70.50},
      {Problem::P16, "Schwefel26", 0.0, 0.0, false, -500.0, 500.0, false, 2, 62.67},
  }};
  return table;
}

inline double ackley(std::span<const double> x) {
  const double n = static_cast<double>(x.size());
  double sum_sq = 0.0, sum_cos = 0.0;
  for (double v : x) {
    sum_sq += v * v;
    sum_cos += std::cos(2.0 * kPi * v);
  }
  return -20.0 * std::exp(-0.2 * std::sqrt(sum_sq / n)) -
         std::exp(sum_cos / n) + 20.0 + std::numbers::e;
}

inline double alpine01(std::span<const double> x) {
  double sum = 0.0;
  for (double v : x) sum += std::abs(v * std::sin(v) + 0.1 * v);
  return sum;
}

inline double bird(std::span<const double> x) {
  const double a = x[0], b = x[1];
  const double d1 = 1.0 - std::cos(b);
  const double d2 = 1.0 - std::sin(a);
  return std::sin(a) * std::exp(d1 * d1) + std::cos(b) * std::exp(d2 * d2) +
         (a - b) * (a - b);
}

inline double leon(std::span<const double> x) {
  const double a = x[0], b = x[1];
  const double t = b - a * a * a;
  return 100.0 * t * t + (1.0 - a) * (1.0 - a);
}

inline double cross_in_tray(std::span<const double> x) {
  const double a = x[0], b = x[1];
  const double r = std::sqrt(a * a + b * b);
  const double inner =
      std::abs(std::sin(a) * std::sin(b) * std::exp(std::abs(100.0 - r / kPi)));
  return -0.0001 * std::pow(inner + 1.0, 0.1);
}

inline double easom(std::span<const double> x) {
  const double a = x[0], b = x[1];
  return -std::cos(a) * std::cos(b) *
         std::exp(-((a - kPi) * (a - kPi) + (b - kPi) * (b - kPi)));
}

inline double whitley(std::span<const double> x) {
  double sum = 0.0;
  for (double xi : x) {
    for (double xj : x) {
      const double w = 100.0 * (xi * xi - xj) * (xi * xi - xj) +
                       (1.0 - xj) * (1.0 - xj);
      sum += w * w / 4000.0 - std::cos(w) + 1.0;
    }
  }
  return sum;
}

inline double egg_crate(std::span<const double> x) {
  const double a = x[0], b = x[1];
  const double sa = std::sin(a), sb = std::sin(b);
  return a * a + b * b + 25.0 * (sa * sa + sb * sb);
}

inline double griewank(std::span<const double> x) {
  double sum = 0.0, prod = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sum += x[i] * x[i] / 4000.0;
    prod *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
  }
  return sum - prod + 1.0;
}

inline double holder_table(std::span<const double> x) {
  const double a = x[0], b = x[1];
  const double r = std::sqrt(a * a + b * b);
  return -std::abs(std::sin(a) * std::cos(b) *
                   std::exp(std::abs(1.0 - r / kPi)));
}

inline double rastrigin(std::span<const double> x) {
  double sum = 10.0 * static_cast<double>(x.size());
  for (double v : x) sum += v * v - 10.0 * std::cos(2.0 * kPi * v);
  return sum;
}

inline double rosenbrock(std::span<const double> x) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double t = x[i + 1] - x[i] * x[i];
    sum += 100.0 * t * t + (1.0 - x[i]) * (1.0 - x[i]);
  }
  return sum;
}

inline double salomon(std::span<const double> x) {
  double sum_sq = 0.0;
  for (double v : x) sum_sq += v * v;
  const double r = std::sqrt(sum_sq);
  return 1.0 - std::cos(2.0 * kPi * r) + 0.1 * r;
}

inline double sphere(std::span<const double> x) {
  double sum = 0.0;
  for (double v : x) sum += v * v;
  return sum;
}

inline double styblinski_tang(std::span<const double> x) {
  double sum = 0.0;
  for (double v : x) {
    const double v2 = v * v;
    sum += v2 * v2 - 16.0 * v2 + 5.0 * v;
  }
  return 0.5 * sum;
}

inline double schwefel26(std::span<const double> x) {
  double sum = 0.0;
  for (double v : x) sum += v * std::sin(std::sqrt(std::abs(v)));
  return kSchwefelPerDimPeak * static_cast<double>(x.size()) - sum;
}

}  // namespace detail

inline const std::array<ProblemSpec, kProblemCount>& catalog() {
  return detail::catalog_table();
}

inline const ProblemSpec& problem_spec(Problem p) {
  return catalog()[static_cast<std::size_t>(p)];
}

inline std::string_view problem_name(Problem p) { return problem_spec(p).name; }

// Problem ids as used in CSV output and on the command line: "P1".."P16".
inline std::string problem_id(Problem p) {
  return "P" + std::to_string(static_cast<int>(p) + 1);
}

inline Problem problem_from_id(std::string_view id) {
  for (Problem p : all_problems())
    if (problem_id(p) == id) return p;
  throw std::invalid_argument("unknown problem id: " + std::string(id));
}

inline void check_dimension(Problem p, std::size_t dim) {
  const ProblemSpec& spec = problem_spec(p);
  if (!spec.valid_dim(dim)) {
    throw std::invalid_argument(
        "problem " + problem_id(p) + " (" + std::string(spec.name) +
        ") does not accept dimension " + std::to_string(dim));
  }
}

// Objective value of problem `p` at `x`. Pure; throws on dimension mismatch.
inline double evaluate(Problem p, std::span<const double> x) {
  check_dimension(p, x.size());
  switch (p) {
    case Problem::P1: return detail::ackley(x);
    case Problem::P2: return detail::alpine01(x);
    case Problem::P3: return detail::bird(x);
    case Problem::P4: return detail::leon(x);
    case Problem::P5: return detail::cross_in_tray(x);
    case Problem::P6: return detail::easom(x);
    case Problem::P7: return detail::whitley(x);
    case Problem::P8: return detail::egg_crate(x);
    case Problem::P9: return detail::griewank(x);
    case Problem::P10: return detail::holder_table(x);
    case Problem::P11: return detail::rastrigin(x);
    case Problem::P12: return detail::rosenbrock(x);
    case Problem::P13: return detail::salomon(x);
    case Problem::P14: return detail::sphere(x);
    case Problem::P15: return detail::styblinski_tang(x);
    case Problem::P16: return detail::schwefel26(x);
  }
  throw std::invalid_argument("unknown problem");
}

// Table bounds replicated across `dim` coordinates.
inline SearchSpace default_space(Problem p, std::size_t dim) {
  check_dimension(p, dim);
  const ProblemSpec& spec = problem_spec(p);
  return SearchSpace::cube(spec.default_lower, spec.default_upper, dim);
}

}  // namespace swarm_arena

#endif  // SWARM_ARENA_BENCHMARKS_HPP
