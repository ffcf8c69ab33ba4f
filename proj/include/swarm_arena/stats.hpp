// Descriptive statistics and the exact two-sided Wilcoxon signed-rank test.
//
// The test discards zero differences, assigns average ranks to tied
// |differences|, and computes the two-sided p-value exactly by dynamic
// programming over the realized rank multiset (kept exact for up to 30
// effective pairs: 2^30 sign assignments counted, never enumerated).

#ifndef SWARM_ARENA_STATS_HPP
#define SWARM_ARENA_STATS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace swarm_arena {

struct DescriptiveStats {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation (n-1); 0 for n == 1
  double best = 0.0;
  double worst = 0.0;
  double avg_time_s = 0.0;
  std::size_t n_success = 0;
  std::size_t n_fail = 0;
};

inline DescriptiveStats descriptive(std::span<const double> fitness_values,
                                    std::span<const double> times_s,
                                    std::span<const bool> success_flags) {
  if (fitness_values.empty()) throw std::invalid_argument("descriptive: empty input");
  if (times_s.size() != fitness_values.size() ||
      success_flags.size() != fitness_values.size()) {
    throw std::invalid_argument("descriptive: input lengths differ");
  }
  const std::size_t n = fitness_values.size();
  DescriptiveStats out;
  out.mean = std::accumulate(fitness_values.begin(), fitness_values.end(), 0.0) /
             static_cast<double>(n);
  if (n > 1) {
    double ss = 0.0;
    for (double v : fitness_values) ss += (v - out.mean) * (v - out.mean);
    out.std = std::sqrt(ss / static_cast<double>(n - 1));
  }
  out.best = *std::min_element(fitness_values.begin(), fitness_values.end());
  out.worst = *std::max_element(fitness_values.begin(), fitness_values.end());
  out.avg_time_s = std::accumulate(times_s.begin(), times_s.end(), 0.0) /
                   static_cast<double>(n);
  for (bool s : success_flags) (s ? out.n_success : out.n_fail)++;
  return out;
}

enum class Verdict { Plus, Equal, Minus };

inline char verdict_symbol(Verdict v) {
  switch (v) {
    case Verdict::Plus: return '+';
    case Verdict::Equal: return '=';
    case Verdict::Minus: return '-';
  }
  return '?';
}

struct WilcoxonResult {
  double t_plus = 0.0;
  double t_minus = 0.0;
  std::size_t n_effective = 0;
  double p_value = 1.0;
  double alpha = 0.05;
  Verdict verdict = Verdict::Equal;
};

inline constexpr std::size_t kMaxExactWilcoxonN = 30;

// Frequencies of the signed-rank statistic over all 2^n sign assignments of
// the tie-free ranks 1..n. Index s holds the number of subsets of {1..n}
// summing to s; the total mass is 2^n and the maximum sum n(n+1)/2.
inline std::vector<double> exact_signed_rank_distribution(std::size_t n) {
  if (n < 1 || n > kMaxExactWilcoxonN)
    throw std::out_of_range("exact_signed_rank_distribution: n must be in [1, 30]");
  const std::size_t max_sum = n * (n + 1) / 2;
  std::vector<double> freq(max_sum + 1, 0.0);
  freq[0] = 1.0;
  std::size_t reach = 0;
  for (std::size_t rank = 1; rank <= n; ++rank) {
    reach += rank;
    for (std::size_t s = reach + 1; s-- > rank;) freq[s] += freq[s - rank];
  }
  return freq;
}

namespace detail {

// DP over doubled ranks so average ranks (halves) stay integral.
inline std::vector<double> signed_rank_distribution_doubled(
    const std::vector<std::int64_t>& doubled_ranks) {
  std::int64_t max_sum = 0;
  for (std::int64_t r : doubled_ranks) max_sum += r;
  std::vector<double> freq(static_cast<std::size_t>(max_sum) + 1, 0.0);
  freq[0] = 1.0;
  std::int64_t reach = 0;
  for (std::int64_t r : doubled_ranks) {
    reach += r;
    for (std::int64_t s = reach; s >= r; --s)
      freq[static_cast<std::size_t>(s)] += freq[static_cast<std::size_t>(s - r)];
  }
  return freq;
}

// Average ranks of |values|; ties share the mean of the rank block.
inline std::vector<double> average_ranks(const std::vector<double>& abs_values) {
  const std::size_t n = abs_values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return abs_values[a] < abs_values[b];
  });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && abs_values[order[j + 1]] == abs_values[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;  // 1-based
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

}  // namespace detail

// Paired two-sided test of H0: median(a) = median(b). Verdict orientation is
// for minimization: Plus means the first sample is statistically smaller
// (better), Minus the opposite, Equal when H0 is not rejected at alpha.
inline WilcoxonResult wilcoxon_signed_rank(std::span<const double> a,
                                           std::span<const double> b,
                                           double alpha = 0.05) {
  if (a.size() != b.size())
    throw std::invalid_argument("wilcoxon_signed_rank: sample lengths differ");
  if (a.empty())
    throw std::invalid_argument("wilcoxon_signed_rank: empty samples");

  WilcoxonResult out;
  out.alpha = alpha;

  std::vector<double> diffs;
  diffs.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    if (d != 0.0) diffs.push_back(d);
  }
  out.n_effective = diffs.size();
  if (diffs.empty()) return out;  // all pairs tied: p = 1, Equal
  if (diffs.size() > kMaxExactWilcoxonN)
    throw std::invalid_argument(
        "wilcoxon_signed_rank: more than 30 nonzero differences (exact test only)");

  std::vector<double> abs_d(diffs.size());
  for (std::size_t i = 0; i < diffs.size(); ++i) abs_d[i] = std::abs(diffs[i]);
  const std::vector<double> ranks = detail::average_ranks(abs_d);

  for (std::size_t i = 0; i < diffs.size(); ++i)
    (diffs[i] > 0.0 ? out.t_plus : out.t_minus) += ranks[i];

  std::vector<std::int64_t> doubled(ranks.size());
  for (std::size_t i = 0; i < ranks.size(); ++i)
    doubled[i] = std::llround(2.0 * ranks[i]);
  const std::vector<double> freq = detail::signed_rank_distribution_doubled(doubled);
  const double total = std::ldexp(1.0, static_cast<int>(diffs.size()));  // 2^n

  const std::int64_t t_obs = std::llround(2.0 * out.t_plus);
  double below = 0.0, above = 0.0;
  for (std::size_t s = 0; s < freq.size(); ++s) {
    if (static_cast<std::int64_t>(s) <= t_obs) below += freq[s];
    if (static_cast<std::int64_t>(s) >= t_obs) above += freq[s];
  }
  out.p_value = std::min(1.0, 2.0 * std::min(below, above) / total);

  if (out.p_value < alpha)
    out.verdict = out.t_plus < out.t_minus ? Verdict::Plus : Verdict::Minus;
  return out;
}

struct Tally {
  std::size_t plus = 0;
  std::size_t equal = 0;
  std::size_t minus = 0;
};

inline Tally tally(std::span<const Verdict> verdicts) {
  Tally t;
  for (Verdict v : verdicts) {
    switch (v) {
      case Verdict::Plus: ++t.plus; break;
      case Verdict::Equal: ++t.equal; break;
      case Verdict::Minus: ++t.minus; break;
    }
  }
  return t;
}

}  // namespace swarm_arena

#endif  // SWARM_ARENA_STATS_HPP
