// Shared optimizer machinery: algorithm ids, tuning parameters, the
// population container and the boundary repair rule.
//
// All five algorithms use the same constraint handling (coordinate clamping)
// and the same leader rule (best fitness seen so far, lowest index winning
// ties) so that comparisons between them are not skewed by plumbing.

#ifndef SWARM_ARENA_POPULATION_HPP
#define SWARM_ARENA_POPULATION_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "swarm_arena/benchmarks.hpp"

namespace swarm_arena {

enum class Algorithm : int {
  Woa = 0,
  Bsa,
  Fdo,
  Pso,
  Ff,
};

inline constexpr std::size_t kAlgorithmCount = 5;

inline constexpr std::array<Algorithm, kAlgorithmCount> kAllAlgorithms = {
    Algorithm::Woa, Algorithm::Bsa, Algorithm::Fdo, Algorithm::Pso,
    Algorithm::Ff};

inline constexpr const std::array<Algorithm, kAlgorithmCount>&
all_algorithms() noexcept {
  return kAllAlgorithms;
}

inline std::string_view algorithm_id(Algorithm a) {
  switch (a) {
    case Algorithm::Woa: return "woa";
    case Algorithm::Bsa: return "bsa";
    case Algorithm::Fdo: return "fdo";
    case Algorithm::Pso: return "pso";
    case Algorithm::Ff: return "ff";
  }
  return "?";
}

inline Algorithm algorithm_from_id(std::string_view id) {
  for (Algorithm a : all_algorithms())
    if (algorithm_id(a) == id) return a;
  throw std::invalid_argument("unknown algorithm id: " + std::string(id));
}

struct WoaParams {
  double spiral_b = 1.0;     // logarithmic spiral shape constant
  double branch_prob = 0.5;  // probability of encircle/explore vs spiral
};

struct BsaParams {
  double mixrate = 1.0;         // crossover dimension rate
  double mutation_scale = 3.0;  // F = mutation_scale * N(0,1) per generation
};

struct PsoParams {
  double inertia = 0.729;
  double cognitive = 1.49445;
  double social = 1.49445;
  double velocity_clamp = 1.0;  // max |v| as a fraction of the coordinate range
};

struct FfParams {
  double alpha = 0.25;       // randomization weight, fraction of range
  double beta0 = 1.0;        // attractiveness at distance zero
  double gamma = 1.0;        // light absorption coefficient
  double alpha_decay = 0.97; // per-iteration multiplicative decay of alpha
};

struct FdoParams {
  double weight_factor = 0.0;  // wf subtracted from the fitness-weight ratio
};

struct OptimizerConfig {
  std::size_t population_size = 30;
  std::size_t iterations = 2000;
  WoaParams woa;
  BsaParams bsa;
  PsoParams pso;
  FfParams ff;
  FdoParams fdo;

  void validate() const {
    if (population_size < 2)
      throw std::invalid_argument("config: population_size must be >= 2");
    if (iterations < 1)
      throw std::invalid_argument("config: iterations must be >= 1");
    auto probability = [](double v, const char* what) {
      if (!(v >= 0.0 && v <= 1.0))
        throw std::invalid_argument(std::string("config: ") + what +
                                    " must be in [0, 1]");
    };
    probability(woa.branch_prob, "woa.branch_prob");
    probability(bsa.mixrate, "bsa.mixrate");
    probability(ff.alpha_decay, "ff.alpha_decay");
    probability(fdo.weight_factor, "fdo.weight_factor");
    if (!(pso.velocity_clamp > 0.0 && pso.velocity_clamp <= 1.0))
      throw std::invalid_argument("config: pso.velocity_clamp must be in (0, 1]");
    if (ff.alpha < 0.0 || ff.beta0 < 0.0 || ff.gamma < 0.0)
      throw std::invalid_argument("config: ff parameters must be nonnegative");
  }
};

// Current candidate set plus the best solution seen so far. The leader never
// worsens; leader_index records which slot last improved it.
struct Population {
  std::vector<std::vector<double>> positions;  // pop_size x dim
  std::vector<double> fitness;
  std::size_t leader_index = 0;
  std::vector<double> leader_position;
  double leader_fitness = std::numeric_limits<double>::infinity();

  std::size_t size() const noexcept { return positions.size(); }
};

inline void repair_in_place(std::span<double> x, const SearchSpace& space) {
  if (x.size() != space.dim())
    throw std::invalid_argument("repair: dimension mismatch");
  for (std::size_t d = 0; d < x.size(); ++d) {
    const Interval& b = space.bounds[d];
    if (x[d] < b.lower) x[d] = b.lower;
    else if (x[d] > b.upper) x[d] = b.upper;
  }
}

// Coordinate clamp into the search box; in-bound inputs pass through.
inline std::vector<double> repair(std::vector<double> x, const SearchSpace& space) {
  repair_in_place(x, space);
  return x;
}

// Re-score every member and fold improvements into the leader. Strict
// comparison keeps the earliest index among equal fitness values.
template <class Objective>
void refresh_fitness_and_leader(Population& pop, Objective&& objective) {
  for (std::size_t i = 0; i < pop.size(); ++i) {
    pop.fitness[i] = objective(std::span<const double>(pop.positions[i]));
    if (pop.fitness[i] < pop.leader_fitness) {
      pop.leader_fitness = pop.fitness[i];
      pop.leader_position = pop.positions[i];
      pop.leader_index = i;
    }
  }
}

template <class Objective, class Rng>
Population init_population(Objective&& objective, const SearchSpace& space,
                           std::size_t population_size, Rng& rng) {
  Population pop;
  pop.positions.resize(population_size, std::vector<double>(space.dim()));
  pop.fitness.assign(population_size, 0.0);
  for (auto& x : pop.positions)
    for (std::size_t d = 0; d < space.dim(); ++d)
      x[d] = rng.uniform(space.bounds[d].lower, space.bounds[d].upper);
  refresh_fitness_and_leader(pop, objective);
  return pop;
}

}  // namespace swarm_arena

#endif  // SWARM_ARENA_POPULATION_HPP
