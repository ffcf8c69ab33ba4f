// Backtracking search: historical-population mutation with two crossover
// strategies and greedy survivor selection.
//
// Generator consumption per generation: two uniforms for the Selection-I
// swap test, a Fisher-Yates shuffle of the historical rows (one index draw
// per row from the back), one standard normal for the mutation scale F, two
// uniforms for the strategy test, then the per-row crossover draws.

#ifndef SWARM_ARENA_BSA_HPP
#define SWARM_ARENA_BSA_HPP

#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "swarm_arena/population.hpp"

namespace swarm_arena {

template <class Objective, class Rng>
void bsa_update(Population& pop, std::vector<std::vector<double>>& historical,
                const SearchSpace& space, Objective&& objective,
                const BsaParams& params, Rng& rng) {
  const std::size_t n = pop.size();
  const std::size_t dim = space.dim();

  // Selection-I: occasionally adopt the current population as memory, then
  // permute the memory rows.
  if (rng.uniform01() < rng.uniform01()) historical = pop.positions;
  for (std::size_t i = n - 1; i > 0; --i)
    std::swap(historical[i], historical[rng.below(i + 1)]);

  const double scale = params.mutation_scale * rng.normal01();

  // Crossover map: strategy one touches a mixrate-controlled random subset
  // of dimensions per row, strategy two exactly one dimension per row.
  std::vector<std::vector<char>> map(n, std::vector<char>(dim, 0));
  if (rng.uniform01() < rng.uniform01()) {
    std::vector<std::size_t> dims(dim);
    for (std::size_t i = 0; i < n; ++i) {
      const auto count = static_cast<std::size_t>(
          std::ceil(params.mixrate * rng.uniform01() * static_cast<double>(dim)));
      std::iota(dims.begin(), dims.end(), std::size_t{0});
      for (std::size_t k = 0; k < count; ++k) {
        std::swap(dims[k], dims[k + rng.below(dim - k)]);
        map[i][dims[k]] = 1;
      }
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) map[i][rng.below(dim)] = 1;
  }

  // Mutation + crossover produce the trial; Selection-II keeps the better of
  // trial and current, so no individual's fitness ever worsens.
  std::vector<double> trial(dim);
  for (std::size_t i = 0; i < n; ++i) {
    trial = pop.positions[i];
    for (std::size_t d = 0; d < dim; ++d)
      if (map[i][d])
        trial[d] += scale * (historical[i][d] - pop.positions[i][d]);
    repair_in_place(trial, space);
    const double trial_fitness = objective(std::span<const double>(trial));
    if (trial_fitness < pop.fitness[i]) {
      pop.positions[i] = trial;
      pop.fitness[i] = trial_fitness;
      if (trial_fitness < pop.leader_fitness) {
        pop.leader_fitness = trial_fitness;
        pop.leader_position = pop.positions[i];
        pop.leader_index = i;
      }
    }
  }
}

}  // namespace swarm_arena

#endif  // SWARM_ARENA_BSA_HPP
