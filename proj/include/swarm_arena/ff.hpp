// Firefly algorithm: every firefly is pulled toward each brighter one with
// attractiveness beta0*exp(-gamma*r^2) plus an alpha-scaled perturbation;
// a firefly with no brighter peer moves by the random term alone.
//
// Brightness is the fitness snapshot taken at the start of the sweep while
// positions update in place, fireflies processed in index order. Each move
// draws one uniform per dimension; alpha decays after the sweep.

#ifndef SWARM_ARENA_FF_HPP
#define SWARM_ARENA_FF_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "swarm_arena/population.hpp"

namespace swarm_arena {

struct FfState {
  double alpha;

  static FfState from(const FfParams& params) { return FfState{params.alpha}; }
};

template <class Objective, class Rng>
void ff_update(Population& pop, FfState& state, const SearchSpace& space,
               Objective&& objective, const FfParams& params, Rng& rng) {
  const std::size_t dim = space.dim();
  const std::vector<double> brightness = pop.fitness;

  for (std::size_t i = 0; i < pop.size(); ++i) {
    auto& x = pop.positions[i];
    bool saw_brighter = false;
    for (std::size_t j = 0; j < pop.size(); ++j) {
      if (!(brightness[j] < brightness[i])) continue;
      saw_brighter = true;
      const auto& y = pop.positions[j];
      double dist_sq = 0.0;
      for (std::size_t d = 0; d < dim; ++d)
        dist_sq += (x[d] - y[d]) * (x[d] - y[d]);
      const double beta = params.beta0 * std::exp(-params.gamma * dist_sq);
      for (std::size_t d = 0; d < dim; ++d) {
        const double range = space.bounds[d].upper - space.bounds[d].lower;
        x[d] += beta * (y[d] - x[d]) +
                state.alpha * (rng.uniform01() - 0.5) * range;
      }
    }
    if (!saw_brighter) {
      for (std::size_t d = 0; d < dim; ++d) {
        const double range = space.bounds[d].upper - space.bounds[d].lower;
        x[d] += state.alpha * (rng.uniform01() - 0.5) * range;
      }
    }
    repair_in_place(x, space);
  }
  refresh_fitness_and_leader(pop, objective);
  state.alpha *= params.alpha_decay;
}

}  // namespace swarm_arena

#endif  // SWARM_ARENA_FF_HPP
