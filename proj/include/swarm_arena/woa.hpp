// Whale optimization: shrinking encirclement of the leader, random-agent
// exploration while |A| >= 1, and a logarithmic spiral ("bubble net") move.
//
// Per whale the generator is consumed in the order r1, r2, p, then exactly
// one of: a random agent index (exploration) or the spiral exponent l drawn
// uniformly from [-1, 1]. The encirclement branch draws nothing further.

#ifndef SWARM_ARENA_WOA_HPP
#define SWARM_ARENA_WOA_HPP

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>

#include "swarm_arena/population.hpp"

namespace swarm_arena {

template <class Objective, class Rng>
void woa_update(Population& pop, const SearchSpace& space, Objective&& objective,
                std::size_t iteration, std::size_t total_iterations,
                const WoaParams& params, Rng& rng) {
  // Control scalar a falls linearly from 2 to 0 over the run.
  const double a = 2.0 - 2.0 * static_cast<double>(iteration) /
                             static_cast<double>(total_iterations);
  const std::size_t dim = space.dim();

  for (std::size_t i = 0; i < pop.size(); ++i) {
    auto& x = pop.positions[i];
    const double r1 = rng.uniform01();
    const double r2 = rng.uniform01();
    const double p = rng.uniform01();
    const double coeff_a = 2.0 * a * r1 - a;
    const double coeff_c = 2.0 * r2;

    if (p < params.branch_prob) {
      if (std::abs(coeff_a) >= 1.0) {
        // Exploration: steer relative to a randomly chosen agent.
        const std::size_t j = rng.below(pop.size());
        for (std::size_t d = 0; d < dim; ++d) {
          const double target = pop.positions[j][d];
          const double dist = std::abs(coeff_c * target - x[d]);
          x[d] = target - coeff_a * dist;
        }
      } else {
        // Exploitation: tighten around the leader.
        for (std::size_t d = 0; d < dim; ++d) {
          const double dist = std::abs(coeff_c * pop.leader_position[d] - x[d]);
          x[d] = pop.leader_position[d] - coeff_a * dist;
        }
      }
    } else {
      // Spiral move around the leader.
      const double l = rng.uniform(-1.0, 1.0);
      const double swirl =
          std::exp(params.spiral_b * l) * std::cos(2.0 * std::numbers::pi * l);
      for (std::size_t d = 0; d < dim; ++d) {
        const double dist = std::abs(pop.leader_position[d] - x[d]);
        x[d] = dist * swirl + pop.leader_position[d];
      }
    }
    repair_in_place(x, space);
  }
  refresh_fitness_and_leader(pop, objective);
}

}  // namespace swarm_arena

#endif  // SWARM_ARENA_WOA_HPP
