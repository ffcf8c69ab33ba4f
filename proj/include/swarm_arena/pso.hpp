// Particle swarm: inertia-weighted velocity update toward personal and
// global bests, synchronous evaluation once per iteration.
//
// Per particle and per dimension two uniforms are drawn, cognitive first.
// Velocities are clamped to velocity_clamp times the coordinate range.

#ifndef SWARM_ARENA_PSO_HPP
#define SWARM_ARENA_PSO_HPP

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "swarm_arena/population.hpp"

namespace swarm_arena {

struct PsoState {
  std::vector<std::vector<double>> velocities;
  std::vector<std::vector<double>> personal_best_positions;
  std::vector<double> personal_best_fitness;

  // Particles start at rest with personal bests at the initial positions.
  static PsoState from(const Population& pop, std::size_t dim) {
    PsoState st;
    st.velocities.assign(pop.size(), std::vector<double>(dim, 0.0));
    st.personal_best_positions = pop.positions;
    st.personal_best_fitness = pop.fitness;
    return st;
  }
};

template <class Objective, class Rng>
void pso_update(Population& pop, PsoState& state, const SearchSpace& space,
                Objective&& objective, const PsoParams& params, Rng& rng) {
  const std::size_t dim = space.dim();
  for (std::size_t i = 0; i < pop.size(); ++i) {
    auto& x = pop.positions[i];
    auto& v = state.velocities[i];
    for (std::size_t d = 0; d < dim; ++d) {
      const double r1 = rng.uniform01();
      const double r2 = rng.uniform01();
      const double vmax =
          params.velocity_clamp * (space.bounds[d].upper - space.bounds[d].lower);
      v[d] = params.inertia * v[d] +
             params.cognitive * r1 * (state.personal_best_positions[i][d] - x[d]) +
             params.social * r2 * (pop.leader_position[d] - x[d]);
      v[d] = std::clamp(v[d], -vmax, vmax);
      x[d] += v[d];
    }
    repair_in_place(x, space);
  }
  for (std::size_t i = 0; i < pop.size(); ++i) {
    pop.fitness[i] = objective(std::span<const double>(pop.positions[i]));
    if (pop.fitness[i] < state.personal_best_fitness[i]) {
      state.personal_best_fitness[i] = pop.fitness[i];
      state.personal_best_positions[i] = pop.positions[i];
    }
    if (pop.fitness[i] < pop.leader_fitness) {
      pop.leader_fitness = pop.fitness[i];
      pop.leader_position = pop.positions[i];
      pop.leader_index = i;
    }
  }
}

}  // namespace swarm_arena

#endif  // SWARM_ARENA_PSO_HPP
