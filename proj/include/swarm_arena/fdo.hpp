// Fitness dependent optimizer: scout bees move by a pace derived from the
// fitness-weight ratio fw = |leader fitness / own fitness| - wf.
//
// One uniform r in [-1, 1] is drawn per scout per iteration. When fw is
// degenerate (own fitness zero, fw <= 0, or fw >= 1 - which includes every
// scout on problems with negative objectives and the leader itself) the pace
// is the random walk x*r; otherwise it is (x - leader)*fw, signed by r.
// A candidate is kept only if it improves the scout; failing that the
// previously accepted pace is retried, and failing that the scout stays.
// Accepted first-try paces are stored for the retry rule.

#ifndef SWARM_ARENA_FDO_HPP
#define SWARM_ARENA_FDO_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "swarm_arena/population.hpp"

namespace swarm_arena {

struct FdoState {
  std::vector<std::vector<double>> previous_pace;

  static FdoState from(std::size_t population_size, std::size_t dim) {
    return FdoState{std::vector<std::vector<double>>(
        population_size, std::vector<double>(dim, 0.0))};
  }
};

template <class Objective, class Rng>
void fdo_update(Population& pop, FdoState& state, const SearchSpace& space,
                Objective&& objective, const FdoParams& params, Rng& rng) {
  const std::size_t dim = space.dim();
  std::vector<double> pace(dim);
  std::vector<double> candidate(dim);

  for (std::size_t i = 0; i < pop.size(); ++i) {
    const auto& x = pop.positions[i];
    const double r = rng.uniform(-1.0, 1.0);

    bool degenerate = pop.fitness[i] == 0.0;
    double fw = 0.0;
    if (!degenerate) {
      fw = std::abs(pop.leader_fitness / pop.fitness[i]) - params.weight_factor;
      degenerate = !(fw > 0.0 && fw < 1.0);
    }
    if (degenerate) {
      for (std::size_t d = 0; d < dim; ++d) pace[d] = x[d] * r;
    } else {
      const double signed_fw = r >= 0.0 ? fw : -fw;
      for (std::size_t d = 0; d < dim; ++d)
        pace[d] = (x[d] - pop.leader_position[d]) * signed_fw;
    }

    auto accept = [&](const std::vector<double>& pos, double fit) {
      pop.positions[i] = pos;
      pop.fitness[i] = fit;
      if (fit < pop.leader_fitness) {
        pop.leader_fitness = fit;
        pop.leader_position = pop.positions[i];
        pop.leader_index = i;
      }
    };

    for (std::size_t d = 0; d < dim; ++d) candidate[d] = x[d] + pace[d];
    repair_in_place(candidate, space);
    const double candidate_fitness = objective(std::span<const double>(candidate));
    if (candidate_fitness < pop.fitness[i]) {
      state.previous_pace[i] = pace;
      accept(candidate, candidate_fitness);
      continue;
    }

    for (std::size_t d = 0; d < dim; ++d)
      candidate[d] = x[d] + state.previous_pace[i][d];
    repair_in_place(candidate, space);
    const double retry_fitness = objective(std::span<const double>(candidate));
    if (retry_fitness < pop.fitness[i]) accept(candidate, retry_fitness);
  }
}

}  // namespace swarm_arena

#endif  // SWARM_ARENA_FDO_HPP
