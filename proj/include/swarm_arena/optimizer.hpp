// Single entry point for running any of the five optimizers on a problem.
//
// One minimize() call is one seeded trial: the initial population is drawn
// uniformly from the search space, the algorithm iterates for the configured
// budget, and the best-so-far objective value is recorded after every
// iteration. Identical arguments produce bit-identical records.
//
// Objective evaluations per trial:
//   woa, bsa, pso, ff   population_size * (iterations + 1), exactly
//   fdo                 between population_size * (iterations + 1) and
//                       population_size * (2 * iterations + 1); each scout
//                       spends a second evaluation per iteration only when
//                       its first candidate is rejected

#ifndef SWARM_ARENA_OPTIMIZER_HPP
#define SWARM_ARENA_OPTIMIZER_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "swarm_arena/benchmarks.hpp"
#include "swarm_arena/bsa.hpp"
#include "swarm_arena/fdo.hpp"
#include "swarm_arena/ff.hpp"
#include "swarm_arena/population.hpp"
#include "swarm_arena/pso.hpp"
#include "swarm_arena/random.hpp"
#include "swarm_arena/woa.hpp"

namespace swarm_arena {

// One seeded optimizer execution. Cost fields stay zero unless the caller
// profiles the trial; everything else is a pure function of the arguments.
struct RunRecord {
  Algorithm algorithm{};
  Problem problem{};
  std::size_t dim = 0;
  SearchSpace space;
  std::uint64_t seed = 0;
  double best_fitness = 0.0;
  std::vector<double> best_position;
  std::vector<double> trace;  // best-so-far after each iteration
  std::uint64_t evaluations = 0;
  double wall_time_s = 0.0;
  std::uint64_t peak_memory_bytes = 0;

  bool operator==(const RunRecord&) const = default;
};

namespace detail {

struct OptimizeOutcome {
  Population population;
  std::vector<double> trace;
  std::uint64_t evaluations = 0;
};

inline void validate_space(const SearchSpace& space) {
  if (space.dim() == 0)
    throw std::invalid_argument("search space must have at least one dimension");
  for (const Interval& b : space.bounds)
    if (!(b.lower < b.upper))
      throw std::invalid_argument("search space bounds must satisfy lower < upper");
}

template <class Objective>
OptimizeOutcome run_optimizer(Algorithm algorithm, Objective&& objective,
                              const SearchSpace& space,
                              const OptimizerConfig& config,
                              std::uint64_t seed) {
  config.validate();
  validate_space(space);

  std::uint64_t evaluations = 0;
  auto counted = [&](std::span<const double> x) {
    ++evaluations;
    return objective(x);
  };

  Xoshiro256 rng(seed);
  Population pop = init_population(counted, space, config.population_size, rng);

  PsoState pso_state;
  FfState ff_state = FfState::from(config.ff);
  FdoState fdo_state;
  std::vector<std::vector<double>> bsa_historical;
  switch (algorithm) {
    case Algorithm::Pso:
      pso_state = PsoState::from(pop, space.dim());
      break;
    case Algorithm::Fdo:
      fdo_state = FdoState::from(config.population_size, space.dim());
      break;
    case Algorithm::Bsa:
      // BSA's memory starts as an independent uniform sample.
      bsa_historical.resize(config.population_size,
                            std::vector<double>(space.dim()));
      for (auto& x : bsa_historical)
        for (std::size_t d = 0; d < space.dim(); ++d)
          x[d] = rng.uniform(space.bounds[d].lower, space.bounds[d].upper);
      break;
    default:
      break;
  }

  std::vector<double> trace;
  trace.reserve(config.iterations);
  for (std::size_t iter = 0; iter < config.iterations; ++iter) {
    switch (algorithm) {
      case Algorithm::Woa:
        woa_update(pop, space, counted, iter, config.iterations, config.woa, rng);
        break;
      case Algorithm::Bsa:
        bsa_update(pop, bsa_historical, space, counted, config.bsa, rng);
        break;
      case Algorithm::Fdo:
        fdo_update(pop, fdo_state, space, counted, config.fdo, rng);
        break;
      case Algorithm::Pso:
        pso_update(pop, pso_state, space, counted, config.pso, rng);
        break;
      case Algorithm::Ff:
        ff_update(pop, ff_state, space, counted, config.ff, rng);
        break;
    }
    trace.push_back(pop.leader_fitness);
  }
  return OptimizeOutcome{std::move(pop), std::move(trace), evaluations};
}

}  // namespace detail

// Run `algorithm` on `problem` over `space` for one seeded trial.
inline RunRecord minimize(Algorithm algorithm, Problem problem,
                          const SearchSpace& space,
                          const OptimizerConfig& config, std::uint64_t seed) {
  check_dimension(problem, space.dim());
  auto objective = [problem](std::span<const double> x) {
    return evaluate(problem, x);
  };
  detail::OptimizeOutcome outcome =
      detail::run_optimizer(algorithm, objective, space, config, seed);

  RunRecord record;
  record.algorithm = algorithm;
  record.problem = problem;
  record.dim = space.dim();
  record.space = space;
  record.seed = seed;
  record.best_fitness = outcome.population.leader_fitness;
  record.best_position = std::move(outcome.population.leader_position);
  record.trace = std::move(outcome.trace);
  record.evaluations = outcome.evaluations;
  return record;
}

}  // namespace swarm_arena

#endif  // SWARM_ARENA_OPTIMIZER_HPP
