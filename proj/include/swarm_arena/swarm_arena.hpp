// Umbrella header for the swarm-arena library.

#ifndef SWARM_ARENA_SWARM_ARENA_HPP
#define SWARM_ARENA_SWARM_ARENA_HPP

#include "swarm_arena/benchmarks.hpp"
#include "swarm_arena/harness.hpp"
#include "swarm_arena/optimizer.hpp"
#include "swarm_arena/profiling.hpp"
#include "swarm_arena/random.hpp"
#include "swarm_arena/report.hpp"
#include "swarm_arena/stats.hpp"
#include "swarm_arena/version.hpp"

#endif  // SWARM_ARENA_SWARM_ARENA_HPP
