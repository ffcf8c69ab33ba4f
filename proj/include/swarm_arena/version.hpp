#ifndef SWARM_ARENA_VERSION_HPP
#define SWARM_ARENA_VERSION_HPP

namespace swarm_arena {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace swarm_arena

#endif  // SWARM_ARENA_VERSION_HPP
