// swarm-arena command-line tool.

#define SWARM_ARENA_IMPLEMENT_ALLOC_HOOKS
#include "swarm_arena/profiling.hpp"

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "swarm_arena/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const swarm_arena::ParseOutcome parsed =
      swarm_arena::parse_command_line(std::move(args));
  if (!parsed.options) {
    std::fprintf(parsed.exit_code == 0 ? stdout : stderr, "%s\n",
                 parsed.message.c_str());
    return parsed.exit_code;
  }
  try {
    return swarm_arena::run_command(*parsed.options);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "swarm-arena: %s\n", e.what());
    return 1;
  }
}
