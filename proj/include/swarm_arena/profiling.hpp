// Wall-time and peak-memory measurement for single trials.
//
// Memory is tracked by replacing the global allocation functions with
// counting wrappers. Replacement functions cannot live in a header-only
// library directly, so exactly one translation unit of the final binary must
// compile with
//
//   #define SWARM_ARENA_IMPLEMENT_ALLOC_HOOKS
//   #include <swarm_arena/profiling.hpp>
//
// before any other include of this header. Without that (or on platforms
// without malloc_usable_size) peak_memory() runs the task unmeasured and
// returns the sentinel 0 after printing a one-time warning.
//
// The counter is thread-local: only allocations made by the calling thread
// between activation and deactivation are counted, as a net-bytes
// high-water mark. Trials measured this way must not share a thread.

#ifndef SWARM_ARENA_PROFILING_HPP
#define SWARM_ARENA_PROFILING_HPP

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <type_traits>
#include <utility>

namespace swarm_arena {

namespace detail {

struct ThreadAllocCounter {
  bool active = false;
  long long current = 0;  // net bytes; may dip negative on foreign frees
  long long peak = 0;
};

inline thread_local ThreadAllocCounter t_alloc_counter;

inline bool& alloc_hooks_linked() {
  static bool linked = false;
  return linked;
}

inline void alloc_track(std::size_t usable) noexcept {
  ThreadAllocCounter& c = t_alloc_counter;
  if (!c.active) return;
  c.current += static_cast<long long>(usable);
  if (c.current > c.peak) c.peak = c.current;
}

inline void alloc_untrack(std::size_t usable) noexcept {
  ThreadAllocCounter& c = t_alloc_counter;
  if (!c.active) return;
  c.current -= static_cast<long long>(usable);
}

}  // namespace detail

inline bool memory_instrumentation_available() {
  return detail::alloc_hooks_linked();
}

// Monotonic-clock duration of a task. Returns (result, seconds), or just
// seconds when the task returns void.
template <class Task>
auto timed(Task&& task) {
  const auto start = std::chrono::steady_clock::now();
  if constexpr (std::is_void_v<std::invoke_result_t<Task&&>>) {
    std::forward<Task>(task)();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  } else {
    auto result = std::forward<Task>(task)();
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return std::pair{std::move(result), seconds};
  }
}

// High-water mark of net bytes allocated by `task` on this thread.
// Non-reentrant per thread.
template <class Task>
auto peak_memory(Task&& task) {
  static_assert(!std::is_void_v<std::invoke_result_t<Task&&>>,
                "peak_memory requires a task with a result");
  if (!memory_instrumentation_available()) {
    static bool warned = [] {
      std::fputs(
          "swarm_arena: allocation hooks not linked, peak memory reported as 0\n",
          stderr);
      return true;
    }();
    (void)warned;
    auto result = std::forward<Task>(task)();
    return std::pair{std::move(result), std::uint64_t{0}};
  }
  detail::ThreadAllocCounter& c = detail::t_alloc_counter;
  c.current = 0;
  c.peak = 0;
  c.active = true;
  struct Deactivate {
    detail::ThreadAllocCounter& c;
    ~Deactivate() { c.active = false; }
  } guard{c};
  auto result = std::forward<Task>(task)();
  const std::uint64_t peak = c.peak > 0 ? static_cast<std::uint64_t>(c.peak) : 0;
  return std::pair{std::move(result), peak};
}

struct CostSample {
  double wall_time_s = 0.0;
  std::uint64_t peak_memory_bytes = 0;
  bool profiling_enabled = false;
};

// Runs a task under the requested level of cost measurement. With
// profiling off the sample stays zeroed, so results derived from it are
// reproducible byte for byte.
template <class Task>
auto measure_cost(Task&& task, bool profile_time, bool profile_memory) {
  CostSample sample;
  if (profile_memory) {
    auto [timed_result, peak] =
        peak_memory([&] { return timed(std::forward<Task>(task)); });
    sample.wall_time_s = timed_result.second;
    sample.peak_memory_bytes = peak;
    sample.profiling_enabled = true;
    return std::pair{std::move(timed_result.first), sample};
  }
  if (profile_time) {
    auto [result, seconds] = timed(std::forward<Task>(task));
    sample.wall_time_s = seconds;
    sample.profiling_enabled = true;
    return std::pair{std::move(result), sample};
  }
  return std::pair{std::forward<Task>(task)(), sample};
}

}  // namespace swarm_arena

#if defined(SWARM_ARENA_IMPLEMENT_ALLOC_HOOKS) && \
    !defined(SWARM_ARENA_ALLOC_HOOKS_DEFINED)
#define SWARM_ARENA_ALLOC_HOOKS_DEFINED

#if defined(__GLIBC__) || __has_include(<malloc.h>)
#include <malloc.h>
#include <cstdlib>
#include <new>
#include <stdlib.h>

namespace swarm_arena::detail {

inline void* hooked_alloc(std::size_t size) {
  if (size == 0) size = 1;
  void* p;
  while ((p = std::malloc(size)) == nullptr) {
    std::new_handler handler = std::get_new_handler();
    if (handler == nullptr) throw std::bad_alloc();
    handler();
  }
  alloc_track(malloc_usable_size(p));
  return p;
}

inline void* hooked_alloc_aligned(std::size_t size, std::size_t alignment) {
  if (size == 0) size = 1;
  void* p = nullptr;
  while (posix_memalign(&p, alignment, size) != 0) {
    std::new_handler handler = std::get_new_handler();
    if (handler == nullptr) throw std::bad_alloc();
    handler();
  }
  alloc_track(malloc_usable_size(p));
  return p;
}

inline void hooked_free(void* p) noexcept {
  if (p == nullptr) return;
  alloc_untrack(malloc_usable_size(p));
  std::free(p);
}

namespace {
const bool hooks_registration = (alloc_hooks_linked() = true);
}

}  // namespace swarm_arena::detail

void* operator new(std::size_t size) { return swarm_arena::detail::hooked_alloc(size); }
void* operator new[](std::size_t size) { return swarm_arena::detail::hooked_alloc(size); }
void* operator new(std::size_t size, std::align_val_t al) {
  return swarm_arena::detail::hooked_alloc_aligned(size, static_cast<std::size_t>(al));
}
void* operator new[](std::size_t size, std::align_val_t al) {
  return swarm_arena::detail::hooked_alloc_aligned(size, static_cast<std::size_t>(al));
}
void* operator new(std::size_t size, const std::nothrow_t&) noexcept {
  try { return swarm_arena::detail::hooked_alloc(size); } catch (...) { return nullptr; }
}
void* operator new[](std::size_t size, const std::nothrow_t&) noexcept {
  try { return swarm_arena::detail::hooked_alloc(size); } catch (...) { return nullptr; }
}

void operator delete(void* p) noexcept { swarm_arena::detail::hooked_free(p); }
void operator delete[](void* p) noexcept { swarm_arena::detail::hooked_free(p); }
void operator delete(void* p, std::size_t) noexcept { swarm_arena::detail::hooked_free(p); }
void operator delete[](void* p, std::size_t) noexcept { swarm_arena::detail::hooked_free(p); }
void operator delete(void* p, std::align_val_t) noexcept { swarm_arena::detail::hooked_free(p); }
void operator delete[](void* p, std::align_val_t) noexcept { swarm_arena::detail::hooked_free(p); }
void operator delete(void* p, std::size_t, std::align_val_t) noexcept {
  swarm_arena::detail::hooked_free(p);
}
void operator delete[](void* p, std::size_t, std::align_val_t) noexcept {
  swarm_arena::detail::hooked_free(p);
}
void operator delete(void* p, const std::nothrow_t&) noexcept {
  swarm_arena::detail::hooked_free(p);
}
void operator delete[](void* p, const std::nothrow_t&) noexcept {
  swarm_arena::detail::hooked_free(p);
}

#endif  // malloc.h available
#endif  // SWARM_ARENA_IMPLEMENT_ALLOC_HOOKS

#endif  // SWARM_ARENA_PROFILING_HPP
