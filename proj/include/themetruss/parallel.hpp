#pragma once

#include <omp.h>

#include <cstddef>
#include <cstdint>
#include <exception>

namespace themetruss {

inline int resolve_threads(int requested) { return requested > 0 ? requested : omp_get_max_threads(); }

/// Runs fn(i) for i in [0, n) across an OpenMP team. threads == 1 stays on
/// the calling thread. The first exception thrown by any iteration is
/// rethrown after the loop.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  const int team = resolve_threads(threads);
  if (team == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) num_threads(team)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(themetruss_parallel_for)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace themetruss
