#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace helmholtz {

/// How a sweep kernel runs. Both paths evaluate the same per-index function
/// and store results by index, so their outputs are identical.
enum class Exec { serial, parallel };

/// Applies HELMHOLTZ_LAB_THREADS (if set) as the OpenMP thread cap.
/// Returns the effective maximum thread count.
int configure_threads_from_env();
int max_threads();

/// out[i] = f(i) for i in [0, n). The first exception thrown by any index is
/// rethrown after the loop.
template <class F>
auto map_indices(std::size_t n, F&& f, Exec exec) -> std::vector<decltype(f(std::size_t{}))> {
  using R = decltype(f(std::size_t{}));
  std::vector<R> out(n);
  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::exception_ptr failure;
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(helmholtz_map_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace helmholtz
