#include "helmholtz/execution.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace helmholtz {

int configure_threads_from_env() {
  if (const char* env = std::getenv("HELMHOLTZ_LAB_THREADS")) {
    try {
      const int n = std::stoi(env);
#ifdef _OPENMP
      if (n > 0) omp_set_num_threads(n);
#else
      (void)n;
#endif
    } catch (const std::exception&) {
      // malformed value: keep the runtime default
    }
  }
  return max_threads();
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace helmholtz
