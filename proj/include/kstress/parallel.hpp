#pragma once

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace kstress {

inline int max_threads() {
#if defined(_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

/// Below this many (row x column) updates a parallel region costs more than it saves.
inline constexpr long kParallelWorkThreshold = 4096;

}  // namespace kstress
