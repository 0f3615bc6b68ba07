#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace vseg {

/// Caps the OpenMP team size. jobs == 0 keeps the runtime default.
/// All kernels in this project assign each output element to exactly one
/// thread, so results are identical for every thread count.
inline void set_jobs(int jobs) {
#ifdef _OPENMP
    if (jobs > 0) omp_set_num_threads(jobs);
#else
    (void)jobs;
#endif
}

inline int max_jobs() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace vseg
