#pragma once

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace sba::par {

inline int max_threads()
{
#if defined(_OPENMP)
    return ::omp_get_max_threads();
#else
    return 1;
#endif
}

inline int thread_num()
{
#if defined(_OPENMP)
    return ::omp_get_thread_num();
#else
    return 0;
#endif
}

inline bool enabled()
{
#if defined(_OPENMP)
    return true;
#else
    return false;
#endif
}

}  // namespace sba::par
