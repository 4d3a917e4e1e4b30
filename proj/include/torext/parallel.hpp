#pragma once

#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace torext {

// Thread budget: min(omp default, TOREXT_THREADS). 1 disables parallel paths.
inline int thread_budget() {
#ifdef _OPENMP
    int n = omp_get_max_threads();
    if (const char* env = std::getenv("TOREXT_THREADS")) {
        int cap = std::atoi(env);
        if (cap > 0 && cap < n) n = cap;
    }
    return n;
#else
    return 1;
#endif
}

template <class F>
void parallel_for(int n, F&& body) {
#ifdef _OPENMP
    if (thread_budget() > 1 && n > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(thread_budget())
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
#endif
    for (int i = 0; i < n; ++i) body(i);
}

}  // namespace torext
