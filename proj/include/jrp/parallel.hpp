#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <string>

#ifdef JRP_HAVE_OPENMP
#include <omp.h>
#endif

namespace jrp::parallel {

/// Thread budget: JRP_THREADS env var caps parallelism; 1 forces the serial
/// reference path, 0/unset uses the OpenMP default.
inline int thread_budget() {
    const char* env = std::getenv("JRP_THREADS");
    if (env != nullptr) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<int>(v);
    }
#ifdef JRP_HAVE_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

/// Runs body(i) for i in [0, n). The parallel and serial paths execute the
/// same per-index work; callers own any reduction and must keep it
/// order-independent (e.g. fill an array, or reduce by (value, index) min).
template <class Body>
void for_each_index(std::size_t n, const Body& body, int threads = -1) {
    if (threads < 0) threads = thread_budget();
#ifdef JRP_HAVE_OPENMP
    if (threads > 1 && n > 1) {
#pragma omp parallel for schedule(static) num_threads(threads)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
            body(static_cast<std::size_t>(i));
        }
        return;
    }
#endif
    for (std::size_t i = 0; i < n; ++i) body(i);
}

/// splitmix64; used to derive independent per-index RNG seeds so Monte-Carlo
/// results do not depend on the thread count.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace jrp::parallel
