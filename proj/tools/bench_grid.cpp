// Benchmark: the per-spec verification kernel across the standard grid,
// serial reference vs OpenMP.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hone/grid.hpp"

namespace {

double run_once(const std::vector<hone::SeriesSpec>& specs, bool parallel,
                std::size_t* failures) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto results = hone::run_grid(specs, parallel);
    const auto t1 = std::chrono::steady_clock::now();
    *failures = 0;
    for (const auto& r : results)
        if (!r.ok) ++*failures;
    return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t depth = 9;
    if (argc > 1) depth = static_cast<std::size_t>(std::atol(argv[1]));
    const auto specs = hone::standard_grid(depth);

#ifdef _OPENMP
    std::printf("grid: %zu specs, depth %zu, %d OpenMP threads\n", specs.size(),
                depth, omp_get_max_threads());
#else
    std::printf("grid: %zu specs, depth %zu, OpenMP disabled\n", specs.size(),
                depth);
#endif

    std::size_t fail_serial = 0, fail_parallel = 0;
    const double ts = run_once(specs, false, &fail_serial);
    const double tp = run_once(specs, true, &fail_parallel);

    std::printf("serial   : %8.3f s  (%zu failures)\n", ts, fail_serial);
    std::printf("parallel : %8.3f s  (%zu failures)\n", tp, fail_parallel);
    std::printf("speedup  : %8.2fx\n", tp > 0 ? ts / tp : 0.0);
    return (fail_serial || fail_parallel) ? 1 : 0;
}
