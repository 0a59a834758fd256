/*
 * Benchmark: OpenMP sampling loop against the serial reference on a
 * mid-sized sector, verifying that both produce identical estimates.
 *
 *   ./bench_page_curve [samples] [n_sites]
 */
#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "chargepage/entropy.hpp"
#include "chargepage/sectors.hpp"

using namespace chargepage;
using Clock = std::chrono::steady_clock;

int main(int argc, char** argv) {
    const std::uint64_t samples = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 400;
    const int n = argc > 2 ? std::atoi(argv[2]) : 6;
    if (n % 2 != 0 || n < 2 || n > 10) {
        std::fprintf(stderr, "n_sites must be even, 2..10\n");
        return 2;
    }

    SectorBasis sector = microcanonical_noncommuting(n);
    std::vector<int> cuts;
    for (int i = 1; i < n; ++i) cuts.push_back(i);

    std::printf("sector %s, dim %llu, %llu samples, cuts 1..%d\n",
                sector.label.to_string().c_str(),
                static_cast<unsigned long long>(sector.dim()),
                static_cast<unsigned long long>(samples), n - 1);
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not enabled; both runs are serial\n");
#endif

    auto t0 = Clock::now();
    PageCurveEstimate serial =
        estimate_page_curve(sector, cuts, samples, 42, Execution::serial);
    auto t1 = Clock::now();
    PageCurveEstimate parallel =
        estimate_page_curve(sector, cuts, samples, 42, Execution::parallel);
    auto t2 = Clock::now();

    const double serial_s = std::chrono::duration<double>(t1 - t0).count();
    const double parallel_s = std::chrono::duration<double>(t2 - t1).count();
    std::printf("serial reference: %8.3f s\n", serial_s);
    std::printf("OpenMP:           %8.3f s   (speedup %.2fx)\n", parallel_s,
                serial_s / parallel_s);

    double max_diff = 0.0;
    for (std::size_t i = 0; i < cuts.size(); ++i)
        max_diff = std::max(max_diff, std::abs(serial.points[i].mean_nats -
                                               parallel.points[i].mean_nats));
    std::printf("max |serial - parallel| mean difference: %g %s\n", max_diff,
                max_diff == 0.0 ? "(bitwise identical)" : "(MISMATCH)");
    return max_diff == 0.0 ? 0 : 1;
}
