// Times the OpenMP kernels against their serial reference implementations.
// Usage: bench_kernels [n]   (default n=6)

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "lcsq/lcs_matrix.hpp"
#include "lcsq/verify.hpp"

using namespace lcsq;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    const int n = argc > 1 ? std::atoi(argv[1]) : 6;
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (no OpenMP)\n");
#endif

    auto t0 = clock_type::now();
    const auto serial = build_dense_serial(n);
    const double t_build_serial = seconds_since(t0);

    t0 = clock_type::now();
    const auto parallel = build_dense(n);
    const double t_build_parallel = seconds_since(t0);

    if (serial.entries != parallel.entries) {
        std::printf("ERROR: serial and parallel builds disagree\n");
        return 1;
    }
    std::printf("build_dense   n=%d  serial %.3fs  parallel %.3fs  speedup %.2fx\n", n,
                t_build_serial, t_build_parallel, t_build_serial / t_build_parallel);

    const auto op = MatrixOperator::dense(parallel);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(op.dim());
    for (auto& x : v) x = u(rng);

    const int reps = 20;
    t0 = clock_type::now();
    for (int r = 0; r < reps; ++r) (void)op.apply_serial(v);
    const double t_mv_serial = seconds_since(t0) / reps;
    t0 = clock_type::now();
    for (int r = 0; r < reps; ++r) (void)op.apply(v);
    const double t_mv_parallel = seconds_since(t0) / reps;
    std::printf("matvec        n=%d  serial %.4fs  parallel %.4fs  speedup %.2fx\n", n,
                t_mv_serial, t_mv_parallel, t_mv_serial / t_mv_parallel);

    if (n <= 5) {
        t0 = clock_type::now();
        (void)check_triple_product_serial(n);
        const double t_triple_serial = seconds_since(t0);
        t0 = clock_type::now();
        (void)check_triple_product(n, true);
        const double t_triple_parallel = seconds_since(t0);
        std::printf("triple_scan   n=%d  serial %.3fs  parallel %.3fs  speedup %.2fx\n", n,
                    t_triple_serial, t_triple_parallel, t_triple_serial / t_triple_parallel);
    }
    return 0;
}
