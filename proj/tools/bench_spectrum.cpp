// Compares the parallel spectrum scan against the serial reference path:
// identical results required, wall-clock speedup reported.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "pairprod/fields.hpp"
#include "pairprod/riccati.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using Clock = std::chrono::steady_clock;

int main(int argc, char** argv) {
    int n_points = 201;
    if (argc > 1) n_points = std::atoi(argv[1]);
    if (n_points < 2) {
        std::fprintf(stderr, "usage: %s [n_points >= 2]\n", argv[0]);
        return 1;
    }

    const auto config = pairprod::make_pulse_train(
        2, pairprod::SignMode::alternating, 0.1, 0.05, 180.32,
        pairprod::GaugeMode::centered_2pulse);
    const auto s = pairprod::SolverSettings::for_config(config);
    const auto grid = pairprod::uniform_kpar_grid(-0.2, 0.2, n_points);

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (built without OpenMP)\n");
#endif
    std::printf("modes:   %d\n", n_points);

    const auto t0 = Clock::now();
    const auto serial = pairprod::spectrum_serial(config, grid, s);
    const auto t1 = Clock::now();
    const auto parallel = pairprod::spectrum(config, grid, s);
    const auto t2 = Clock::now();

    double max_diff = 0.0;
    for (std::size_t i = 0; i < serial.rows.size(); ++i)
        max_diff = std::max(max_diff, std::abs(serial.rows[i].f - parallel.rows[i].f));

    const double dt_serial = std::chrono::duration<double>(t1 - t0).count();
    const double dt_parallel = std::chrono::duration<double>(t2 - t1).count();
    std::printf("serial:   %.3f s\n", dt_serial);
    std::printf("parallel: %.3f s\n", dt_parallel);
    std::printf("speedup:  %.2fx\n", dt_serial / dt_parallel);
    std::printf("max |f_serial - f_parallel| = %.3e\n", max_diff);

    if (max_diff != 0.0) {
        std::fprintf(stderr, "FAIL: parallel scan does not match serial reference\n");
        return 1;
    }
    std::printf("results identical\n");
    return 0;
}
