#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pairprod/fermion.hpp"
#include "pairprod/riccati.hpp"

using namespace pairprod;

TEST_CASE("zero field creates no fermion pairs") {
    FieldConfig empty;
    SolverSettings s;
    const auto res = solve_fermion_mode(empty, {0.1, 0.2}, s);
    CHECK(res.f == 0.0);
}

TEST_CASE("Pauli bound: fermion f stays within [0, 1]") {
    const auto cfg = make_single_sauter(0.5, 0.1);
    const auto s = SolverSettings::for_config(cfg);
    for (double k : {-1.0, -0.3, 0.0, 0.4, 1.2}) {
        const double f = solve_fermion_mode(cfg, {k, 0.1}, s).f;
        CHECK(f >= 0.0);
        CHECK(f <= 1.0);
    }
}

TEST_CASE("fermion spectrum rows carry the method tag in grid order") {
    const auto cfg = make_single_sauter(0.1, 0.05);
    const auto s = SolverSettings::for_config(cfg);
    const auto grid = uniform_kpar_grid(-0.1, 0.1, 5);
    const auto table = fermion_spectrum(cfg, grid, s);
    REQUIRE(table.size() == 5);
    for (std::size_t i = 0; i < table.size(); ++i) {
        CHECK(table.rows[i].method == "fermion");
        CHECK(table.rows[i].k_parallel == grid[i].k_parallel);
        CHECK(table.rows[i].f >= 0.0);
    }
}

TEST_CASE("boson and fermion fringes interleave for the alternating 2-pulse") {
    // Small window around k = 0; extrema interchange is the spin-statistics signature.
    const auto cfg = make_pulse_train(2, SignMode::alternating, 0.1, 0.05, 180.32,
                                      GaugeMode::centered_2pulse);
    SolverSettings s = SolverSettings::for_config(cfg);
    s.rel_tol = 1e-9;
    s.abs_tol = 1e-14;
    const int n = 81;
    const auto grid = uniform_kpar_grid(-0.035, 0.035, n);
    const auto boson = spectrum(cfg, grid, s);
    const auto fermion = fermion_spectrum(cfg, grid, s);

    int boson_max = 0, interleaved = 0;
    for (int i = 1; i + 1 < n; ++i) {
        const bool b_max = boson.rows[i].f > boson.rows[i - 1].f &&
                           boson.rows[i].f > boson.rows[i + 1].f;
        if (!b_max) continue;
        ++boson_max;
        // fermion must be near a minimum here: smaller than both fringe-scale
        // neighbors half a period away (~2 grid cells)
        const int lo = std::max(0, i - 2), hi = std::min(n - 1, i + 2);
        if (fermion.rows[i].f < fermion.rows[lo].f &&
            fermion.rows[i].f < fermion.rows[hi].f)
            ++interleaved;
    }
    CHECK(boson_max >= 3);
    CHECK(interleaved == boson_max);
}

TEST_CASE("fermion pair creation is suppressed relative to the Klein-zone-free bound") {
    // same field, boson vs fermion at k=0: both finite, positive, and tiny
    const auto cfg = make_single_sauter(0.1, 0.05);
    const auto s = SolverSettings::for_config(cfg);
    const double fb = solve_mode(cfg, {0.0, 0.0}, s).f;
    const double ff = solve_fermion_mode(cfg, {0.0, 0.0}, s).f;
    CHECK(fb > 0.0);
    CHECK(ff > 0.0);
    CHECK(ff < 1e-9);  // same exponential suppression regime
    CHECK(fb < 1e-9);
}
