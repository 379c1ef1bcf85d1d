#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pairprod/qve.hpp"

using namespace pairprod;

TEST_CASE("zero field: kinetic distribution stays at vacuum") {
    FieldConfig empty;
    SolverSettings s;
    CHECK(qve_distribution(empty, {0.2, 0.1}, s) == 0.0);
}

TEST_CASE("kinetic f is nonnegative at the final time") {
    const auto cfg = make_single_sauter(0.25, 0.02);
    SolverSettings s = SolverSettings::for_config(cfg);
    s.rel_tol = 1e-10;
    s.abs_tol = 1e-16;
    for (double k : {-12.5, -6.0, 0.0, 1.0}) CHECK(qve_distribution(cfg, {k, 0.0}, s) >= 0.0);
}

TEST_CASE("single Sauter pulse: kinetic and Riccati distributions coincide") {
    const auto cfg = make_single_sauter(0.1, 0.05);
    SolverSettings s = SolverSettings::for_config(cfg);
    const auto rep = cross_check(cfg, -0.5, 0.5, 21, s);
    CHECK(rep.pass);
    CHECK(rep.max_rel_diff < 1e-3);
    REQUIRE(rep.cases.size() == 21);
    // at k = 0 the strict pointwise relative difference is also tiny
    const auto& mid = rep.cases[10];
    CHECK(mid.k_parallel == doctest::Approx(0.0));
    CHECK(std::abs(mid.f_qve - mid.f_riccati) / mid.f_riccati < 1e-3);
    CHECK(mid.f_riccati == doctest::Approx(1.2825e-13).epsilon(1e-3));
}

TEST_CASE("alternating 2-pulse benchmark parameters: cross-method agreement") {
    const auto cfg = make_pulse_train(2, SignMode::alternating, 0.1, 0.05, 180.32,
                                      GaugeMode::centered_2pulse);
    SolverSettings s = SolverSettings::for_config(cfg);
    const auto rep = cross_check(cfg, -0.5, 0.5, 21, s);
    CHECK(rep.pass);
    CHECK(rep.max_rel_diff < 1e-3);
}

TEST_CASE("qve spectrum carries the method tag and matches qve_distribution") {
    const auto cfg = make_single_sauter(0.1, 0.05);
    SolverSettings s = SolverSettings::for_config(cfg);
    const auto grid = uniform_kpar_grid(-0.1, 0.1, 3);
    const auto table = qve_spectrum(cfg, grid, s);
    REQUIRE(table.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(table.rows[i].method == "qve");
        CHECK(table.rows[i].f ==
              doctest::Approx(qve_distribution(cfg, grid[i], s)).epsilon(1e-14));
    }
    CHECK_THROWS_AS(qve_spectrum(cfg, {}, s), std::invalid_argument);
}
