#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "pairprod/ode.hpp"

using namespace pairprod;

TEST_CASE("exponential decay to high accuracy") {
    auto rhs = [](double, const std::array<double, 1>& y, std::array<double, 1>& dy) {
        dy[0] = -y[0];
    };
    OdeOptions opt{1e-12, 1e-14, 10.0};
    const auto y = integrate_dopri5<1>(rhs, {1.0}, 0.0, 5.0, opt);
    CHECK(y[0] == doctest::Approx(std::exp(-5.0)).epsilon(1e-10));
}

TEST_CASE("harmonic oscillator keeps amplitude over many periods") {
    auto rhs = [](double, const std::array<double, 2>& y, std::array<double, 2>& dy) {
        dy[0] = y[1];
        dy[1] = -y[0];
    };
    OdeOptions opt{1e-11, 1e-13, 10.0};
    const double t1 = 40.0 * 3.14159265358979323846;  // 20 periods
    const auto y = integrate_dopri5<2>(rhs, {1.0, 0.0}, 0.0, t1, opt);
    CHECK(y[0] == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(y[1]) < 1e-8);
}

TEST_CASE("tolerance halving reduces the error") {
    auto rhs = [](double t, const std::array<double, 1>& y, std::array<double, 1>& dy) {
        dy[0] = std::cos(t) * y[0];
    };
    const double exact = std::exp(std::sin(3.0));
    double prev_err = 1.0;
    for (double tol : {1e-6, 1e-8, 1e-10}) {
        OdeOptions opt{tol, tol * 1e-2, 10.0};
        const auto y = integrate_dopri5<1>(rhs, {1.0}, 0.0, 3.0, opt);
        const double err = std::abs(y[0] - exact) / exact;
        CHECK(err < 100.0 * tol);
        CHECK(err <= prev_err * 1.5);  // monotone up to noise
        prev_err = err;
    }
}

TEST_CASE("accepted-step callback sees a monotone time sequence") {
    auto rhs = [](double, const std::array<double, 1>& y, std::array<double, 1>& dy) {
        dy[0] = y[0];
    };
    OdeOptions opt{1e-8, 1e-10, 0.25};
    OdeStats stats;
    double last_t = 0.0;
    int calls = 0;
    integrate_dopri5<1>(rhs, {1.0}, 0.0, 2.0, opt, &stats,
                        [&](double t, const std::array<double, 1>&) {
                            CHECK(t > last_t);
                            CHECK(t - last_t <= 0.25 + 1e-12);  // max_step respected
                            last_t = t;
                            ++calls;
                        });
    CHECK(last_t == doctest::Approx(2.0));
    CHECK(calls == stats.n_accepted);
    CHECK(stats.n_accepted >= 8);  // max_step forces at least span/max_step steps
}

TEST_CASE("degenerate interval returns the initial state") {
    auto rhs = [](double, const std::array<double, 1>&, std::array<double, 1>& dy) {
        dy[0] = 1.0;
    };
    OdeOptions opt;
    const auto y = integrate_dopri5<1>(rhs, {3.5}, 1.0, 1.0, opt);
    CHECK(y[0] == 3.5);
}

TEST_CASE("finite-time blow-up triggers StiffnessError") {
    // y' = y^2, y(0) = 1 blows up at t = 1; the step controller must underflow.
    auto rhs = [](double, const std::array<double, 1>& y, std::array<double, 1>& dy) {
        dy[0] = y[0] * y[0];
    };
    OdeOptions opt{1e-10, 1e-12, 10.0};
    CHECK_THROWS_AS(integrate_dopri5<1>(rhs, {1.0}, 0.0, 2.0, opt), StiffnessError);
}
