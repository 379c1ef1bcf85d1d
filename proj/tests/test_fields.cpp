#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "pairprod/fields.hpp"

using namespace pairprod;

namespace {

double sech2(double x) {
    const double c = std::cosh(x);
    return 1.0 / (c * c);
}

}  // namespace

TEST_CASE("pulse train matches the explicit alternating 2-pulse form") {
    const double E0 = 0.1, w0 = 0.05, T = 180.32;
    const auto cfg = make_pulse_train(2, SignMode::alternating, E0, w0, T,
                                      GaugeMode::centered_2pulse);
    REQUIRE(cfg.pulses.size() == 2);

    std::mt19937 rng(20240611);
    std::uniform_real_distribution<double> ts(-400.0, 400.0);
    for (int i = 0; i < 100; ++i) {
        const double t = ts(rng);
        // E0 sech^2[w0(t + T/2)] - E0 sech^2[w0(t - T/2)]
        const double e_ref =
            E0 * sech2(w0 * (t + T / 2.0)) - E0 * sech2(w0 * (t - T / 2.0));
        CHECK(e_field(cfg, t) == doctest::Approx(e_ref).epsilon(1e-14));
        // A = E0/w0 {1 + tanh[w0(t - T/2)] - tanh[w0(t + T/2)]}
        const double a_ref = E0 / w0 *
                             (1.0 + std::tanh(w0 * (t - T / 2.0)) -
                              std::tanh(w0 * (t + T / 2.0)));
        CHECK(a_potential(cfg, t) == doctest::Approx(a_ref).epsilon(1e-14));
    }
}

TEST_CASE("alternating 2-pulse field vanishes at t = 0 by antisymmetry") {
    const auto cfg = make_pulse_train(2, SignMode::alternating, 0.1, 0.05, 180.32);
    CHECK(std::abs(e_field(cfg, 0.0)) < 1e-18);
    CHECK(e_field(cfg, 10.0) == doctest::Approx(-e_field(cfg, -10.0)).epsilon(1e-13));
}

TEST_CASE("equal-sign assist at T = 0 peaks at E1 + E2") {
    const auto cfg = make_equal_sign_assist(0.25, 0.02, 0.025, 1.0, 0.0);
    CHECK(e_field(cfg, 0.0) == doctest::Approx(0.275).epsilon(1e-14));
    CHECK(cfg.max_amplitude() == doctest::Approx(0.25));
    CHECK(cfg.min_inverse_width() == doctest::Approx(0.02));
    CHECK(cfg.max_inverse_width() == doctest::Approx(1.0));
}

TEST_CASE("E = -dA/dt for every family") {
    const FieldConfig configs[] = {
        make_single_sauter(0.1, 0.05),
        make_equal_sign_assist(0.25, 0.02, 0.025, 1.0, 40.0),
        make_alternating_assist(0.25, 0.02, 0.025, 1.0, 25.0),
        make_pulse_train(6, SignMode::alternating, 0.1, 0.05, 180.32),
    };
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> ts(-200.0, 200.0);
    const double h = 1e-4;
    for (const auto& cfg : configs) {
        for (int i = 0; i < 25; ++i) {
            const double t = ts(rng);
            const double dA = (a_potential(cfg, t + h) - a_potential(cfg, t - h)) / (2 * h);
            CHECK(std::abs(e_field(cfg, t) + dA) < 1e-6);
        }
    }
}

TEST_CASE("gauge modes fix the asymptotic potential") {
    const auto vanish = make_pulse_train(2, SignMode::alternating, 0.1, 0.05, 180.32,
                                         GaugeMode::vanish_at_minus_infinity);
    CHECK(std::abs(a_potential(vanish, -1e6)) < 1e-12);

    const auto centered = make_pulse_train(2, SignMode::alternating, 0.1, 0.05, 180.32,
                                        GaugeMode::centered_2pulse);
    CHECK(a_potential(centered, -1e6) == doctest::Approx(0.1 / 0.05).epsilon(1e-12));
    CHECK(a_potential(centered, 1e6) == doctest::Approx(0.1 / 0.05).epsilon(1e-12));
    // same physical field either way
    CHECK(e_field(centered, 3.0) == doctest::Approx(e_field(vanish, 3.0)).epsilon(1e-14));
}

TEST_CASE("complex evaluation is the analytic continuation") {
    const auto cfg = make_pulse_train(2, SignMode::alternating, 0.1, 0.05, 180.32,
                                      GaugeMode::centered_2pulse);
    // agrees with the real version on the axis
    CHECK(e_field(cfg, std::complex<double>(12.5, 0.0)).real() ==
          doctest::Approx(e_field(cfg, 12.5)).epsilon(1e-14));
    // Schwarz reflection: E(conj t) = conj(E(t))
    const std::complex<double> t(40.0, 8.0);
    const auto e_up = e_field(cfg, t);
    const auto e_dn = e_field(cfg, std::conj(t));
    CHECK(e_dn.real() == doctest::Approx(e_up.real()).epsilon(1e-13));
    CHECK(e_dn.imag() == doctest::Approx(-e_up.imag()).epsilon(1e-13));

    const MomentumPoint k{0.3, 0.1};
    const auto om2 = omega_squared(cfg, k, std::complex<double>(5.0, 0.0));
    CHECK(om2.real() == doctest::Approx(omega_squared_real(cfg, k, 5.0)).epsilon(1e-14));
    CHECK(std::abs(om2.imag()) < 1e-14);
    CHECK(omega_real(cfg, k, 5.0) >= kMass);
}

TEST_CASE("evaluation near a sech^2 pole throws PoleError") {
    const auto cfg = make_single_sauter(0.1, 0.05);
    const double im_pole = 3.14159265358979323846 / (2.0 * 0.05);
    CHECK_THROWS_AS(e_field(cfg, std::complex<double>(0.0, im_pole)), PoleError);
    CHECK_THROWS_AS(
        a_potential(cfg, std::complex<double>(5e-4, im_pole + 5e-4)), PoleError);
    // comfortably outside the exclusion disk is fine
    CHECK_NOTHROW(e_field(cfg, std::complex<double>(0.0, im_pole - 1.0)));
}

TEST_CASE("config validation rejects malformed pulses") {
    FieldConfig bad;
    bad.pulses = {{-0.1, 0.05, 0.0, +1}};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.pulses = {{0.1, 0.0, 0.0, +1}};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.pulses = {{0.1, 0.05, 0.0, 2}};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    CHECK_THROWS_AS(make_pulse_train(0, SignMode::equal, 0.1, 0.05, 10.0),
                    std::invalid_argument);
}

TEST_CASE("JSON round trip preserves the config") {
    auto cfg = make_pulse_train(6, SignMode::alternating, 0.1, 0.05, 180.32,
                                GaugeMode::centered_2pulse);
    cfg.label = "roundtrip";
    const auto back = config_from_json_text(config_to_json_text(cfg));
    CHECK(back.label == cfg.label);
    CHECK(back.gauge_constant == doctest::Approx(cfg.gauge_constant).epsilon(1e-15));
    REQUIRE(back.pulses.size() == cfg.pulses.size());
    for (std::size_t i = 0; i < cfg.pulses.size(); ++i) {
        CHECK(back.pulses[i].amplitude == cfg.pulses[i].amplitude);
        CHECK(back.pulses[i].inverse_width == cfg.pulses[i].inverse_width);
        CHECK(back.pulses[i].center == cfg.pulses[i].center);
        CHECK(back.pulses[i].sign == cfg.pulses[i].sign);
    }
}

TEST_CASE("JSON gauge keywords resolve to numbers") {
    const std::string text = R"({
        "label": "kw",
        "gauge_constant": "centered_2pulse",
        "pulses": [
            {"amplitude": 0.1, "inverse_width": 0.05, "center": 90.16, "sign": -1},
            {"amplitude": 0.1, "inverse_width": 0.05, "center": -90.16, "sign": 1}
        ]
    })";
    const auto cfg = config_from_json_text(text);
    CHECK(cfg.gauge_constant == doctest::Approx(2.0).epsilon(1e-14));

    const std::string vanish = R"({
        "gauge_constant": "vanish_at_minus_infinity",
        "pulses": [{"amplitude": 0.1, "inverse_width": 0.05, "center": 0.0, "sign": 1}]
    })";
    const auto cfg2 = config_from_json_text(vanish);
    CHECK(std::abs(a_potential(cfg2, -1e6)) < 1e-12);

    CHECK_THROWS_AS(config_from_json_text("{not json"), std::invalid_argument);
    CHECK_THROWS_AS(config_from_json_text(R"({"gauge_constant": "bogus", "pulses": []})"),
                    std::invalid_argument);
}
