#include "pairprod/fields.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace pairprod {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Distance (in t units) from z = w(t - c) to the nearest pole of sech/tanh,
// which sit at z = i pi (p + 1/2).
void check_pole(const PulseSpec& p, std::complex<double> t) {
    const std::complex<double> z = p.inverse_width * (t - p.center);
    const double half_pi = kPi / 2.0;
    const double n = std::round((z.imag() - half_pi) / kPi);
    const double im_pole = half_pi + n * kPi;
    const double dist = std::hypot(z.real(), z.imag() - im_pole) / p.inverse_width;
    if (dist < kPoleExclusionRadius) {
        const std::complex<double> pole(p.center, im_pole / p.inverse_width);
        std::ostringstream msg;
        msg << "field evaluation within " << kPoleExclusionRadius
            << " of pole at t = (" << pole.real() << ", " << pole.imag() << "i)";
        throw PoleError(msg.str(), pole);
    }
}

double sech2(double x) {
    const double c = std::cosh(x);
    return 1.0 / (c * c);
}

}  // namespace

void FieldConfig::validate() const {
    for (const auto& p : pulses) {
        if (!(p.amplitude > 0.0))
            throw std::invalid_argument("pulse amplitude must be > 0");
        if (!(p.inverse_width > 0.0))
            throw std::invalid_argument("pulse inverse_width must be > 0");
        if (p.sign != 1 && p.sign != -1)
            throw std::invalid_argument("pulse sign must be +1 or -1");
        if (!std::isfinite(p.center))
            throw std::invalid_argument("pulse center must be finite");
    }
    if (!std::isfinite(gauge_constant))
        throw std::invalid_argument("gauge_constant must be finite");
}

double FieldConfig::max_amplitude() const {
    double m = 0.0;
    for (const auto& p : pulses) m = std::max(m, p.amplitude);
    return m;
}

double FieldConfig::min_inverse_width() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& p : pulses) m = std::min(m, p.inverse_width);
    return m;
}

double FieldConfig::max_inverse_width() const {
    double m = 0.0;
    for (const auto& p : pulses) m = std::max(m, p.inverse_width);
    return m;
}

double FieldConfig::earliest_center() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& p : pulses) m = std::min(m, p.center);
    return m;
}

double FieldConfig::latest_center() const {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& p : pulses) m = std::max(m, p.center);
    return m;
}

double e_field(const FieldConfig& config, double t) {
    double e = 0.0;
    for (const auto& p : config.pulses)
        e += p.sign * p.amplitude * sech2(p.inverse_width * (t - p.center));
    return e;
}

double a_potential(const FieldConfig& config, double t) {
    double a = config.gauge_constant;
    for (const auto& p : config.pulses)
        a -= p.sign * (p.amplitude / p.inverse_width) * std::tanh(p.inverse_width * (t - p.center));
    return a;
}

std::complex<double> e_field(const FieldConfig& config, std::complex<double> t) {
    std::complex<double> e = 0.0;
    for (const auto& p : config.pulses) {
        check_pole(p, t);
        const std::complex<double> c = std::cosh(p.inverse_width * (t - p.center));
        e += p.sign * p.amplitude / (c * c);
    }
    return e;
}

std::complex<double> a_potential(const FieldConfig& config, std::complex<double> t) {
    std::complex<double> a = config.gauge_constant;
    for (const auto& p : config.pulses) {
        check_pole(p, t);
        a -= p.sign * (p.amplitude / p.inverse_width) *
             std::tanh(p.inverse_width * (t - p.center));
    }
    return a;
}

std::complex<double> omega_squared(const FieldConfig& config, const MomentumPoint& k,
                                   std::complex<double> t) {
    const std::complex<double> kin = k.k_parallel - kCharge * a_potential(config, t);
    return kMass * kMass + k.k_perp * k.k_perp + kin * kin;
}

double omega_squared_real(const FieldConfig& config, const MomentumPoint& k, double t) {
    const double kin = k.k_parallel - kCharge * a_potential(config, t);
    return kMass * kMass + k.k_perp * k.k_perp + kin * kin;
}

double omega_real(const FieldConfig& config, const MomentumPoint& k, double t) {
    return std::sqrt(omega_squared_real(config, k, t));
}

double resolve_gauge(const std::vector<PulseSpec>& pulses, GaugeMode mode) {
    switch (mode) {
        case GaugeMode::vanish_at_minus_infinity: {
            // A(-inf) = g + sum_i s_i E_i/w_i
            double s = 0.0;
            for (const auto& p : pulses) s += p.sign * p.amplitude / p.inverse_width;
            return -s;
        }
        case GaugeMode::centered_2pulse:
            if (pulses.empty()) return 0.0;
            return pulses.front().amplitude / pulses.front().inverse_width;
    }
    return 0.0;
}

FieldConfig make_equal_sign_assist(double E1, double w1, double E2, double w2, double T,
                                   GaugeMode gauge) {
    FieldConfig c;
    c.pulses = {{E1, w1, -T / 2.0, +1}, {E2, w2, +T / 2.0, +1}};
    c.gauge_constant = resolve_gauge(c.pulses, gauge);
    c.label = "equal_sign_assist";
    c.validate();
    return c;
}

FieldConfig make_alternating_assist(double E1, double w1, double E2, double w2, double T,
                                    GaugeMode gauge) {
    FieldConfig c;
    c.pulses = {{E1, w1, -T / 2.0, +1}, {E2, w2, +T / 2.0, -1}};
    c.gauge_constant = resolve_gauge(c.pulses, gauge);
    c.label = "alternating_assist";
    c.validate();
    return c;
}

FieldConfig make_pulse_train(int N, SignMode signs, double E0, double w0, double T,
                             GaugeMode gauge) {
    if (N < 1) throw std::invalid_argument("pulse train needs N >= 1");
    FieldConfig c;
    for (int i = 1; i <= N; ++i) {
        const double center = -(i - (N + 1) / 2.0) * T;
        const int s = (signs == SignMode::equal) ? +1 : (i % 2 == 0 ? +1 : -1);
        c.pulses.push_back({E0, w0, center, s});
    }
    c.gauge_constant = resolve_gauge(c.pulses, gauge);
    c.label = (signs == SignMode::equal) ? "pulse_train_equal" : "pulse_train_alternating";
    c.validate();
    return c;
}

FieldConfig make_single_sauter(double E0, double w0, double center, int sign,
                               double gauge_constant) {
    FieldConfig c;
    c.pulses = {{E0, w0, center, sign}};
    c.gauge_constant = gauge_constant;
    c.label = "single_sauter";
    c.validate();
    return c;
}

FieldConfig config_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("config JSON parse error: ") + e.what());
    }
    FieldConfig c;
    c.label = j.value("label", "");
    if (!j.contains("pulses") || !j["pulses"].is_array())
        throw std::invalid_argument("config JSON needs a \"pulses\" array");
    for (const auto& jp : j["pulses"]) {
        PulseSpec p;
        p.amplitude = jp.at("amplitude").get<double>();
        p.inverse_width = jp.at("inverse_width").get<double>();
        p.center = jp.at("center").get<double>();
        p.sign = jp.at("sign").get<int>();
        c.pulses.push_back(p);
    }
    const auto& g = j.at("gauge_constant");
    if (g.is_string()) {
        const std::string s = g.get<std::string>();
        if (s == "centered_2pulse")
            c.gauge_constant = resolve_gauge(c.pulses, GaugeMode::centered_2pulse);
        else if (s == "vanish_at_minus_infinity")
            c.gauge_constant = resolve_gauge(c.pulses, GaugeMode::vanish_at_minus_infinity);
        else
            throw std::invalid_argument("unknown gauge_constant keyword: " + s);
    } else {
        c.gauge_constant = g.get<double>();
    }
    c.validate();
    return c;
}

std::string config_to_json_text(const FieldConfig& config) {
    nlohmann::json j;
    j["label"] = config.label;
    j["gauge_constant"] = config.gauge_constant;
    j["pulses"] = nlohmann::json::array();
    for (const auto& p : config.pulses) {
        j["pulses"].push_back({{"amplitude", p.amplitude},
                               {"inverse_width", p.inverse_width},
                               {"center", p.center},
                               {"sign", p.sign}});
    }
    return j.dump(2) + "\n";
}

FieldConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return config_from_json_text(ss.str());
}

void save_config(const FieldConfig& config, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write config file: " + path);
    out << config_to_json_text(config);
}

}  // namespace pairprod
