#ifndef PAIRPROD_FIELDS_HPP
#define PAIRPROD_FIELDS_HPP

#include <complex>
#include <string>
#include <vector>

#include "pairprod/errors.hpp"

namespace pairprod {

// Natural units: hbar = c = 1, and the boson charge and mass are fixed to 1.
inline constexpr double kCharge = 1.0;
inline constexpr double kMass = 1.0;

// One signed Sauter pulse: sign * amplitude * sech^2[inverse_width (t - center)].
struct PulseSpec {
    double amplitude = 0.0;      // field strength, units of m^2
    double inverse_width = 0.0;  // frequency, units of m
    double center = 0.0;         // time, units of 1/m
    int sign = +1;               // +1 or -1
};

struct MomentumPoint {
    double k_parallel = 0.0;
    double k_perp = 0.0;  // >= 0
};

// A signed sum of Sauter pulses. E(t) = sum_i s_i E_i sech^2[w_i (t - c_i)],
// A(t) = gauge_constant - sum_i s_i (E_i/w_i) tanh[w_i (t - c_i)].
//
// Complex-time evaluation is meromorphic; poles sit at c_i + i pi(2p+1)/(2 w_i).
// Callers staying within |Im t| < pi/(2 max w_i) never meet one; evaluation
// closer than kPoleExclusionRadius to a pole throws PoleError.
struct FieldConfig {
    std::vector<PulseSpec> pulses;
    double gauge_constant = 0.0;
    std::string label;

    void validate() const;  // throws std::invalid_argument
    double max_amplitude() const;
    double min_inverse_width() const;
    double max_inverse_width() const;
    double earliest_center() const;
    double latest_center() const;
};

inline constexpr double kPoleExclusionRadius = 1e-3;  // in units of 1/m

double e_field(const FieldConfig& config, double t);
double a_potential(const FieldConfig& config, double t);
std::complex<double> e_field(const FieldConfig& config, std::complex<double> t);
std::complex<double> a_potential(const FieldConfig& config, std::complex<double> t);

std::complex<double> omega_squared(const FieldConfig& config, const MomentumPoint& k,
                                   std::complex<double> t);
double omega_squared_real(const FieldConfig& config, const MomentumPoint& k, double t);
double omega_real(const FieldConfig& config, const MomentumPoint& k, double t);

enum class GaugeMode {
    vanish_at_minus_infinity,  // A(-inf) = 0 (default)
    centered_2pulse,              // A(-inf) = E0/w0, the gauge of the published A(t)
};

double resolve_gauge(const std::vector<PulseSpec>& pulses, GaugeMode mode);

enum class SignMode { equal, alternating };

FieldConfig make_equal_sign_assist(double E1, double w1, double E2, double w2, double T,
                                   GaugeMode gauge = GaugeMode::vanish_at_minus_infinity);
FieldConfig make_alternating_assist(double E1, double w1, double E2, double w2, double T,
                                    GaugeMode gauge = GaugeMode::vanish_at_minus_infinity);
// N pulses, centers t_ci = -(i - (N+1)/2) T, signs (+-1)^i.
FieldConfig make_pulse_train(int N, SignMode signs, double E0, double w0, double T,
                             GaugeMode gauge = GaugeMode::vanish_at_minus_infinity);
FieldConfig make_single_sauter(double E0, double w0, double center = 0.0, int sign = +1,
                               double gauge_constant = 0.0);

// JSON schema:
// {"label": str, "gauge_constant": num | "centered_2pulse" | "vanish_at_minus_infinity",
//  "pulses": [{"amplitude": num, "inverse_width": num, "center": num, "sign": +-1}]}
FieldConfig config_from_json_text(const std::string& text);
std::string config_to_json_text(const FieldConfig& config);
FieldConfig load_config(const std::string& path);
void save_config(const FieldConfig& config, const std::string& path);

}  // namespace pairprod

#endif
