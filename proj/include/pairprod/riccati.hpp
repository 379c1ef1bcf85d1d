#ifndef PAIRPROD_RICCATI_HPP
#define PAIRPROD_RICCATI_HPP

#include <complex>
#include <vector>

#include "pairprod/fields.hpp"
#include "pairprod/spectrum_table.hpp"

namespace pairprod {

// Fraction of the peak amplitude below which the field must have decayed at
// the window edges, so the in/out vacuum condition is meaningful.
inline constexpr double kAsymptoticFieldCutoff = 1e-10;

struct SolverSettings {
    double t_start = -100.0;
    double t_end = 100.0;
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = 10.0;

    // Window (outermost center) -/+ 12/w_slowest, widened until the
    // asymptotic-vacuum cutoff holds at both edges.
    static SolverSettings for_config(const FieldConfig& config);
    void validate(const FieldConfig& config) const;  // std::invalid_argument
};

struct ModeState {
    std::complex<double> R;
    double Theta = 0.0;
    double t = 0.0;
};

struct ReflectionResult {
    std::complex<double> R_final;
    double f = 0.0;  // |R|^2 / (1 - |R|^2)
    long n_steps = 0;
    double max_abs_R = 0.0;
    SolverSettings settings_echo;
};

// Integrates dR/dt = (Wdot/2W)... i.e. the reflection-amplitude equation
//   dR/dt = (Omega'/2Omega) [e^{-2i Theta} - R^2 e^{2i Theta}],  dTheta/dt = Omega
// from R(t_start) = 0, Theta(t_start) = 0.
ReflectionResult solve_mode(const FieldConfig& config, const MomentumPoint& k,
                            const SolverSettings& s);

// First-order (Born) reflection integral: int (Omega'/2Omega) e^{-2i Theta} dt.
std::complex<double> born_reflection(const FieldConfig& config, const MomentumPoint& k,
                                     const SolverSettings& s);

// Per-point f over a momentum grid. `spectrum` fans points out over OpenMP
// workers; `spectrum_serial` is the plain-loop reference path. Output order
// matches input order either way.
SpectrumTable spectrum(const FieldConfig& config, const std::vector<MomentumPoint>& grid,
                       const SolverSettings& s, const std::string& method = "riccati");
SpectrumTable spectrum_serial(const FieldConfig& config,
                              const std::vector<MomentumPoint>& grid,
                              const SolverSettings& s,
                              const std::string& method = "riccati");

std::vector<MomentumPoint> uniform_kpar_grid(double k_min, double k_max, int n_points,
                                             double k_perp = 0.0);

struct QuadratureSettings {
    double kpar_min = -6.0;
    double kpar_max = 6.0;
    int n_kpar = 64;  // Simpson intervals, multiple of 4
    double kperp_max = 3.0;
    int n_kperp = 32;  // Simpson intervals, multiple of 4
    double tail_epsilon = 1e-4;

    void validate() const;
    // kpar range from the potential's reach, kperp from the weakest
    // exponential suppression scale among the pulses.
    static QuadratureSettings auto_for(const FieldConfig& config, const SolverSettings& s);
};

struct DensityResult {
    double n = 0.0;
    double error_estimate = 0.0;  // |full - half resolution|
    QuadratureSettings grid;
};

// n = (2 pi)^-3 int dk_par int 2 pi k_perp dk_perp f(k_par, k_perp).
DensityResult number_density(const FieldConfig& config, const QuadratureSettings& quad,
                             const SolverSettings& s);

}  // namespace pairprod

#endif
