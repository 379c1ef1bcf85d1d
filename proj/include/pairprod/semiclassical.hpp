#ifndef PAIRPROD_SEMICLASSICAL_HPP
#define PAIRPROD_SEMICLASSICAL_HPP

#include <complex>
#include <utility>
#include <vector>

#include "pairprod/fields.hpp"
#include "pairprod/riccati.hpp"

namespace pairprod {

// Complex zero of Omega^2 in the upper half plane (the conjugate partner is
// implicit). residual is |Omega^2| re-evaluated at t.
struct TurningPoint {
    std::complex<double> t;
    double residual = 0.0;
    int sheet_index = 0;
};

inline constexpr double kTurningPointResidualBound = 1e-8;

struct PairIntegrals {
    double vartheta = 0.0;  // singulant, > 0
    double re_t = 0.0;      // for phase ordering
};

struct SearchRegion {
    double re_min, re_max;
    double im_min, im_max;

    static SearchRegion default_for(const FieldConfig& config);
};

// Closed form for the alternating 2-pulse field in the centered gauge
// (A(-inf) = E0/w0), principal branches, p = 0 sheet. Returns (t_minus, t_plus)
// ordered by real part, both with Im t > 0.
std::pair<TurningPoint, TurningPoint> exact_turning_points_2pulse(
    double E0, double w0, double T, const MomentumPoint& k);

// Newton iterations on Omega^2 from a seed grid over `region`; de-duplicated,
// certified (residual < 1e-8), upper-half only, sorted by Re t.
std::vector<TurningPoint> find_turning_points(const FieldConfig& config,
                                              const MomentumPoint& k,
                                              const SearchRegion& region,
                                              int n_re_seeds = 40, int n_im_seeds = 20);

// vartheta = |int_{conj(tp)}^{tp} Omega dt| along the straight (vertical)
// segment, square-root branch tracked by continuity from the principal value
// at the real-axis crossing.
double singulant(const FieldConfig& config, const MomentumPoint& k, const TurningPoint& tp);

// theta = int_{Re(tp_a)}^{Re(tp_b)} Omega dt on the real axis; antisymmetric
// under swapping the arguments.
double phase_between(const FieldConfig& config, const MomentumPoint& k,
                     const TurningPoint& tp_a, const TurningPoint& tp_b);

struct ApproxDiagnostics {
    double vartheta_mean = 0.0;
    double vartheta_max_dev = 0.0;
    double theta_mean = 0.0;    // mean adjacent-pair phase (N-pulse path)
    double theta_max_dev = 0.0; // spread of adjacent phases, the model error knob
    bool clamped_negative = false;
};

// Interference sum over all turning-point pairs:
//   f = sum_P e^{-2 vt_P} + sum_{P<P'} 2 cos(2 theta_PP') e^{-vt_P - vt_P'}
// Small negative truncation results are clamped to 0 (flagged in diagnostics).
double approx_spectrum_general(const FieldConfig& config, const MomentumPoint& k,
                               const std::vector<TurningPoint>& tps,
                               ApproxDiagnostics* diag = nullptr);

// 4 cos^2(theta) e^{-2 vartheta} from the exact 2-pulse turning points.
double approx_spectrum_2pulse(const FieldConfig& config, const MomentumPoint& k);

// sin^2(N theta)/sin^2(theta) e^{-2 vartheta}; the removable singularity at
// sin(theta) -> 0 is evaluated as N^2 e^{-2 vartheta}.
double approx_spectrum_npulse(const FieldConfig& config, const MomentumPoint& k, int N,
                              ApproxDiagnostics* diag = nullptr);

}  // namespace pairprod

#endif
