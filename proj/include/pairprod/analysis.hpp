#ifndef PAIRPROD_ANALYSIS_HPP
#define PAIRPROD_ANALYSIS_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "pairprod/fields.hpp"
#include "pairprod/riccati.hpp"
#include "pairprod/spectrum_table.hpp"

namespace pairprod {

// Peaks below this fraction of the in-window maximum are treated as solver
// ripple, not structure.
inline constexpr double kPeakNoiseFloor = 1e-3;

struct EnvelopeReport {
    double k_min = 0.0;
    double k_max = 0.0;
    double envelope_max = 0.0;   // top of the local-maxima upper hull
    double reference_max = 0.0;  // plain in-window maximum of the reference
    double ratio = 0.0;
    int n_local_maxima = 0;  // in the oscillating table
};

// Strict local maxima of f over k_parallel within [k_min, k_max], above the
// noise floor relative to the in-window maximum. Rows must be k-sorted.
int count_local_maxima(const SpectrumTable& table, double k_min, double k_max);
std::vector<std::size_t> local_maxima_indices(const SpectrumTable& table, double k_min,
                                              double k_max);
std::vector<std::size_t> local_minima_indices(const SpectrumTable& table, double k_min,
                                              double k_max);

// Envelope of the oscillating spectrum (upper hull of its strict local maxima)
// against the in-window maximum of a smooth reference. Throws
// InsufficientOscillationError when the window holds fewer than 3 maxima.
EnvelopeReport envelope_ratio(const SpectrumTable& oscillating,
                              const SpectrumTable& reference, double k_min, double k_max);

// Declarative sweep over a field-family parameter.
//
// JSON schema:
// {
//   "template": "assist" | "pulse_train",
//   "signs": "equal" | "alternating",
//   "params": { ... numeric constructor params ... },
//   "gauge": "vanish_at_minus_infinity" | "centered_2pulse" (optional),
//   "variable": "T" | "N",
//   "values": [ ... strictly increasing ... ],
//   "observable": "spectrum" | "density" | "f_at_k0",
//   "k": {"k_parallel": 0, "k_perp": 0},                     (f_at_k0)
//   "grid": {"kpar_min", "kpar_max", "n", "kperp"},          (spectrum)
//   "quad": {"kpar_min", "kpar_max", "n_kpar",
//            "kperp_max", "n_kperp"}                          (density, optional)
// }
//
// "assist" params: E1, w1, E2, w2 (two-color superposition, variable T);
// "pulse_train" params: E0, w0 and the fixed one of {T, N}.
struct SweepSpec {
    std::string template_name;  // "assist" | "pulse_train"
    std::string signs = "alternating";
    std::map<std::string, double> params;
    std::string gauge = "vanish_at_minus_infinity";
    std::string variable;  // "T" | "N"
    std::vector<double> values;
    std::string observable;  // "spectrum" | "density" | "f_at_k0"
    MomentumPoint k;
    double grid_kpar_min = -1.0, grid_kpar_max = 1.0;
    int grid_n = 401;
    double grid_kperp = 0.0;
    bool has_quad = false;
    QuadratureSettings quad;

    void validate() const;  // std::invalid_argument
    FieldConfig instantiate(double value) const;

    static SweepSpec from_json_text(const std::string& text);
    static SweepSpec load(const std::string& path);
    std::string to_json_text() const;
};

struct SweepRow {
    double value = 0.0;  // the swept T or N
    bool ok = false;
    std::string error;
    double observable = 0.0;        // n, f(k), or in-window max f for "spectrum"
    SpectrumTable spectrum;         // filled for observable "spectrum"
    double density_error_estimate = 0.0;
};

struct SweepResult {
    SweepSpec spec;
    std::vector<SweepRow> rows;
    // For the assist/density case: the single-pulse references n(E1), n(E2).
    bool has_references = false;
    double n_ref_1 = 0.0;
    double n_ref_2 = 0.0;
    double n_ref_sum = 0.0;
};

// One row per spec value, in input order; per-row failures are recorded on the
// row and the sweep continues. Tolerances are taken from `tol` while the time
// window is re-derived per row (the field support moves with T and N).
SweepResult sweep_delay(const SweepSpec& spec, const SolverSettings& tol);

// CSV: "value,observable,error_estimate,status[,n_ref_1,n_ref_2,n_ref_sum]".
void write_sweep_csv(const SweepResult& result, std::ostream& out);
void write_sweep_csv(const SweepResult& result, const std::string& path);

}  // namespace pairprod

#endif
