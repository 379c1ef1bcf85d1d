#include "pairprod/riccati.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pairprod/ode.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pairprod {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Omega'/2Omega = q E (k_par - q A) / (2 Omega^2), pole-free on the real axis.
struct ModeRhs {
    const FieldConfig& config;
    MomentumPoint k;

    void operator()(double t, const std::array<double, 3>& y,
                    std::array<double, 3>& dy) const {
        const double a = a_potential(config, t);
        const double e = e_field(config, t);
        const double kin = k.k_parallel - kCharge * a;
        const double om2 = kMass * kMass + k.k_perp * k.k_perp + kin * kin;
        const double w = kCharge * e * kin / om2;  // Omega'/Omega
        const std::complex<double> R(y[0], y[1]);
        const std::complex<double> ph = std::polar(1.0, -2.0 * y[2]);
        const std::complex<double> dR = 0.5 * w * (ph - R * R * std::conj(ph));
        dy[0] = dR.real();
        dy[1] = dR.imag();
        dy[2] = std::sqrt(om2);
    }
};

}  // namespace

SolverSettings SolverSettings::for_config(const FieldConfig& config) {
    SolverSettings s;
    if (config.pulses.empty()) {
        s.t_start = -100.0;
        s.t_end = 100.0;
        return s;
    }
    const double w_slow = config.min_inverse_width();
    s.t_start = config.earliest_center() - 12.0 / w_slow;
    s.t_end = config.latest_center() + 12.0 / w_slow;
    const double cutoff = kAsymptoticFieldCutoff * config.max_amplitude();
    for (int i = 0; i < 400 && std::abs(e_field(config, s.t_start)) > cutoff; ++i)
        s.t_start -= 1.0 / w_slow;
    for (int i = 0; i < 400 && std::abs(e_field(config, s.t_end)) > cutoff; ++i)
        s.t_end += 1.0 / w_slow;
    return s;
}

void SolverSettings::validate(const FieldConfig& config) const {
    if (!(t_start < t_end))
        throw std::invalid_argument("solver window requires t_start < t_end");
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || !(max_step > 0.0))
        throw std::invalid_argument("solver tolerances and max_step must be > 0");
    const double cutoff = kAsymptoticFieldCutoff * config.max_amplitude();
    if (std::abs(e_field(config, t_start)) > cutoff ||
        std::abs(e_field(config, t_end)) > cutoff) {
        std::ostringstream msg;
        msg << "asymptotic-vacuum condition violated: |E| at window edges ("
            << std::abs(e_field(config, t_start)) << ", "
            << std::abs(e_field(config, t_end)) << ") exceeds cutoff " << cutoff;
        throw std::invalid_argument(msg.str());
    }
}

ReflectionResult solve_mode(const FieldConfig& config, const MomentumPoint& k,
                            const SolverSettings& s) {
    config.validate();
    s.validate(config);
    if (k.k_perp < 0.0) throw std::invalid_argument("k_perp must be >= 0");

    ModeRhs rhs{config, k};
    OdeOptions opt{s.rel_tol, s.abs_tol, s.max_step};
    OdeStats stats;
    double max_abs_R = 0.0;
    auto monitor = [&](double t, const std::array<double, 3>& y) {
        const double r2 = y[0] * y[0] + y[1] * y[1];
        max_abs_R = std::max(max_abs_R, std::sqrt(r2));
        if (r2 >= 1.0)
            throw SupercriticalError("|R| reached 1: subcritical scattering model invalid",
                                     t, std::sqrt(r2));
    };
    const auto y = integrate_dopri5<3>(rhs, {0.0, 0.0, 0.0}, s.t_start, s.t_end, opt,
                                       &stats, monitor);

    ReflectionResult res;
    res.R_final = {y[0], y[1]};
    const double r2 = std::norm(res.R_final);
    if (r2 >= 1.0)
        throw SupercriticalError("|R| reached 1 at output", s.t_end, std::sqrt(r2));
    res.f = r2 / (1.0 - r2);
    res.n_steps = stats.n_accepted;
    res.max_abs_R = max_abs_R;
    res.settings_echo = s;
    return res;
}

std::complex<double> born_reflection(const FieldConfig& config, const MomentumPoint& k,
                                     const SolverSettings& s) {
    config.validate();
    s.validate(config);

    auto rhs = [&](double t, const std::array<double, 3>& y, std::array<double, 3>& dy) {
        const double a = a_potential(config, t);
        const double e = e_field(config, t);
        const double kin = k.k_parallel - kCharge * a;
        const double om2 = kMass * kMass + k.k_perp * k.k_perp + kin * kin;
        const double w = kCharge * e * kin / om2;
        const std::complex<double> dB = 0.5 * w * std::polar(1.0, -2.0 * y[2]);
        dy[0] = dB.real();
        dy[1] = dB.imag();
        dy[2] = std::sqrt(om2);
    };
    OdeOptions opt{s.rel_tol, s.abs_tol, s.max_step};
    const auto y = integrate_dopri5<3>(rhs, {0.0, 0.0, 0.0}, s.t_start, s.t_end, opt);
    return {y[0], y[1]};
}

namespace {

template <class PerPoint>
SpectrumTable scan_grid_parallel(const std::vector<MomentumPoint>& grid,
                                 const std::string& method, PerPoint&& per_point) {
    if (grid.empty()) throw std::invalid_argument("momentum grid is empty");
    SpectrumTable table;
    table.rows.resize(grid.size());
    bool failed = false;
    std::string first_error;
    double err_kpar = 0.0, err_kperp = 0.0;

#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(grid.size()); ++i) {
        try {
            const double f = per_point(grid[i]);
            table.rows[i] = {grid[i].k_parallel, grid[i].k_perp, f, method};
        } catch (const std::exception& e) {
#pragma omp critical
            if (!failed) {
                failed = true;
                first_error = e.what();
                err_kpar = grid[i].k_parallel;
                err_kperp = grid[i].k_perp;
            }
        }
    }
    if (failed) {
        std::ostringstream msg;
        msg << "spectrum failed at k=(" << err_kpar << ", " << err_kperp
            << "): " << first_error;
        throw SpectrumPointError(msg.str(), err_kpar, err_kperp);
    }
    return table;
}

}  // namespace

SpectrumTable spectrum(const FieldConfig& config, const std::vector<MomentumPoint>& grid,
                       const SolverSettings& s, const std::string& method) {
    return scan_grid_parallel(grid, method,
                              [&](const MomentumPoint& k) { return solve_mode(config, k, s).f; });
}

SpectrumTable spectrum_serial(const FieldConfig& config,
                              const std::vector<MomentumPoint>& grid,
                              const SolverSettings& s, const std::string& method) {
    if (grid.empty()) throw std::invalid_argument("momentum grid is empty");
    SpectrumTable table;
    table.rows.reserve(grid.size());
    for (const auto& k : grid) {
        try {
            table.rows.push_back({k.k_parallel, k.k_perp, solve_mode(config, k, s).f, method});
        } catch (const DomainError& e) {
            throw SpectrumPointError(std::string("spectrum failed: ") + e.what(),
                                     k.k_parallel, k.k_perp);
        }
    }
    return table;
}

std::vector<MomentumPoint> uniform_kpar_grid(double k_min, double k_max, int n_points,
                                             double k_perp) {
    if (n_points < 1) throw std::invalid_argument("grid needs at least one point");
    std::vector<MomentumPoint> grid;
    grid.reserve(n_points);
    if (n_points == 1) {
        grid.push_back({k_min, k_perp});
        return grid;
    }
    const double h = (k_max - k_min) / (n_points - 1);
    for (int i = 0; i < n_points; ++i) grid.push_back({k_min + i * h, k_perp});
    return grid;
}

void QuadratureSettings::validate() const {
    if (!(kpar_min < kpar_max)) throw std::invalid_argument("kpar_min must be < kpar_max");
    if (!(kperp_max > 0.0)) throw std::invalid_argument("kperp_max must be > 0");
    if (n_kpar < 4 || n_kpar % 4 != 0 || n_kperp < 4 || n_kperp % 4 != 0)
        throw std::invalid_argument(
            "quadrature interval counts must be multiples of 4 (for the half-resolution "
            "error estimate)");
    if (!(tail_epsilon > 0.0)) throw std::invalid_argument("tail_epsilon must be > 0");
}

QuadratureSettings QuadratureSettings::auto_for(const FieldConfig& config,
                                                const SolverSettings& s) {
    QuadratureSettings q;
    // The spectrum lives near k = qA(t_creation); bracket the full reach of qA.
    double a_min = a_potential(config, s.t_start), a_max = a_min;
    const int n_samples = 2048;
    for (int i = 1; i <= n_samples; ++i) {
        const double t = s.t_start + (s.t_end - s.t_start) * i / n_samples;
        const double a = a_potential(config, t);
        a_min = std::min(a_min, a);
        a_max = std::max(a_max, a);
    }
    const double margin = 4.0;
    q.kpar_min = kCharge * a_min - margin;
    q.kpar_max = kCharge * a_max + margin;
    const double span = q.kpar_max - q.kpar_min;
    q.n_kpar = std::max(64, 4 * static_cast<int>(std::ceil(span / 0.25 / 4.0)));
    // Transverse reach mixes two regimes. Tunneling (gamma = w/E < 1):
    // f ~ exp(-pi eps_perp^2 / E). Multiphoton (gamma > 1): f decays in energy
    // like exp(-2 eps (ln 2 gamma - 1) / w) along resonance rings, so the
    // cutoff grows linearly with the pulse frequency.
    const double e_peak = std::max(1e-6, config.max_amplitude());
    double kperp_max = std::max(1.0, 2.5 * std::sqrt(e_peak * std::log(1e6) / kPi));
    for (const auto& p : config.pulses) {
        const double gamma = p.inverse_width / std::max(1e-12, p.amplitude);
        if (gamma > 1.0) {
            const double d_eps =
                6.9 * p.inverse_width / std::max(1.0, std::log(2.0 * gamma) - 1.0);
            const double eps = 1.0 + d_eps;
            kperp_max = std::max(kperp_max, std::sqrt(eps * eps - 1.0));
        }
    }
    q.kperp_max = kperp_max;
    q.n_kperp = 32;
    return q;
}

DensityResult number_density(const FieldConfig& config, const QuadratureSettings& quad,
                             const SolverSettings& s) {
    quad.validate();
    config.validate();
    s.validate(config);

    const int np = quad.n_kpar, nq = quad.n_kperp;
    const double hp = (quad.kpar_max - quad.kpar_min) / np;
    const double hq = quad.kperp_max / nq;

    std::vector<double> f((np + 1) * (nq + 1));
    bool failed = false;
    std::string first_error;

#pragma omp parallel for schedule(dynamic) collapse(2)
    for (int i = 0; i <= np; ++i) {
        for (int j = 0; j <= nq; ++j) {
            try {
                MomentumPoint k{quad.kpar_min + i * hp, j * hq};
                f[i * (nq + 1) + j] = solve_mode(config, k, s).f;
            } catch (const std::exception& e) {
#pragma omp critical
                if (!failed) {
                    failed = true;
                    first_error = e.what();
                }
            }
        }
    }
    if (failed) throw DomainError("number_density mode solve failed: " + first_error);

    double peak = 0.0;
    for (double v : f) peak = std::max(peak, v);
    double boundary = 0.0;
    for (int j = 0; j <= nq; ++j) {
        boundary = std::max(boundary, f[0 * (nq + 1) + j]);
        boundary = std::max(boundary, f[np * (nq + 1) + j]);
    }
    for (int i = 0; i <= np; ++i) boundary = std::max(boundary, f[i * (nq + 1) + nq]);
    if (peak > 0.0 && boundary > quad.tail_epsilon * peak) {
        std::ostringstream msg;
        msg << "quadrature domain too small: boundary f = " << boundary << " vs peak f = "
            << peak << " (tail_epsilon = " << quad.tail_epsilon << ")";
        throw TailCoverageError(msg.str(), boundary, peak);
    }

    auto simpson_w = [](int idx, int n) { return idx == 0 || idx == n ? 1.0 : (idx % 2 ? 4.0 : 2.0); };
    auto integrate = [&](int stride) {
        const double hp_s = hp * stride, hq_s = hq * stride;
        double total = 0.0;
        for (int i = 0; i <= np; i += stride) {
            const double wi = simpson_w(i / stride, np / stride);
            double inner = 0.0;
            for (int j = 0; j <= nq; j += stride) {
                const double wj = simpson_w(j / stride, nq / stride);
                const double kperp = j * hq;
                inner += wj * kperp * f[i * (nq + 1) + j];
            }
            total += wi * inner * hq_s / 3.0;
        }
        total *= hp_s / 3.0;
        // (2 pi)^-3 * 2 pi (azimuthal symmetry) = 1/(4 pi^2)
        return total / (4.0 * kPi * kPi);
    };

    DensityResult res;
    res.n = integrate(1);
    res.error_estimate = std::abs(res.n - integrate(2));
    res.grid = quad;
    return res;
}

}  // namespace pairprod
