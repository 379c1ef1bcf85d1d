#include "pairprod/semiclassical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "pairprod/quadrature.hpp"

namespace pairprod {

namespace {

constexpr double kPi = 3.14159265358979323846;

int sheet_of(std::complex<double> t, double w_ref) {
    return static_cast<int>(std::floor(t.imag() * w_ref / kPi));
}

// Alternating 2-pulse in the centered gauge, used for residual certification of
// the closed-form points.
FieldConfig centered_2pulse_config(double E0, double w0, double T) {
    FieldConfig c;
    c.pulses = {{E0, w0, -T / 2.0, +1}, {E0, w0, +T / 2.0, -1}};
    c.gauge_constant = E0 / w0;
    c.label = "pulse_train_alternating";
    return c;
}

}  // namespace

SearchRegion SearchRegion::default_for(const FieldConfig& config) {
    const auto s = SolverSettings::for_config(config);
    SearchRegion r;
    r.re_min = s.t_start;
    r.re_max = s.t_end;
    r.im_min = 0.0;
    // Stay below the lowest pole row at pi/(2 w_max): roots above it live on
    // secondary sheets and their vertical singulant contour would cross a pole.
    r.im_max = 0.5 * kPi / config.max_inverse_width() * (1.0 - 1e-3);
    return r;
}

std::pair<TurningPoint, TurningPoint> exact_turning_points_2pulse(
    double E0, double w0, double T, const MomentumPoint& k) {
    if (!(E0 > 0.0) || !(w0 > 0.0))
        throw std::invalid_argument("exact_turning_points_2pulse needs E0, w0 > 0");
    const FieldConfig cfg = centered_2pulse_config(E0, w0, T);
    const double eps_perp = std::sqrt(kMass * kMass + k.k_perp * k.k_perp);
    const double th = std::tanh(w0 * T / 2.0);

    auto solve_one = [&](int branch) {  // branch = +1 for t_plus, -1 for t_minus
        const std::complex<double> kappa(k.k_parallel, branch * eps_perp);
        const std::complex<double> num = w0 * kappa - E0 + 2.0 * E0 * th;
        const std::complex<double> den = (w0 * kappa - E0) * th * th + 2.0 * E0 * th;
        const std::complex<double> x2 = num / den;
        const std::complex<double> x = std::sqrt(x2);
        // atanh principal branch is cut on the real axis for |x| >= 1
        if (x.imag() == 0.0 && std::abs(x.real()) >= 1.0) {
            std::ostringstream msg;
            msg << "arctanh argument on the branch cut: x = " << x.real();
            throw BranchError(msg.str());
        }
        std::complex<double> t = static_cast<double>(branch) * std::atanh(x) / w0;
        if (t.imag() < 0.0) t = std::conj(t);  // upper-half representative
        TurningPoint tp;
        tp.t = t;
        tp.residual = std::abs(omega_squared(cfg, k, t));
        tp.sheet_index = 0;
        return tp;
    };

    TurningPoint plus = solve_one(+1);
    TurningPoint minus = solve_one(-1);
    if (minus.t.real() > plus.t.real()) std::swap(minus, plus);
    return {minus, plus};
}

std::vector<TurningPoint> find_turning_points(const FieldConfig& config,
                                              const MomentumPoint& k,
                                              const SearchRegion& region,
                                              int n_re_seeds, int n_im_seeds) {
    config.validate();
    if (config.pulses.empty())
        throw NoTurningPointError("zero field has no turning points");
    if (!(region.re_min < region.re_max) || !(region.im_min < region.im_max))
        throw std::invalid_argument("invalid turning-point search region");

    const double re_span = region.re_max - region.re_min;
    const double im_span = region.im_max - region.im_min;
    const double w_ref = config.max_inverse_width();

    std::vector<std::complex<double>> roots;
    for (int ir = 0; ir < n_re_seeds; ++ir) {
        for (int ii = 0; ii < n_im_seeds; ++ii) {
            std::complex<double> t(region.re_min + re_span * (ir + 0.5) / n_re_seeds,
                                   region.im_min + im_span * (ii + 0.5) / n_im_seeds);
            bool converged = false;
            try {
                for (int iter = 0; iter < 80; ++iter) {
                    const std::complex<double> a = a_potential(config, t);
                    const std::complex<double> kin = k.k_parallel - kCharge * a;
                    const std::complex<double> f =
                        kMass * kMass + k.k_perp * k.k_perp + kin * kin;
                    const std::complex<double> df =
                        2.0 * kin * kCharge * e_field(config, t);
                    if (std::abs(df) < 1e-300) break;
                    const std::complex<double> dt = f / df;
                    t -= dt;
                    // discard wanderers
                    if (t.real() < region.re_min - 0.2 * re_span ||
                        t.real() > region.re_max + 0.2 * re_span ||
                        std::abs(t.imag()) > region.im_max + 0.5 * im_span)
                        break;
                    if (std::abs(dt) < 1e-11 && std::abs(f) < 1e-10) {
                        converged = true;
                        break;
                    }
                }
            } catch (const PoleError&) {
                continue;  // seed fell into a pole disk
            }
            if (!converged) continue;
            if (t.imag() < 0.0) t = std::conj(t);
            if (t.imag() <= region.im_min || t.imag() > region.im_max) continue;
            if (t.real() < region.re_min || t.real() > region.re_max) continue;
            bool dup = false;
            for (const auto& r : roots)
                if (std::abs(r - t) < 1e-6) { dup = true; break; }
            if (!dup) roots.push_back(t);
        }
    }

    std::vector<TurningPoint> tps;
    for (const auto& t : roots) {
        const double res = std::abs(omega_squared(config, k, t));
        if (res < kTurningPointResidualBound)
            tps.push_back({t, res, sheet_of(t, w_ref)});
    }
    std::sort(tps.begin(), tps.end(),
              [](const TurningPoint& a, const TurningPoint& b) { return a.t.real() < b.t.real(); });
    if (tps.empty())
        throw NoTurningPointError("no turning points found in search region");
    return tps;
}

double singulant(const FieldConfig& config, const MomentumPoint& k, const TurningPoint& tp) {
    if (!(tp.t.imag() > 0.0))
        throw std::invalid_argument("turning point must lie in the upper half plane");
    const double re = tp.t.real();
    const double im = tp.t.imag();

    // Substitution s = sin(v) absorbs the sqrt endpoint zeros; nodes are swept
    // in order from the real-axis crossing outward so the branch stays glued.
    auto evaluate = [&](std::size_t m) {  // m intervals (even), Simpson in v
        const double h = kPi / m;
        std::vector<std::complex<double>> g(m + 1);
        const std::size_t mid = m / 2;
        auto omega_at = [&](double v) {
            const std::complex<double> t(re, im * std::sin(v));
            return std::sqrt(omega_squared(config, k, t));
        };
        g[mid] = omega_at(0.0);
        std::complex<double> prev = g[mid];
        for (std::size_t j = mid + 1; j <= m; ++j) {
            std::complex<double> w = omega_at(-kPi / 2.0 + j * h);
            if ((w * std::conj(prev)).real() < 0.0) w = -w;
            if ((w * std::conj(prev)).real() < 0.0 && std::abs(prev) > 1e-6)
                throw BranchError("square-root branch discontinuity along singulant contour");
            prev = g[j] = w;
        }
        prev = g[mid];
        for (std::size_t j = mid; j-- > 0;) {
            std::complex<double> w = omega_at(-kPi / 2.0 + j * h);
            if ((w * std::conj(prev)).real() < 0.0) w = -w;
            prev = g[j] = w;
        }
        // dt = i * im * cos(v) dv
        std::complex<double> acc = g[0] * std::cos(-kPi / 2.0) + g[m] * std::cos(kPi / 2.0);
        for (std::size_t j = 1; j < m; ++j)
            acc += (j % 2 ? 4.0 : 2.0) * g[j] * std::cos(-kPi / 2.0 + j * h);
        return acc * (h / 3.0) * std::complex<double>(0.0, im);
    };

    std::complex<double> prev = evaluate(64);
    for (std::size_t m = 128; m <= (1u << 18); m *= 2) {
        const std::complex<double> cur = evaluate(m);
        if (std::abs(cur - prev) <= 1e-11 * (std::abs(cur) + 1e-300))
            return std::abs(cur);
        prev = cur;
    }
    return std::abs(prev);
}

double phase_between(const FieldConfig& config, const MomentumPoint& k,
                     const TurningPoint& tp_a, const TurningPoint& tp_b) {
    const double ra = tp_a.t.real();
    const double rb = tp_b.t.real();
    if (ra == rb) return 0.0;
    const double lo = std::min(ra, rb), hi = std::max(ra, rb);
    const double val = integrate_simpson(
        [&](double t) { return omega_real(config, k, t); }, lo, hi, 1e-12);
    return (rb > ra) ? val : -val;
}

double approx_spectrum_general(const FieldConfig& config, const MomentumPoint& k,
                               const std::vector<TurningPoint>& tps,
                               ApproxDiagnostics* diag) {
    if (tps.empty())
        throw std::invalid_argument("approx_spectrum_general needs at least one turning point");
    const std::size_t n = tps.size();
    std::vector<double> vt(n);
    for (std::size_t i = 0; i < n; ++i) vt[i] = singulant(config, k, tps[i]);

    double f = 0.0;
    for (std::size_t i = 0; i < n; ++i) f += std::exp(-2.0 * vt[i]);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double theta = phase_between(config, k, tps[i], tps[j]);
            f += 2.0 * std::cos(2.0 * theta) * std::exp(-vt[i] - vt[j]);
        }
    }

    bool clamped = false;
    if (f < 0.0) {
        clamped = true;
        f = 0.0;
    }
    if (diag) {
        const double mean = std::accumulate(vt.begin(), vt.end(), 0.0) / n;
        double dev = 0.0;
        for (double v : vt) dev = std::max(dev, std::abs(v - mean));
        diag->vartheta_mean = mean;
        diag->vartheta_max_dev = dev;
        diag->clamped_negative = clamped;
    }
    return f;
}

namespace {

// Recognize an alternating 2-pulse train and recover (E0, w0, T, gauge shift).
struct TwoPulseParams {
    double E0, w0, T;
    double k_shift;  // config gauge constant minus the centered-gauge E0/w0
};

TwoPulseParams match_alternating_2pulse(const FieldConfig& config) {
    if (config.pulses.size() != 2)
        throw std::invalid_argument("config is not a 2-pulse field");
    const auto& a = config.pulses[0];
    const auto& b = config.pulses[1];
    if (a.sign * b.sign != -1)
        throw std::invalid_argument("config is not an alternating 2-pulse field");
    if (a.amplitude != b.amplitude || a.inverse_width != b.inverse_width)
        throw std::invalid_argument("2-pulse closed form needs equal amplitudes and widths");
    if (std::abs(a.center + b.center) > 1e-12)
        throw std::invalid_argument("2-pulse closed form needs centers at -T/2, +T/2");
    // Canonical layout: "+" pulse at -T/2, "-" pulse at +T/2.
    const auto& early = (a.center < b.center) ? a : b;
    if (early.sign != +1)
        throw std::invalid_argument("2-pulse closed form needs the early pulse positive");
    TwoPulseParams p;
    p.E0 = a.amplitude;
    p.w0 = a.inverse_width;
    p.T = std::abs(b.center - a.center);
    p.k_shift = kCharge * (config.gauge_constant - p.E0 / p.w0);
    return p;
}

}  // namespace

double approx_spectrum_2pulse(const FieldConfig& config, const MomentumPoint& k) {
    const TwoPulseParams p = match_alternating_2pulse(config);
    // Roots shift rigidly with the gauge constant: Omega(k; g) = Omega(k - qc; centered).
    MomentumPoint k_eff{k.k_parallel - p.k_shift, k.k_perp};
    auto [tm, tp] = exact_turning_points_2pulse(p.E0, p.w0, p.T, k_eff);
    // The turning points are gauge-invariant in t; only k was remapped, so the
    // contour integrals can use the caller's config and momentum directly.
    const double vt = singulant(config, k, tm);
    const double theta = phase_between(config, k, tm, tp);
    const double c = std::cos(theta);
    return 4.0 * c * c * std::exp(-2.0 * vt);
}

double approx_spectrum_npulse(const FieldConfig& config, const MomentumPoint& k, int N,
                              ApproxDiagnostics* diag) {
    if (N < 1) throw std::invalid_argument("approx_spectrum_npulse needs N >= 1");
    const auto region = SearchRegion::default_for(config);
    const auto tps = find_turning_points(config, k, region);
    if (static_cast<int>(tps.size()) != N) {
        std::ostringstream msg;
        msg << "expected " << N << " turning points, found " << tps.size();
        throw NoTurningPointError(msg.str());
    }

    double vt_mean = 0.0;
    std::vector<double> vts(tps.size());
    for (std::size_t i = 0; i < tps.size(); ++i) {
        vts[i] = singulant(config, k, tps[i]);
        vt_mean += vts[i];
    }
    vt_mean /= tps.size();

    double theta_mean = 0.0, theta_max_dev = 0.0;
    if (N >= 2) {
        std::vector<double> thetas(N - 1);
        for (int i = 0; i + 1 < N; ++i) {
            thetas[i] = phase_between(config, k, tps[i], tps[i + 1]);
            theta_mean += thetas[i];
        }
        theta_mean /= (N - 1);
        for (double th : thetas) theta_max_dev = std::max(theta_max_dev, std::abs(th - theta_mean));
    }

    if (diag) {
        diag->vartheta_mean = vt_mean;
        double dev = 0.0;
        for (double v : vts) dev = std::max(dev, std::abs(v - vt_mean));
        diag->vartheta_max_dev = dev;
        diag->theta_mean = theta_mean;
        diag->theta_max_dev = theta_max_dev;
        diag->clamped_negative = false;
    }

    const double envelope = std::exp(-2.0 * vt_mean);
    if (N == 1) return envelope;
    const double s = std::sin(theta_mean);
    if (std::abs(s) < 1e-8) return static_cast<double>(N) * N * envelope;
    const double sn = std::sin(N * theta_mean);
    return (sn * sn) / (s * s) * envelope;
}

}  // namespace pairprod
