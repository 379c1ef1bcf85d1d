#include "pairprod/qve.hpp"

#include <cmath>

#include "pairprod/ode.hpp"

namespace pairprod {

double qve_distribution(const FieldConfig& config, const MomentumPoint& k,
                        const SolverSettings& s) {
    config.validate();
    s.validate(config);
    if (k.k_perp < 0.0) throw std::invalid_argument("k_perp must be >= 0");

    auto rhs = [&](double t, const std::array<double, 3>& y, std::array<double, 3>& dy) {
        const double a = a_potential(config, t);
        const double e = e_field(config, t);
        const double kin = k.k_parallel - kCharge * a;
        const double om2 = kMass * kMass + k.k_perp * k.k_perp + kin * kin;
        const double om = std::sqrt(om2);
        const double w = kCharge * e * kin / om2;
        const double f = y[0], u = y[1], v = y[2];
        dy[0] = 0.5 * w * v;
        dy[1] = 2.0 * om * v;
        dy[2] = w * (1.0 + 2.0 * f) - 2.0 * om * u;
    };
    OdeOptions opt{s.rel_tol, s.abs_tol, s.max_step};
    const auto y = integrate_dopri5<3>(rhs, {0.0, 0.0, 0.0}, s.t_start, s.t_end, opt);
    return y[0];
}

SpectrumTable qve_spectrum(const FieldConfig& config,
                           const std::vector<MomentumPoint>& grid,
                           const SolverSettings& s) {
    if (grid.empty()) throw std::invalid_argument("momentum grid is empty");
    SpectrumTable table;
    table.rows.resize(grid.size());
    bool failed = false;
    std::string first_error;

#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(grid.size()); ++i) {
        try {
            table.rows[i] = {grid[i].k_parallel, grid[i].k_perp,
                             qve_distribution(config, grid[i], s), "qve"};
        } catch (const std::exception& e) {
#pragma omp critical
            if (!failed) {
                failed = true;
                first_error = e.what();
            }
        }
    }
    if (failed) throw SpectrumPointError("qve spectrum failed: " + first_error, 0.0, 0.0);
    return table;
}

CrossCheckReport cross_check(const FieldConfig& config, double kpar_min, double kpar_max,
                             int n_points, const SolverSettings& s, double tolerance) {
    const auto grid = uniform_kpar_grid(kpar_min, kpar_max, n_points);
    // Sub-critical f sits many orders below 1; both solvers need an absolute
    // tolerance well under the f scale or the comparison measures integrator
    // noise instead of method disagreement.
    SolverSettings tight = s;
    tight.rel_tol = std::min(s.rel_tol, 1e-12);
    tight.abs_tol = std::min(s.abs_tol, 1e-22);
    const auto ric = spectrum(config, grid, tight);
    const auto qve = qve_spectrum(config, grid, tight);

    double f_peak = 0.0;
    for (const auto& r : ric.rows) f_peak = std::max(f_peak, r.f);

    CrossCheckReport report;
    report.tolerance = tolerance;
    report.pass = true;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CrossCheckCase c;
        c.k_parallel = grid[i].k_parallel;
        c.f_riccati = ric.rows[i].f;
        c.f_qve = qve.rows[i].f;
        // At interference nodes f drops by many decades through cancellation;
        // the denominator is floored at a fixed fraction of the grid peak so
        // the metric compares methods, not roundoff at the nodes.
        const double denom = std::max(std::abs(c.f_riccati), kNodeFloor * f_peak);
        c.rel_diff = denom > 0.0 ? std::abs(c.f_qve - c.f_riccati) / denom
                                 : std::abs(c.f_qve);
        report.max_rel_diff = std::max(report.max_rel_diff, c.rel_diff);
        if (c.rel_diff >= tolerance) report.pass = false;
        report.cases.push_back(c);
    }
    return report;
}

}  // namespace pairprod
