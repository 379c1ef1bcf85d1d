#include "pairprod/fermion.hpp"

#include <cmath>

#include "pairprod/ode.hpp"

namespace pairprod {

FermionReflectionResult solve_fermion_mode(const FieldConfig& config,
                                           const MomentumPoint& k,
                                           const SolverSettings& s) {
    config.validate();
    s.validate(config);
    if (k.k_perp < 0.0) throw std::invalid_argument("k_perp must be >= 0");

    const double eps_perp = std::sqrt(kMass * kMass + k.k_perp * k.k_perp);
    auto rhs = [&](double t, const std::array<double, 3>& y, std::array<double, 3>& dy) {
        const double a = a_potential(config, t);
        const double e = e_field(config, t);
        const double kin = k.k_parallel - kCharge * a;
        const double om2 = eps_perp * eps_perp + kin * kin;
        const double g = kCharge * e * eps_perp / (2.0 * om2);
        const std::complex<double> R(y[0], y[1]);
        const std::complex<double> ph = std::polar(1.0, -2.0 * y[2]);
        const std::complex<double> dR = g * (ph + R * R * std::conj(ph));
        dy[0] = dR.real();
        dy[1] = dR.imag();
        dy[2] = std::sqrt(om2);
    };

    OdeOptions opt{s.rel_tol, s.abs_tol, s.max_step};
    const auto y = integrate_dopri5<3>(rhs, {0.0, 0.0, 0.0}, s.t_start, s.t_end, opt);

    FermionReflectionResult res;
    res.R_final = {y[0], y[1]};
    const double r2 = std::norm(res.R_final);
    res.f = r2 / (1.0 + r2);
    return res;
}

SpectrumTable fermion_spectrum(const FieldConfig& config,
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
            const double f = solve_fermion_mode(config, grid[i], s).f;
            table.rows[i] = {grid[i].k_parallel, grid[i].k_perp, f, "fermion"};
        } catch (const std::exception& e) {
#pragma omp critical
            if (!failed) {
                failed = true;
                first_error = e.what();
            }
        }
    }
    if (failed)
        throw SpectrumPointError("fermion spectrum failed: " + first_error, 0.0, 0.0);
    return table;
}

}  // namespace pairprod
