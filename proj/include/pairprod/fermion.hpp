#ifndef PAIRPROD_FERMION_HPP
#define PAIRPROD_FERMION_HPP

#include <complex>
#include <vector>

#include "pairprod/fields.hpp"
#include "pairprod/riccati.hpp"
#include "pairprod/spectrum_table.hpp"

namespace pairprod {

struct FermionReflectionResult {
    std::complex<double> R_final;
    double f = 0.0;  // |R|^2 / (1 + |R|^2), in [0, 1]
};

// Spin-1/2 reference solver:
//   dR/dt = [q E eps_perp / (2 Omega^2)] (e^{-2i Theta} + R^2 e^{2i Theta})
// with eps_perp = sqrt(m^2 + k_perp^2); f from |alpha|^2 + |beta|^2 = 1.
FermionReflectionResult solve_fermion_mode(const FieldConfig& config,
                                           const MomentumPoint& k,
                                           const SolverSettings& s);

SpectrumTable fermion_spectrum(const FieldConfig& config,
                               const std::vector<MomentumPoint>& grid,
                               const SolverSettings& s);

}  // namespace pairprod

#endif
