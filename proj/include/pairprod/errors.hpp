#ifndef PAIRPROD_ERRORS_HPP
#define PAIRPROD_ERRORS_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace pairprod {

// Base class for physics-domain failures (CLI exit code 2). Usage errors
// (bad arguments, malformed files) use std::invalid_argument instead.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Field evaluated within the exclusion radius of a sech^2 / tanh pole.
class PoleError : public DomainError {
public:
    PoleError(const std::string& msg, std::complex<double> pole)
        : DomainError(msg), pole_location(pole) {}
    std::complex<double> pole_location;
};

// |R| reached 1 during a bosonic mode solve; the f = |R|^2/(1 - |R|^2) mapping invalid.
class SupercriticalError : public DomainError {
public:
    SupercriticalError(const std::string& msg, double t, double abs_R)
        : DomainError(msg), t_at_failure(t), abs_R_at_failure(abs_R) {}
    double t_at_failure;
    double abs_R_at_failure;
};

// Adaptive step size underflowed.
class StiffnessError : public DomainError {
public:
    StiffnessError(const std::string& msg, double t) : DomainError(msg), t_at_failure(t) {}
    double t_at_failure;
};

class NoTurningPointError : public DomainError {
public:
    using DomainError::DomainError;
};

// Square-root branch could not be tracked continuously along a contour,
// or a closed-form branch argument fell on a cut.
class BranchError : public DomainError {
public:
    using DomainError::DomainError;
};

// Momentum-space quadrature domain does not cover the support of f.
class TailCoverageError : public DomainError {
public:
    TailCoverageError(const std::string& msg, double boundary_max, double peak)
        : DomainError(msg), boundary_max_f(boundary_max), peak_f(peak) {}
    double boundary_max_f;
    double peak_f;
};

class InsufficientOscillationError : public DomainError {
public:
    using DomainError::DomainError;
};

// Wraps a per-point failure inside a spectrum scan, carrying the momentum.
class SpectrumPointError : public DomainError {
public:
    SpectrumPointError(const std::string& msg, double kpar, double kperp)
        : DomainError(msg), k_parallel(kpar), k_perp(kperp) {}
    double k_parallel;
    double k_perp;
};

}  // namespace pairprod

#endif
