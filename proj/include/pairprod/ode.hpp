#ifndef PAIRPROD_ODE_HPP
#define PAIRPROD_ODE_HPP

#include <array>
#include <cmath>
#include <cstddef>

#include "pairprod/errors.hpp"

namespace pairprod {

struct OdeOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = 10.0;
};

struct OdeStats {
    long n_accepted = 0;
    long n_rejected = 0;
};

// Embedded Dormand-Prince 5(4) with FSAL and standard step-size control.
// rhs(t, y, dydt); on_accept(t, y) after every accepted step.
template <std::size_t N, class Rhs, class OnAccept>
std::array<double, N> integrate_dopri5(Rhs&& rhs, std::array<double, N> y, double t0,
                                       double t1, const OdeOptions& opt, OdeStats* stats,
                                       OnAccept&& on_accept) {
    using State = std::array<double, N>;

    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // b - bhat, for the embedded 4th-order error estimate
    static constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695,
                            e4 = b4 - 393.0 / 640, e5 = b5 + 92097.0 / 339200,
                            e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

    if (!(t1 > t0)) return y;
    State k1, k2, k3, k4, k5, k6, k7, ytmp, ynew;
    double t = t0;
    rhs(t, y, k1);
    double h = std::min(opt.max_step, (t1 - t0) * 1e-4);
    if (h <= 0.0) h = 1e-6;

    while (t < t1) {
        if (t + h > t1) h = t1 - t;
        if (h < 1e-14 * std::max(1.0, std::abs(t)))
            throw StiffnessError("step size underflow in adaptive integrator", t);

        for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
        rhs(t + c2 * h, ytmp, k2);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs(t + c3 * h, ytmp, k3);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(t + c4 * h, ytmp, k4);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(t + c5 * h, ytmp, k5);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                  a65 * k5[i]);
        rhs(t + h, ytmp, k6);
        for (std::size_t i = 0; i < N; ++i)
            ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                                  b6 * k6[i]);
        rhs(t + h, ynew, k7);

        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                   e6 * k6[i] + e7 * k7[i]);
            const double sc =
                opt.abs_tol + opt.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            const double r = ei / sc;
            err += r * r;
        }
        err = std::sqrt(err / N);

        if (err <= 1.0) {
            t += h;
            y = ynew;
            k1 = k7;  // FSAL
            if (stats) ++stats->n_accepted;
            on_accept(t, y);
            const double fac = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
            h = std::min(opt.max_step, h * std::min(5.0, std::max(0.2, fac)));
        } else {
            if (stats) ++stats->n_rejected;
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
        }
    }
    return y;
}

template <std::size_t N, class Rhs>
std::array<double, N> integrate_dopri5(Rhs&& rhs, std::array<double, N> y, double t0,
                                       double t1, const OdeOptions& opt,
                                       OdeStats* stats = nullptr) {
    return integrate_dopri5<N>(static_cast<Rhs&&>(rhs), y, t0, t1, opt, stats,
                               [](double, const std::array<double, N>&) {});
}

}  // namespace pairprod

#endif
