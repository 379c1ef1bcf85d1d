#ifndef PAIRPROD_QUADRATURE_HPP
#define PAIRPROD_QUADRATURE_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace pairprod {

// Composite Simpson with interval doubling and Richardson tail correction.
// For a < b only; callers handle orientation.
template <class F>
double integrate_simpson(F&& f, double a, double b, double rel_tol = 1e-12,
                         std::size_t n_start = 64, std::size_t n_max = (1u << 22)) {
    if (!(b > a)) return 0.0;
    auto simpson = [&](std::size_t n) {
        const double h = (b - a) / n;
        double s = f(a) + f(b);
        for (std::size_t i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
        return s * h / 3.0;
    };
    double prev = simpson(n_start);
    for (std::size_t n = 2 * n_start; n <= n_max; n *= 2) {
        const double cur = simpson(n);
        if (std::abs(cur - prev) <= rel_tol * (std::abs(cur) + 1e-300))
            return cur + (cur - prev) / 15.0;
        prev = cur;
    }
    return prev;
}

}  // namespace pairprod

#endif
