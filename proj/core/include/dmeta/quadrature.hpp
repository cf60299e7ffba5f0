#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace dmeta {

namespace detail {

inline double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_step(const F& f, double a, double fa, double b, double fb, double m, double fm,
                     double whole, double eps, std::int64_t& panels, std::int64_t max_panels) {
    if (++panels > max_panels)
        throw std::runtime_error("adaptive_simpson: panel budget exceeded");
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson(a, fa, m, fm, flm);
    double right = simpson(m, fm, b, fb, frm);
    double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
    return adaptive_step(f, a, fa, m, fm, lm, flm, left, 0.5 * eps, panels, max_panels) +
           adaptive_step(f, m, fm, b, fb, rm, frm, right, 0.5 * eps, panels, max_panels);
}

}  // namespace detail

// Adaptive Simpson quadrature of f over [a, b] to relative tolerance rel_tol.
// Throws if the panel budget is exhausted before convergence.
template <typename F>
double adaptive_simpson(const F& f, double a, double b, double rel_tol,
                        std::int64_t max_panels = std::int64_t{1} << 20) {
    if (!(b > a)) return 0.0;
    double m = 0.5 * (a + b);
    double fa = f(a), fb = f(b), fm = f(m);
    double whole = detail::simpson(a, fa, b, fb, fm);
    double scale = std::max(std::abs(whole), 1e-300);
    std::int64_t panels = 0;
    return detail::adaptive_step(f, a, fa, b, fb, m, fm, whole, rel_tol * scale, panels,
                                 max_panels);
}

}  // namespace dmeta
