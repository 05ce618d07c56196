#pragma once

#include <cmath>

namespace blockage {

namespace detail {

template <class F>
double adapt_simpson(const F& f, double a, double b, double fa, double fm, double fb,
                     double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adapt_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adapt_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson quadrature with Richardson extrapolation on accepted
// panels. `tol` is the absolute error target for the whole interval.
template <class F>
double integrate(const F& f, double a, double b, double tol = 1e-11, int max_depth = 52) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adapt_simpson(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

}  // namespace blockage
