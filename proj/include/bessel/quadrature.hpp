#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

namespace bessel {

namespace detail {

template <class F, class V>
V adaptive_simpson_rec(const F& f, double a, double b, V fa, V fm, V fb, V whole,
                       double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const V flm = f(lm);
    const V frm = f(rm);
    const V left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const V right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const V both = left + right;
    if (depth <= 0 || std::abs(both - whole) <= 15.0 * tol)
        return both + (both - whole) / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace detail

/// Adaptive Simpson quadrature with Richardson correction. `tol` is absolute;
/// callers scale it by the expected magnitude of the integral.
template <class F>
auto adaptive_simpson(const F& f, double a, double b, double tol = 1e-11,
                      int max_depth = 48) {
    using V = decltype(f(a));
    if (!(a <= b)) throw std::invalid_argument("adaptive_simpson: a > b");
    if (a == b) return V{};
    const V fa = f(a);
    const V fb = f(b);
    const double m = 0.5 * (a + b);
    const V fm = f(m);
    const V whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

} // namespace bessel
