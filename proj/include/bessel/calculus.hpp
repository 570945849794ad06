#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "bessel/grid.hpp"

namespace bessel {

namespace detail {

/// Central second-order stencils on the uniform t-grid, one-sided at the ends.
inline std::vector<Complex> d_dt(const std::vector<Complex>& f, double dt, int order) {
    const int n = int(f.size());
    std::vector<Complex> g(n);
    if (order == 1) {
        for (int j = 1; j < n - 1; ++j) g[j] = (f[j + 1] - f[j - 1]) / (2.0 * dt);
        g[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dt);
        g[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * dt);
    } else {
        for (int j = 1; j < n - 1; ++j)
            g[j] = (f[j + 1] - 2.0 * f[j] + f[j - 1]) / (dt * dt);
        g[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / (dt * dt);
        g[n - 1] =
            (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / (dt * dt);
    }
    return g;
}

} // namespace detail

/// Numerical derivative in x via the chain rule through t = log x:
/// f' = e^{-t} d_t f, f'' = e^{-2t} (d_t^2 - d_t) f.
inline GridFunction differentiate(const GridFunction& f, int order) {
    f.check();
    if (order != 1 && order != 2)
        throw std::invalid_argument("differentiate: order must be 1 or 2");
    if (f.size() < 4)
        throw std::invalid_argument("differentiate: grid too small for stencil");
    const auto& g = *f.grid;
    GridFunction out(f.grid);
    if (order == 1) {
        auto d1 = detail::d_dt(f.values, g.dt(), 1);
        for (int j = 0; j < f.size(); ++j) out.values[j] = d1[j] / g.x()[j];
    } else {
        auto d1 = detail::d_dt(f.values, g.dt(), 1);
        auto d2 = detail::d_dt(f.values, g.dt(), 2);
        for (int j = 0; j < f.size(); ++j) {
            const double x = g.x()[j];
            out.values[j] = (d2[j] - d1[j]) / (x * x);
        }
    }
    return out;
}

/// -f'' + (alpha - 1/4) f / x^2 sampled on the grid (stencil derivatives).
inline GridFunction apply_bessel(const CouplingParameter& p, const GridFunction& f) {
    f.check();
    const Complex alpha = p.alpha();
    GridFunction fxx = differentiate(f, 2);
    GridFunction out(f.grid);
    const auto& x = f.grid->x();
    for (int j = 0; j < f.size(); ++j)
        out.values[j] = -fxx.values[j] + (alpha - 0.25) * f.values[j] / (x[j] * x[j]);
    return out;
}

/// C^2 cutoff: identically 1 on [0, plateau_end], 0 from support_end on, with a
/// quintic blend in between (first and second derivatives vanish at the ends).
struct CutoffSpec {
    double plateau_end = 0.5;
    double support_end = 1.0;

    void check() const {
        if (!(plateau_end > 0.0) || !(support_end > plateau_end))
            throw std::invalid_argument("CutoffSpec: need 0 < plateau_end < support_end");
    }

    double value(double x) const {
        if (x <= plateau_end) return 1.0;
        if (x >= support_end) return 0.0;
        const double s = (x - plateau_end) / (support_end - plateau_end);
        return 1.0 - s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
    }
};

inline GridFunction sample_cutoff(const GridPtr& grid, CutoffSpec spec = {}) {
    spec.check();
    return sample(grid, [&](double x) { return Complex(spec.value(x), 0.0); });
}

/// Quadratic extrapolation of (f, f') to x = 0 from the three smallest nodes.
struct BoundaryLimits {
    Complex f0;
    Complex f1;
};

inline BoundaryLimits extrapolate_to_zero(const GridFunction& f) {
    f.check();
    const auto& x = f.grid->x();
    const double x0 = x[0], x1 = x[1], x2 = x[2];
    const Complex f0 = f.values[0], f1 = f.values[1], f2 = f.values[2];
    // Lagrange quadratic through the three points, evaluated at 0.
    const double d01 = x0 - x1, d02 = x0 - x2, d12 = x1 - x2;
    const Complex c0 = f0 / (d01 * d02);
    const Complex c1 = f1 / (-d01 * d12);
    const Complex c2 = f2 / (d02 * d12);
    BoundaryLimits out;
    out.f0 = c0 * x1 * x2 + c1 * x0 * x2 + c2 * x0 * x1;
    out.f1 = -(c0 * (x1 + x2) + c1 * (x0 + x2) + c2 * (x0 + x1));
    return out;
}

/// Gaussian-windowed polynomial p(u) exp(-u^2), u = (x - center)/width, with
/// closed-form first and second derivatives. Values are truncated to zero
/// outside |u| <= 5.8 (tail below 3e-15).
struct AnalyticBump {
    double center = 1.5;
    double width = 0.2;
    std::array<double, 4> poly{1.0, 0.0, 0.0, 0.0};

    static constexpr double u_cut = 5.8;

    double support_lo() const { return center - u_cut * width; }
    double support_hi() const { return center + u_cut * width; }

    double value(double x) const {
        const double u = (x - center) / width;
        if (std::abs(u) > u_cut) return 0.0;
        return p(u) * std::exp(-u * u);
    }
    double d1(double x) const {
        const double u = (x - center) / width;
        if (std::abs(u) > u_cut) return 0.0;
        return (dp(u) - 2.0 * u * p(u)) * std::exp(-u * u) / width;
    }
    double d2(double x) const {
        const double u = (x - center) / width;
        if (std::abs(u) > u_cut) return 0.0;
        const double q = ddp(u) - 4.0 * u * dp(u) + (4.0 * u * u - 2.0) * p(u);
        return q * std::exp(-u * u) / (width * width);
    }

    GridFunction on(const GridPtr& grid) const {
        return sample(grid, [&](double x) { return Complex(value(x), 0.0); });
    }

private:
    double p(double u) const {
        return poly[0] + u * (poly[1] + u * (poly[2] + u * poly[3]));
    }
    double dp(double u) const {
        return poly[1] + u * (2.0 * poly[2] + 3.0 * u * poly[3]);
    }
    double ddp(double u) const { return 2.0 * poly[2] + 6.0 * u * poly[3]; }
};

} // namespace bessel
