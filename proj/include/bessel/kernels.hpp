#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "bessel/calculus.hpp"
#include "bessel/grid.hpp"
#include "bessel/linalg.hpp"

namespace bessel {

enum class KernelKind {
    ForwardGreen,
    Q,
    TwoSidedGreen,
    Z,
    CompressedForward,
    CompressedTwoSided,
};

inline std::string kind_name(KernelKind k) {
    switch (k) {
        case KernelKind::ForwardGreen: return "ForwardGreen";
        case KernelKind::Q: return "Q";
        case KernelKind::TwoSidedGreen: return "TwoSidedGreen";
        case KernelKind::Z: return "Z";
        case KernelKind::CompressedForward: return "CompressedForward";
        case KernelKind::CompressedTwoSided: return "CompressedTwoSided";
    }
    return "?";
}

/// Immutable description of one integral kernel: kind, coupling, and the
/// compression cutoff a (compressed kinds only).
struct KernelSpec {
    KernelKind kind;
    CouplingParameter p;
    double a = 0.0;

    KernelSpec(KernelKind k, CouplingParameter param, double cutoff = 0.0)
        : kind(k), p(param), a(cutoff) {
        validate();
    }

    bool is_forward_family() const {
        return kind == KernelKind::ForwardGreen || kind == KernelKind::Q ||
               kind == KernelKind::CompressedForward;
    }
    bool is_two_sided_family() const { return !is_forward_family(); }
    bool is_compressed() const {
        return kind == KernelKind::CompressedForward ||
               kind == KernelKind::CompressedTwoSided;
    }
    bool is_green() const { return kind != KernelKind::Q && kind != KernelKind::Z; }

    void validate() const {
        if (is_two_sided_family()) {
            if (p.is_zero())
                throw std::invalid_argument(kind_name(kind) +
                                            ": not defined at m = 0");
            if (p.m().real() <= -1.0)
                throw std::invalid_argument(kind_name(kind) + ": needs Re(m) > -1");
        }
        if (is_compressed() && !(a > 0.0))
            throw std::invalid_argument(kind_name(kind) + ": needs cutoff a > 0");
    }
};

namespace detail {

/// sinh(z)/z, stable near z = 0. Even in z, hence a function of z^2: this is
/// what joins the alpha = 0 log branch analytically to the generic formula.
inline Complex sinhc(Complex z) {
    if (std::abs(z) < 1e-4) {
        const Complex z2 = z * z;
        return 1.0 + z2 / 6.0 * (1.0 + z2 / 20.0 * (1.0 + z2 / 42.0));
    }
    return std::sinh(z) / z;
}

} // namespace detail

/// Pointwise kernel value K(x, y).
///
/// Forward family (theta(x - y), zero on the diagonal):
///   ForwardGreen(x,y) = -sqrt(xy) tau sinhc(m tau),        tau = log(x/y),
///   Q(x,y)            = x^{-2} sqrt(xy) tau sinhc(m tau)
/// (sinhc reduces the alpha = 0 case to the sqrt(xy) log(x/y) branch). The
/// forward Green kernel carries the sign that makes L(Gg) = g; Q carries the
/// sign of the Taylor-remainder identity f = a + bx + x^2 (Qf'')(x).
///
/// Two-sided family (continuous across the diagonal):
///   TwoSidedGreen(x,y) = sqrt(xy) e^{-m |tau|} / (2m),
///   Z(x,y)             = x^{-2} sqrt(xy) e^{-m |tau|} / (2m).
inline Complex kernel_eval(const KernelSpec& spec, double x, double y) {
    if (!(x > 0.0) || !(y > 0.0))
        throw std::invalid_argument("kernel_eval: x, y must be > 0");
    if (spec.is_compressed() && (x > spec.a || y > spec.a)) return {};

    const double lx = std::log(x), ly = std::log(y);
    const double tau = lx - ly;
    const Complex m = spec.p.m();
    switch (spec.kind) {
        case KernelKind::ForwardGreen:
        case KernelKind::CompressedForward:
            if (tau <= 0.0) return {};
            return -std::exp(0.5 * (lx + ly)) * tau * detail::sinhc(m * tau);
        case KernelKind::Q:
            if (tau <= 0.0) return {};
            return std::exp(-1.5 * lx + 0.5 * ly) * tau * detail::sinhc(m * tau);
        case KernelKind::TwoSidedGreen:
        case KernelKind::CompressedTwoSided:
            return std::exp(0.5 * (lx + ly)) * std::exp(-m * std::abs(tau)) /
                   (2.0 * m);
        case KernelKind::Z:
            return std::exp(-1.5 * lx + 0.5 * ly) * std::exp(-m * std::abs(tau)) /
                   (2.0 * m);
    }
    return {};
}

/// Quadrature-weighted kernel matrix M_{jk} = K(x_j, x_k) w_k with its
/// immutable spec. Compressed kinds zero the rows and columns with x > a.
struct DiscretizedOperator {
    KernelSpec spec;
    GridPtr grid;
    linalg::Matrix matrix;

    GridFunction apply(const GridFunction& g) const {
        g.check();
        if (!g.grid->same_as(*grid))
            throw std::invalid_argument("apply: grid mismatch");
        Eigen::Map<const linalg::Vector> v(g.values.data(), g.size());
        linalg::Vector r = matrix * v;
        GridFunction out(grid);
        for (int j = 0; j < out.size(); ++j) out.values[j] = r[j];
        return out;
    }
};

inline DiscretizedOperator discretize(const KernelSpec& spec, const GridPtr& grid) {
    if (spec.is_compressed() && (spec.a < grid->x_min() || spec.a > grid->x_max()))
        throw std::invalid_argument("discretize: cutoff a outside grid range");
    const int n = grid->size();
    linalg::Matrix M(n, n);
    const auto& x = grid->x();
    const auto& w = grid->w();
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) M(j, k) = kernel_eval(spec, x[j], x[k]) * w[k];
    return DiscretizedOperator{spec, grid, std::move(M)};
}

inline GridFunction apply_green(const DiscretizedOperator& op, const GridFunction& g) {
    if (!op.spec.is_green())
        throw std::invalid_argument("apply_green: spec is not a Green kind");
    return op.apply(g);
}

inline GridFunction apply_green(const KernelSpec& spec, const GridFunction& g) {
    g.check();
    if (!spec.is_green())
        throw std::invalid_argument("apply_green: spec is not a Green kind");
    return discretize(spec, g.grid).apply(g);
}

/// Relative L^2 residual of the Green identity L(Gg) = g over the interior
/// (three nodes excluded at each end).
inline double green_residual(const DiscretizedOperator& op, const GridFunction& g) {
    GridFunction f = apply_green(op, g);
    GridFunction lf = apply_bessel(op.spec.p, f);
    const auto& w = g.grid->w();
    double num = 0.0, den = 0.0;
    for (int j = 3; j < g.size() - 3; ++j) {
        num += w[j] * std::norm(lf.values[j] - g.values[j]);
        den += w[j] * std::norm(g.values[j]);
    }
    if (den == 0.0) return std::sqrt(num);
    return std::sqrt(num / den);
}

inline double green_residual(const KernelSpec& spec, const GridFunction& g) {
    g.check();
    return green_residual(discretize(spec, g.grid), g);
}

} // namespace bessel
