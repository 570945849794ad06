#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "bessel/domain.hpp"
#include "bessel/kernels.hpp"
#include "bessel/quadrature.hpp"

namespace bessel {

/// g_tau(x) = x^{-3/2+m} (log(1/x))^{-tau} on (0, 1/2), Re(m) = 1, joined to
/// zero at x = 1 by a fixed quintic blend with value and two derivatives
/// matched at 1/2 and vanishing at 1. Zero beyond 1.
struct TauFunction {
    double tau;
    Complex m;
    GridFunction samples;
};

namespace detail {

inline void validate_tau_m(double tau, Complex m) {
    if (!(tau > 0.5) || !(tau < 1.0))
        throw std::invalid_argument("g_tau: tau must lie in (1/2, 1)");
    if (std::abs(m.real() - 1.0) > 1e-12)
        throw std::invalid_argument("g_tau: requires Re(m) = 1 exactly");
}

inline Complex g_tau_core(double tau, Complex m, double x) {
    const double L = -std::log(x);
    return std::pow(Complex(x), -1.5 + m) * std::pow(L, -tau);
}

/// Value and two derivatives of the core at x = 1/2, for the C^2 blend.
struct BlendData {
    Complex g0, g1, g2;
};

inline BlendData blend_data(double tau, Complex m) {
    const double x0 = 0.5;
    const double L0 = std::log(2.0);
    const Complex mu = m - 1.5;
    const double phi = std::pow(L0, -tau);
    const double dphi = -tau * std::pow(L0, -tau - 1.0);
    const double ddphi = tau * (tau + 1.0) * std::pow(L0, -tau - 2.0);
    BlendData b;
    const Complex xp = std::pow(Complex(x0), mu);
    b.g0 = xp * phi;
    b.g1 = xp / x0 * (mu * phi - dphi);
    b.g2 = xp / (x0 * x0) * (mu * (mu - 1.0) * phi - (2.0 * mu - 1.0) * dphi + ddphi);
    return b;
}

inline Complex g_tau_value(double tau, Complex m, double x) {
    if (x < 0.5) return g_tau_core(tau, m, x);
    if (x > 1.0) return {};
    const BlendData b = blend_data(tau, m);
    const double h = 0.5;
    const double s = (x - 0.5) / h;
    const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
    const double b0 = 1.0 - 10.0 * s3 + 15.0 * s4 - 6.0 * s5;
    const double b1 = s - 6.0 * s3 + 8.0 * s4 - 3.0 * s5;
    const double b2 = 0.5 * s2 - 1.5 * s3 + 1.5 * s4 - 0.5 * s5;
    return b.g0 * b0 + b.g1 * (h * b1) + b.g2 * (h * h * b2);
}

} // namespace detail

inline TauFunction g_tau(double tau, Complex m, const GridPtr& grid) {
    detail::validate_tau_m(tau, m);
    if (grid->x_max() < 1.0)
        throw std::invalid_argument("g_tau: grid must cover (0, 1]");
    TauFunction t{tau, m, GridFunction(grid)};
    for (int j = 0; j < grid->size(); ++j)
        t.samples.values[j] = detail::g_tau_value(tau, m, grid->x()[j]);
    return t;
}

struct NormSqCrossCheck {
    double closed_form;
    double quadrature;
    double rel_dev;
};

/// int_0^{1/2} |g_tau|^2 dx = (2 tau - 1)^{-1} (log 2)^{1 - 2 tau}; the
/// cross-check integrates |g|^2 adaptively in t over [log x_floor, log 1/2]
/// and adds the same antiderivative's tail below the floor.
inline NormSqCrossCheck g_tau_norm_sq(double tau, double x_floor = 6.1e-6) {
    detail::validate_tau_m(tau, Complex(1.0));
    NormSqCrossCheck out;
    out.closed_form = std::pow(std::log(2.0), 1.0 - 2.0 * tau) / (2.0 * tau - 1.0);
    // |g|^2 dx = (-t)^{-2 tau} dt after x = e^t
    const double q = adaptive_simpson(
        [&](double t) { return std::pow(-t, -2.0 * tau); }, std::log(x_floor),
        std::log(0.5), 1e-12);
    const double tail =
        std::pow(-std::log(x_floor), 1.0 - 2.0 * tau) / (2.0 * tau - 1.0);
    out.quadrature = q + tail;
    out.rel_dev = std::abs(out.quadrature - out.closed_form) / out.closed_form;
    return out;
}

/// Boundary integral I(x) = int_x^{1/2} y^{1/2-m} g(y) dy for a positive
/// combination sum_k c_k g_{tau_k}; the integrand collapses to
/// sum_k c_k y^{-1} (log(1/y))^{-tau_k}, independent of m.
struct DivergenceDiagnostic {
    std::vector<double> x_samples;
    std::vector<double> integral_values;   // I(x), real for x <= 1/2
    std::vector<double> closed_form;       // same, from the antiderivative
    std::vector<double> lower_bound_curve; // (1 / (2 (1 - sigma))) L^{1 - sigma}
    double sigma;
    double max_rel_dev = 0.0;              // quadrature vs closed form
    /// L threshold beyond which the single-tau closed form clears the bound:
    /// L >= 2^{1/(1-sigma)} log 2 (combinations clear it earlier).
    double predicted_threshold_L = 0.0;
};

inline DivergenceDiagnostic divergence_profile(const std::vector<double>& taus,
                                               const std::vector<double>& coeffs,
                                               const std::vector<double>& x_list) {
    if (taus.empty() || taus.size() != coeffs.size())
        throw std::invalid_argument("divergence_profile: need matching taus/coeffs");
    for (double tau : taus) detail::validate_tau_m(tau, Complex(1.0));
    DivergenceDiagnostic d;
    d.sigma = *std::min_element(taus.begin(), taus.end());
    d.predicted_threshold_L =
        std::pow(2.0, 1.0 / (1.0 - d.sigma)) * std::log(2.0);
    const double L2 = std::log(2.0);
    for (double x : x_list) {
        if (!(x > 0.0) || !(x < 0.5))
            throw std::invalid_argument("divergence_profile: x must lie in (0, 1/2)");
        const double L = -std::log(x);
        double closed = 0.0;
        for (size_t k = 0; k < taus.size(); ++k)
            closed += coeffs[k] / (1.0 - taus[k]) *
                      (std::pow(L, 1.0 - taus[k]) - std::pow(L2, 1.0 - taus[k]));
        const double quad = adaptive_simpson(
            [&](double t) {
                double s = 0.0;
                for (size_t k = 0; k < taus.size(); ++k)
                    s += coeffs[k] * std::pow(-t, -taus[k]);
                return s;
            },
            std::log(x), std::log(0.5), 1e-12);
        d.x_samples.push_back(x);
        d.integral_values.push_back(quad);
        d.closed_form.push_back(closed);
        d.lower_bound_curve.push_back(0.5 / (1.0 - d.sigma) *
                                      std::pow(L, 1.0 - d.sigma));
        d.max_rel_dev = std::max(
            d.max_rel_dev, std::abs(quad - closed) / std::max(1.0, std::abs(closed)));
    }
    return d;
}

inline DivergenceDiagnostic divergence_profile(const TauFunction& t,
                                               const std::vector<double>& x_list) {
    return divergence_profile({t.tau}, {1.0}, x_list);
}

struct Ellr1Point {
    double x;
    double residual;     // |2m x^{-1/2-m} f(x) - int_x^a y^{1/2-m} g dy|
    double local_bound;  // ||g||_{L^2[0, x]}
};

/// Residual of the limit identity for f = G_m^a g at Re(m) = 1. The residual
/// equals |x^{-2m} int_0^x y^{1/2+m} g dy|, bounded by the local L^2 norm.
inline std::vector<Ellr1Point> ellr1_residual(const TauFunction& t, double a,
                                              const std::vector<double>& x_list) {
    const auto& grid = t.samples.grid;
    const KernelSpec ts(KernelKind::CompressedTwoSided, CouplingParameter::from_m(t.m),
                        a);
    GridFunction f = discretize(ts, grid).apply(t.samples);

    const auto& x = grid->x();
    const auto& w = grid->w();
    const int n = grid->size();
    // cumulative int_x^a y^{1/2-m} g dy over nodes (node-weight rule, matching
    // the discretized operator)
    std::vector<Complex> upper(n + 1, Complex{});
    for (int j = n - 1; j >= 0; --j) {
        Complex c{};
        if (x[j] <= a)
            c = w[j] * std::pow(Complex(x[j]), 0.5 - t.m) * t.samples.values[j];
        upper[j] = upper[j + 1] + c;
    }
    std::vector<Ellr1Point> out;
    for (double xq : x_list) {
        const int j = grid->nearest_index(xq);
        const Complex lhs =
            2.0 * t.m * std::pow(Complex(x[j]), -0.5 - t.m) * f.values[j];
        Ellr1Point pt;
        pt.x = x[j];
        pt.residual = std::abs(lhs - upper[j]);
        // ||g||_{L^2[0,x]}: closed form below the floor plus grid quadrature
        const double Lf = -grid->t_min();
        double s = std::pow(Lf, 1.0 - 2.0 * t.tau) / (2.0 * t.tau - 1.0);
        for (int k = 0; k <= j; ++k) s += w[k] * std::norm(t.samples.values[k]);
        pt.local_bound = std::sqrt(s);
        out.push_back(pt);
    }
    return out;
}

struct GramReport {
    double smallest_singular_value;
    double condition;
};

/// Gram matrix of {g_tau} in the sesquilinear L^2 inner product over
/// [x_floor, 1]; a positive smallest singular value witnesses independence.
inline GramReport independence_gram(const std::vector<double>& taus, Complex m,
                                    const GridPtr& grid) {
    for (double tau : taus) detail::validate_tau_m(tau, m);
    std::set<double> uniq(taus.begin(), taus.end());
    if (uniq.size() != taus.size())
        throw std::invalid_argument("independence_gram: duplicate tau values");
    const int k = int(taus.size());
    std::vector<GridFunction> gs;
    gs.reserve(k);
    for (double tau : taus) gs.push_back(g_tau(tau, m, grid).samples);

    Eigen::MatrixXcd G(k, k);
    const auto& x = grid->x();
    const auto& w = grid->w();
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            Complex s{};
            for (int q = 0; q < grid->size(); ++q)
                if (x[q] <= 1.0)
                    s += w[q] * std::conj(gs[i].values[q]) * gs[j].values[q];
            G(i, j) = s;
        }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(G);
    GramReport r;
    r.smallest_singular_value = svd.singularValues()(k - 1);
    r.condition = svd.singularValues()(0) / svd.singularValues()(k - 1);
    return r;
}

struct DriftReport {
    std::vector<double> window_x;
    std::vector<Complex> candidates; // x^{-1/2-m}-projection of f on [x, 2x]
    double correlation = 0.0;        // |Pearson| against (log(1/x))^{1-tau}
    double rel_range = 0.0;          // (max - min)/mean of |candidates|
};

/// Sliding-window extraction of the would-be coefficient of x^{1/2+m}. For
/// f = G_m^a g_tau the candidates drift like (log(1/x))^{1-tau} (no limit);
/// for f = x^{1/2+m} xi they are constant.
inline DriftReport window_drift(const GridFunction& f, Complex m, double tau,
                                double x_lo, double x_hi, int n_windows = 24) {
    f.check();
    if (!(x_lo > 0.0) || !(x_hi > 2.0 * x_lo))
        throw std::invalid_argument("window_drift: need 0 < x_lo < x_hi / 2");
    DriftReport rep;
    const auto& x = f.grid->x();
    const auto& w = f.grid->w();
    for (int k = 0; k < n_windows; ++k) {
        const double xc =
            x_lo * std::pow(x_hi / x_lo, double(k) / double(n_windows - 1));
        Complex num{};
        double den = 0.0;
        for (int j = 0; j < f.size(); ++j) {
            if (x[j] < xc || x[j] > 2.0 * xc) continue;
            const Complex up = std::pow(Complex(x[j]), 0.5 + m);
            num += w[j] * std::conj(up) * f.values[j];
            den += w[j] * std::norm(up);
        }
        if (den == 0.0) continue;
        rep.window_x.push_back(xc);
        rep.candidates.push_back(num / den);
    }
    const int nw = int(rep.candidates.size());
    if (nw < 4) throw std::invalid_argument("window_drift: too few usable windows");

    Complex cbar{};
    double mbar = 0.0;
    std::vector<double> model(nw);
    for (int k = 0; k < nw; ++k) {
        model[k] = std::pow(-std::log(rep.window_x[k]), 1.0 - tau);
        cbar += rep.candidates[k];
        mbar += model[k];
    }
    cbar /= double(nw);
    mbar /= double(nw);
    Complex cov{};
    double vc = 0.0, vm = 0.0;
    double amin = std::numeric_limits<double>::infinity(), amax = 0.0, amean = 0.0;
    for (int k = 0; k < nw; ++k) {
        const Complex dc = rep.candidates[k] - cbar;
        const double dm = model[k] - mbar;
        cov += std::conj(dc) * dm;
        vc += std::norm(dc);
        vm += dm * dm;
        const double a = std::abs(rep.candidates[k]);
        amin = std::min(amin, a);
        amax = std::max(amax, a);
        amean += a / double(nw);
    }
    rep.correlation = (vc > 0.0 && vm > 0.0) ? std::abs(cov) / std::sqrt(vc * vm) : 0.0;
    rep.rel_range = amean > 0.0 ? (amax - amin) / amean : 0.0;
    return rep;
}

} // namespace bessel
