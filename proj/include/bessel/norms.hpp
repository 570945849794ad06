#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "bessel/kernels.hpp"

namespace bessel {

inline constexpr double kBoundaryTol = 1e-12;

enum class Region { inside, boundary, outside };

inline std::string region_name(Region r) {
    switch (r) {
        case Region::inside: return "inside";
        case Region::boundary: return "boundary";
        case Region::outside: return "outside";
    }
    return "?";
}

struct RegionClass {
    Region region;
    double distance;
};

namespace detail {

inline double dist_sq_to_parabola(Complex alpha, double omega) {
    const double dr = alpha.real() - (1.0 - omega * omega);
    const double di = alpha.imag() - 2.0 * omega;
    return dr * dr + di * di;
}

/// A few safeguarded Newton steps on d/domega |alpha - (1+i omega)^2|^2,
/// which is 4 (omega^3 + (a+1) omega - b).
inline double polish_omega(Complex alpha, double omega) {
    const double a1 = alpha.real() + 1.0, b = alpha.imag();
    for (int it = 0; it < 60; ++it) {
        const double g = omega * (omega * omega + a1) - b;
        const double dg = 3.0 * omega * omega + a1;
        if (dg <= 0.0) break;
        const double step = g / dg;
        omega -= step;
        if (std::abs(step) <= 1e-16 * (1.0 + std::abs(omega))) break;
    }
    return omega;
}

} // namespace detail

/// Distance from alpha to the critical parabola {(1 + i omega)^2 : omega real}.
///
/// The squared objective is a quartic in omega whose critical points solve the
/// depressed cubic omega^3 + (Re alpha + 1) omega = Im alpha; all real roots
/// are enumerated and a coarse scan guards the global minimum.
inline double parabola_distance(Complex alpha, double* omega_star = nullptr) {
    if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()))
        throw std::invalid_argument("parabola_distance: alpha must be finite");
    const double a1 = alpha.real() + 1.0;
    const double b = alpha.imag();

    std::vector<double> candidates;
    // Real roots of t^3 + a1 t - b = 0 (Cardano, trig form when three roots).
    const double p = a1, q = -b;
    const double disc = q * q / 4.0 + p * p * p / 27.0;
    if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        candidates.push_back(std::cbrt(-q / 2.0 + s) + std::cbrt(-q / 2.0 - s));
    } else {
        const double r = std::sqrt(-p * p * p / 27.0);
        const double phi = std::acos(std::clamp(-q / (2.0 * r), -1.0, 1.0));
        const double amp = 2.0 * std::sqrt(-p / 3.0);
        for (int k = 0; k < 3; ++k)
            candidates.push_back(amp * std::cos((phi + 2.0 * M_PI * k) / 3.0));
    }
    // Coarse-scan fallback against branch mistakes.
    const double R = 2.0 + std::sqrt(std::abs(alpha)) + std::cbrt(std::abs(b)) +
                     std::sqrt(std::max(0.0, -a1));
    const int scan_n = 4096;
    double best_scan = 0.0, best_val = detail::dist_sq_to_parabola(alpha, 0.0);
    for (int k = 0; k <= scan_n; ++k) {
        const double om = -R + 2.0 * R * k / scan_n;
        const double v = detail::dist_sq_to_parabola(alpha, om);
        if (v < best_val) {
            best_val = v;
            best_scan = om;
        }
    }
    candidates.push_back(best_scan);

    double best_om = candidates.front();
    double best = std::numeric_limits<double>::infinity();
    for (double om : candidates) {
        om = detail::polish_omega(alpha, om);
        const double v = detail::dist_sq_to_parabola(alpha, om);
        if (v < best) {
            best = v;
            best_om = om;
        }
    }
    if (omega_star) *omega_star = best_om;
    return std::sqrt(best);
}

/// Side of the critical parabola. Checked two ways, which agree identically:
/// sign of Re(alpha) + |alpha| - 2 and of |Re sqrt(alpha)| - 1.
inline RegionClass region_classify(Complex alpha) {
    const double d = parabola_distance(alpha);
    const double s_cartesian = alpha.real() + std::abs(alpha) - 2.0;
    const double s_root = std::abs(std::sqrt(alpha).real()) - 1.0;
    if (d > kBoundaryTol && s_cartesian * s_root < 0.0 &&
        std::min(std::abs(s_cartesian), std::abs(s_root)) > 1e-9)
        throw std::runtime_error("region_classify: side tests disagree");
    Region r = Region::boundary;
    if (d > kBoundaryTol) r = s_cartesian < 0.0 ? Region::inside : Region::outside;
    return {r, d};
}

enum class NormMethod { distance_closed_form, multiplier_sup, discretized_svd };

inline std::string method_name(NormMethod m) {
    switch (m) {
        case NormMethod::distance_closed_form: return "distance_closed_form";
        case NormMethod::multiplier_sup: return "multiplier_sup";
        case NormMethod::discretized_svd: return "discretized_svd";
    }
    return "?";
}

struct NormEstimate {
    double value = 0.0;
    NormMethod method = NormMethod::distance_closed_form;
    // multiplier method only
    double omega_star = std::numeric_limits<double>::quiet_NaN();
    // svd method only: grid provenance plus the value on the halved grid
    int grid_n = 0;
    double grid_t_min = 0.0, grid_t_max = 0.0;
    double value_coarse = 0.0;
};

enum class NormKind { Q, Z };

inline void validate_norm_parameter(const CouplingParameter& p, NormKind kind) {
    const RegionClass rc = region_classify(p.alpha());
    if (rc.region == Region::boundary)
        throw std::invalid_argument("norm: boundary parameter rejected (sup infinite)");
    if (kind == NormKind::Q && rc.region != Region::inside)
        throw std::invalid_argument("norm(Q): requires alpha inside the region");
    if (kind == NormKind::Z && !(p.m().real() > 1.0))
        throw std::invalid_argument("norm(Z): requires Re(m) > 1");
}

inline NormEstimate norm_from_distance(const CouplingParameter& p, NormKind kind) {
    validate_norm_parameter(p, kind);
    NormEstimate e;
    e.method = NormMethod::distance_closed_form;
    e.value = 1.0 / parabola_distance(p.alpha());
    return e;
}

/// sup over omega of |1/((1+i omega)^2 - m^2)|, located by coarse scan plus
/// golden-section refinement; deliberately independent of the cubic route in
/// parabola_distance.
inline NormEstimate multiplier_sup(const CouplingParameter& p, NormKind kind) {
    validate_norm_parameter(p, kind);
    const Complex alpha = p.alpha();
    const auto h = [&](double om) { return detail::dist_sq_to_parabola(alpha, om); };

    const double R = 4.0 + std::sqrt(std::abs(alpha)) +
                     std::cbrt(std::abs(alpha.imag()));
    const int scan_n = 8192;
    int best_k = 0;
    double best_v = h(-R);
    for (int k = 1; k <= scan_n; ++k) {
        const double v = h(-R + 2.0 * R * k / scan_n);
        if (v < best_v) {
            best_v = v;
            best_k = k;
        }
    }
    double lo = -R + 2.0 * R * std::max(0, best_k - 1) / scan_n;
    double hi = -R + 2.0 * R * std::min(scan_n, best_k + 1) / scan_n;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    double fc = h(c), fd = h(d);
    for (int it = 0; it < 90; ++it) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - gr * (hi - lo);
            fc = h(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + gr * (hi - lo);
            fd = h(d);
        }
    }
    const double om = 0.5 * (lo + hi);
    NormEstimate e;
    e.method = NormMethod::multiplier_sup;
    e.omega_star = om;
    e.value = 1.0 / std::sqrt(h(om));
    return e;
}

namespace detail {

/// Largest singular value of the weight-symmetrized quadrature matrix
/// S = W^{1/2} K W^{1/2}, i.e. the operator norm in the discrete L^2(dx) norm.
inline double weighted_sigma_max(const DiscretizedOperator& op) {
    const int n = op.grid->size();
    const auto& w = op.grid->w();
    linalg::Matrix S(n, n);
    for (int k = 0; k < n; ++k) {
        const double sk = std::sqrt(w[k]);
        for (int j = 0; j < n; ++j)
            S(j, k) = std::sqrt(w[j]) * op.matrix(j, k) / w[k] * sk;
    }
    return linalg::sigma_max(S);
}

} // namespace detail

/// SVD norm estimate, with the value on the halved grid recorded so the
/// convergence direction is visible.
inline NormEstimate operator_norm_svd(const DiscretizedOperator& op,
                                      bool with_refinement_record = true) {
    if (op.spec.kind != KernelKind::Q && op.spec.kind != KernelKind::Z)
        throw std::invalid_argument("operator_norm_svd: op must be a Q or Z kind");
    NormEstimate e;
    e.method = NormMethod::discretized_svd;
    e.grid_n = op.grid->size();
    e.grid_t_min = op.grid->t_min();
    e.grid_t_max = op.grid->t_max();
    e.value = detail::weighted_sigma_max(op);
    if (with_refinement_record) {
        const int nc = (op.grid->size() + 1) / 2;
        auto coarse = make_log_grid(op.grid->t_min(), op.grid->t_max(),
                                    std::max(16, nc));
        e.value_coarse = detail::weighted_sigma_max(discretize(op.spec, coarse));
    }
    return e;
}

struct NormReport {
    NormEstimate distance;
    NormEstimate multiplier;
    NormEstimate svd;
    double max_pairwise_rel_dev = 0.0;
};

inline NormReport norm_report(const CouplingParameter& p, NormKind kind,
                              const GridPtr& grid) {
    NormReport r;
    r.distance = norm_from_distance(p, kind);
    r.multiplier = multiplier_sup(p, kind);
    const KernelSpec spec(kind == NormKind::Q ? KernelKind::Q : KernelKind::Z, p);
    r.svd = operator_norm_svd(discretize(spec, grid));
    const double vals[3] = {r.distance.value, r.multiplier.value, r.svd.value};
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            const double dev = std::abs(vals[i] - vals[j]) /
                               std::max({vals[i], vals[j], 1e-300});
            r.max_pairwise_rel_dev = std::max(r.max_pairwise_rel_dev, dev);
        }
    return r;
}

} // namespace bessel
