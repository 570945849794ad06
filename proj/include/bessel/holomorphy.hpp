#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "bessel/kernels.hpp"
#include "bessel/norms.hpp"
#include "bessel/rng.hpp"

namespace bessel {

/// A base operator, a perturbation, and the smallest c with ||Bv|| <= c||Av||.
struct MatrixFamily {
    linalg::Matrix A;
    linalg::Matrix B;
    double c = 0.0;

    double disk_radius() const { return c > 0.0 ? 1.0 / c : std::numeric_limits<double>::infinity(); }
};

/// c = sigma_max(B A^{-1}), cross-checked by random-vector sampling.
inline double relative_bound(const linalg::Matrix& A, const linalg::Matrix& B,
                             std::uint64_t sample_seed = 0x9e3779b9ULL,
                             int n_samples = 10000) {
    if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows())
        throw std::invalid_argument("relative_bound: square matrices of equal size");
    const auto sv = linalg::singular_values(A);
    if (!(sv.back() > 1e-12 * sv.front()))
        throw std::invalid_argument("relative_bound: A is rank deficient");
    Eigen::PartialPivLU<linalg::Matrix> lu(A);
    const double c = linalg::sigma_max(B * lu.inverse());

    Rng rng(sample_seed);
    const int n = int(A.rows());
    for (int s = 0; s < n_samples; ++s) {
        linalg::Vector v(n);
        for (int j = 0; j < n; ++j) v[j] = rng.complex_normal();
        const double num = (B * v).norm();
        const double den = (A * v).norm();
        if (den > 0.0 && num > (c + 1e-10) * den)
            throw std::runtime_error("relative_bound: sampling exceeded the bound");
    }
    return c;
}

inline MatrixFamily make_matrix_family(linalg::Matrix A, linalg::Matrix B) {
    MatrixFamily fam{std::move(A), std::move(B), 0.0};
    fam.c = relative_bound(fam.A, fam.B);
    return fam;
}

struct KatoRellichSample {
    Complex z;
    double poly_residual;        // max entry dev of M(z) from M(0) + z (M(1)-M(0))
    double cauchy_riemann_residual;
    double graph_ratio_min = 0.0;
    double graph_ratio_max = 0.0;
    bool graph_bounds_ok = false;
};

struct KatoRellichReport {
    std::vector<KatoRellichSample> samples;
    bool poly_ok = false;
    bool all_graph_ok = false;
};

namespace detail {

inline double max_abs(const linalg::Matrix& M) {
    return M.cwiseAbs().maxCoeff();
}

} // namespace detail

/// The bounded family M(z) = (A + zB)(A^*A + I)^{-1/2} is a degree-1
/// polynomial in z; checked together with a finite-difference
/// Cauchy-Riemann residual and the equivalence of the graph norms
/// ||f||^2 + ||(A + zB) f||^2 within [(1-|z|c)^2, (1+|z|c)^2].
inline KatoRellichReport kato_rellich_check(const MatrixFamily& fam,
                                            const std::vector<Complex>& z_samples,
                                            std::uint64_t seed = 42,
                                            int n_vectors = 200) {
    KatoRellichReport rep;
    const linalg::Matrix S = linalg::inv_sqrt_gram_plus_identity(fam.A);
    const auto M_of = [&](Complex z) -> linalg::Matrix {
        return (fam.A + z * fam.B) * S;
    };
    const linalg::Matrix M0 = M_of(Complex(0.0));
    const linalg::Matrix M1 = M_of(Complex(1.0));
    const double scale = std::max(detail::max_abs(M0), detail::max_abs(M1));

    Rng rng(seed);
    const int n = int(fam.A.rows());
    rep.poly_ok = true;
    rep.all_graph_ok = true;
    for (Complex z : z_samples) {
        if (!(std::abs(z) < fam.disk_radius()))
            throw std::invalid_argument("kato_rellich_check: |z| >= 1/c rejected");
        KatoRellichSample s;
        s.z = z;
        const linalg::Matrix Mz = M_of(z);
        s.poly_residual = detail::max_abs(Mz - (M0 + z * (M1 - M0))) / scale;

        const double h = 1e-5;
        const linalg::Matrix dRe = (M_of(z + h) - M_of(z - h)) / (2.0 * h);
        const linalg::Matrix dIm =
            (M_of(z + Complex(0, h)) - M_of(z - Complex(0, h))) / (2.0 * h);
        s.cauchy_riemann_residual =
            0.5 * detail::max_abs(dRe + Complex(0, 1) * dIm) / scale;

        const double lo = (1.0 - std::abs(z) * fam.c) * (1.0 - std::abs(z) * fam.c);
        const double hi = (1.0 + std::abs(z) * fam.c) * (1.0 + std::abs(z) * fam.c);
        s.graph_ratio_min = std::numeric_limits<double>::infinity();
        s.graph_ratio_max = 0.0;
        for (int v = 0; v < n_vectors; ++v) {
            linalg::Vector f(n);
            for (int j = 0; j < n; ++j) f[j] = rng.complex_normal();
            const double base = f.squaredNorm() + (fam.A * f).squaredNorm();
            const double pert = f.squaredNorm() + ((fam.A + z * fam.B) * f).squaredNorm();
            const double ratio = pert / base;
            s.graph_ratio_min = std::min(s.graph_ratio_min, ratio);
            s.graph_ratio_max = std::max(s.graph_ratio_max, ratio);
        }
        s.graph_bounds_ok =
            s.graph_ratio_min >= lo - 1e-8 && s.graph_ratio_max <= hi + 1e-8;
        rep.poly_ok = rep.poly_ok && s.poly_residual <= 1e-12;
        rep.all_graph_ok = rep.all_graph_ok && s.graph_bounds_ok;
        rep.samples.push_back(s);
    }
    return rep;
}

struct AnalyticityReport {
    double cauchy_residual = 0.0;        // |contour mean - center| / scale
    std::vector<double> taylor_mags;     // |c_k| / scale from the contour DFT
    bool geometric_decay = false;
};

/// Cauchy-integral test of alpha -> G_alpha^{a->} g at probe nodes: the mean
/// over a centered circle reproduces the center value, and the contour DFT
/// coefficients decay geometrically.
inline AnalyticityReport family_analyticity(Complex alpha0, double r,
                                            const GridFunction& g, double a,
                                            int n_contour = 16, int n_probes = 16) {
    g.check();
    const RegionClass rc = region_classify(alpha0);
    if (rc.region != Region::inside || !(rc.distance > r))
        throw std::invalid_argument(
            "family_analyticity: disk must stay inside the region");

    const auto& grid = g.grid;
    std::vector<int> probes;
    for (int k = 0; k < n_probes; ++k) {
        const double xq =
            1e-3 * std::pow(0.8 * a / 1e-3, double(k) / double(n_probes - 1));
        probes.push_back(grid->nearest_index(xq));
    }
    const auto eval = [&](Complex alpha) {
        const KernelSpec spec(KernelKind::CompressedForward,
                              CouplingParameter::from_alpha(alpha), a);
        GridFunction f = discretize(spec, grid).apply(g);
        std::vector<Complex> vals;
        vals.reserve(probes.size());
        for (int j : probes) vals.push_back(f.values[j]);
        return vals;
    };

    std::vector<std::vector<Complex>> contour;
    contour.reserve(n_contour);
    for (int k = 0; k < n_contour; ++k) {
        const double th = 2.0 * M_PI * k / n_contour;
        contour.push_back(eval(alpha0 + r * Complex(std::cos(th), std::sin(th))));
    }
    const auto center = eval(alpha0);
    double scale = 0.0;
    for (const Complex& v : center) scale = std::max(scale, std::abs(v));

    AnalyticityReport rep;
    rep.taylor_mags.assign(n_contour, 0.0);
    for (size_t pi = 0; pi < center.size(); ++pi) {
        for (int kk = 0; kk < n_contour; ++kk) {
            Complex ck{};
            for (int j = 0; j < n_contour; ++j) {
                const double th = -2.0 * M_PI * j * kk / n_contour;
                ck += contour[j][pi] * Complex(std::cos(th), std::sin(th));
            }
            ck /= double(n_contour);
            if (kk == 0)
                rep.cauchy_residual =
                    std::max(rep.cauchy_residual, std::abs(ck - center[pi]) / scale);
            rep.taylor_mags[kk] = std::max(rep.taylor_mags[kk], std::abs(ck) / scale);
        }
    }
    // geometric decay of the analytic coefficients c_1 .. c_6
    rep.geometric_decay = true;
    for (int kk = 1; kk + 2 < 8; ++kk)
        if (rep.taylor_mags[kk + 2] > 0.5 * rep.taylor_mags[kk] + 1e-13)
            rep.geometric_decay = false;
    return rep;
}

/// max |K_{conj m}(x, y) - conj(K_m(x, y))| over sample pairs.
inline double conjugation_symmetry(const KernelSpec& spec, int n_samples = 100,
                                   std::uint64_t seed = 7) {
    Rng rng(seed);
    const CouplingParameter pc =
        CouplingParameter::from_m(std::conj(spec.p.m()), spec.p.m().real() < 0.0);
    const KernelSpec conj_spec(spec.kind, pc, spec.a);
    double dev = 0.0;
    for (int s = 0; s < n_samples; ++s) {
        const double x = std::exp(rng.uniform(-6.0, 6.0));
        const double y = std::exp(rng.uniform(-6.0, 6.0));
        const Complex k1 = kernel_eval(conj_spec, x, y);
        const Complex k2 = std::conj(kernel_eval(spec, x, y));
        dev = std::max(dev, std::abs(k1 - k2));
    }
    return dev;
}

} // namespace bessel
