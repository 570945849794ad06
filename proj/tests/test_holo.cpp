#include <catch2/catch_amalgamated.hpp>

#include "bessel/holomorphy.hpp"

using namespace bessel;
using Catch::Approx;

namespace {

linalg::Matrix random_matrix(Rng& rng, int n) {
    linalg::Matrix m(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) m(j, k) = rng.complex_normal();
    return m;
}

} // namespace

TEST_CASE("relative bound basic cases", "[holo]") {
    Rng rng(3);
    const int n = 24;
    linalg::Matrix A = 2.0 * linalg::Matrix::Identity(n, n) + 0.3 * random_matrix(rng, n);

    REQUIRE(relative_bound(A, A) == Approx(1.0).epsilon(1e-10));
    REQUIRE(relative_bound(A, linalg::Matrix::Zero(n, n)) == Approx(0.0).margin(1e-12));

    const linalg::Matrix U =
        Eigen::HouseholderQR<linalg::Matrix>(random_matrix(rng, n)).householderQ();
    REQUIRE(relative_bound(A, 0.5 * U * A) == Approx(0.5).epsilon(1e-10));

    REQUIRE_THROWS_AS(relative_bound(linalg::Matrix::Zero(n, n), A),
                      std::invalid_argument);
}

TEST_CASE("kato-rellich polynomial and graph-norm checks", "[holo]") {
    Rng rng(8);
    const int n = 50;
    linalg::Matrix A = 2.0 * linalg::Matrix::Identity(n, n) + 0.35 * random_matrix(rng, n);
    const linalg::Matrix U =
        Eigen::HouseholderQR<linalg::Matrix>(random_matrix(rng, n)).householderQ();
    linalg::Matrix B = 0.5 * U * A;
    const auto fam = make_matrix_family(std::move(A), std::move(B));
    REQUIRE(fam.c == Approx(0.5).epsilon(1e-10));
    REQUIRE(fam.disk_radius() == Approx(2.0).epsilon(1e-10));

    std::vector<Complex> zs;
    for (int k = 0; k < 8; ++k) {
        const double th = 2.0 * M_PI * k / 8.0;
        zs.push_back(0.9 * fam.disk_radius() * Complex(std::cos(th), std::sin(th)));
    }
    const auto rep = kato_rellich_check(fam, zs);
    REQUIRE(rep.poly_ok);
    REQUIRE(rep.all_graph_ok);
    for (const auto& s : rep.samples) {
        REQUIRE(s.poly_residual <= 1e-12);
        REQUIRE(s.cauchy_riemann_residual <= 1e-7);
    }
    // z = 0: ratio exactly 1
    const auto rep0 = kato_rellich_check(fam, {Complex(0.0)});
    REQUIRE(rep0.samples[0].graph_ratio_min == Approx(1.0).epsilon(1e-12));
    REQUIRE(rep0.samples[0].graph_ratio_max == Approx(1.0).epsilon(1e-12));

    REQUIRE_THROWS_AS(kato_rellich_check(fam, {Complex(2.5)}), std::invalid_argument);

    // B = 0: the family is constant in z
    const auto fam0 = make_matrix_family(fam.A, linalg::Matrix::Zero(n, n));
    const auto repc = kato_rellich_check(fam0, {Complex(0.7, 0.2)});
    REQUIRE(repc.samples[0].poly_residual <= 1e-14);
}

TEST_CASE("disk-edge failure has a constructed witness", "[holo]") {
    // B = M A with M = diag(c, c/(1+eps), ...): at z = -(1+eps)/c the operator
    // A + zB kills the second coordinate's preimage while |z| is only slightly
    // outside the disk, so the uniform graph-norm lower bound degenerates.
    Rng rng(12);
    const int n = 20;
    const double c = 0.5, eps = 0.05;
    linalg::Matrix A = 4.0 * linalg::Matrix::Identity(n, n) + 0.2 * random_matrix(rng, n);
    Eigen::VectorXcd diag(n);
    diag[0] = c;
    diag[1] = c / (1.0 + eps);
    for (int j = 2; j < n; ++j) diag[j] = c * rng.uniform(0.1, 0.8);
    linalg::Matrix M = diag.asDiagonal();
    linalg::Matrix B = M * A;
    const auto fam = make_matrix_family(A, B);
    REQUIRE(fam.c == Approx(c).epsilon(1e-9));

    const Complex z = -(1.0 + eps) / c;
    REQUIRE(std::abs(z) > fam.disk_radius());
    // witness: f = A^{-1} e_1 (the eigen-direction of the degenerate factor)
    Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(n);
    e1[1] = 1.0;
    const Eigen::VectorXcd f = Eigen::PartialPivLU<linalg::Matrix>(fam.A).solve(e1);
    const double base = f.squaredNorm() + (fam.A * f).squaredNorm();
    const double pert = f.squaredNorm() + ((fam.A + z * fam.B) * f).squaredNorm();
    // inside the disk the ratio stays above (1 - |z| c)^2; the witness drops
    // far below the value that bound would extrapolate to
    const double extrapolated = (1.0 - std::abs(z) * c) * (1.0 - std::abs(z) * c);
    REQUIRE(pert / base < 0.5 * extrapolated + 1e-6);
}

TEST_CASE("family analyticity over the forward solve", "[holo][slow]") {
    auto grid = make_log_grid(-12.0, 12.0, 1024);
    const AnalyticBump gb{0.2, 0.03, {1.0, 0.0, 0.0, 0.0}};
    const GridFunction g = gb.on(grid);

    for (const Complex alpha0 : {Complex(0.25), Complex(0.0), Complex(0.0, 0.5)}) {
        const auto rep = family_analyticity(alpha0, 0.1, g, 0.5);
        REQUIRE(rep.cauchy_residual <= 1e-6);
        REQUIRE(rep.geometric_decay);
    }

    // disk reaching the parabola is rejected
    REQUIRE_THROWS_AS(family_analyticity(Complex(0.25), 0.8, g, 0.5),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(family_analyticity(Complex(4.0), 0.1, g, 0.5),
                      std::invalid_argument);
}

TEST_CASE("analyticity residual grows toward the parabola", "[holo][slow]") {
    auto grid = make_log_grid(-12.0, 12.0, 512);
    const AnalyticBump gb{0.2, 0.03, {1.0, 0.0, 0.0, 0.0}};
    const GridFunction g = gb.on(grid);
    // fixed radius, centers marching toward the boundary: the top Taylor
    // magnitudes (relative convergence radius) deteriorate monotonically
    double prev_tail = 0.0;
    for (const double a_re : {0.0, 0.45, 0.75}) {
        const auto rep = family_analyticity(Complex(a_re), 0.12, g, 0.5, 16, 8);
        const double tail = rep.taylor_mags[5] + rep.taylor_mags[6];
        REQUIRE(tail >= prev_tail - 1e-12);
        prev_tail = tail;
    }
}

TEST_CASE("conjugation symmetry across kernel kinds", "[holo]") {
    const auto p1 = CouplingParameter::from_m(Complex(0.3, 0.7));
    const auto p2 = CouplingParameter::from_m(Complex(1.2, 0.5));
    REQUIRE(conjugation_symmetry(KernelSpec(KernelKind::Q, p1)) <= 1e-14);
    REQUIRE(conjugation_symmetry(KernelSpec(KernelKind::ForwardGreen, p1)) <= 1e-14);
    REQUIRE(conjugation_symmetry(KernelSpec(KernelKind::TwoSidedGreen, p2)) <= 1e-14);
    REQUIRE(conjugation_symmetry(KernelSpec(KernelKind::Z, p2)) <= 1e-14);
    // real m: identity
    const auto pr = CouplingParameter::from_m(Complex(0.8));
    REQUIRE(conjugation_symmetry(KernelSpec(KernelKind::Q, pr)) == 0.0);
}
