#include <catch2/catch_amalgamated.hpp>

#include "bessel/calculus.hpp"
#include "bessel/grid.hpp"
#include "bessel/rng.hpp"

using namespace bessel;
using Catch::Approx;

TEST_CASE("make_log_grid basics", "[grid]") {
    auto g = make_log_grid(-1.0, 1.0, 16);
    REQUIRE(g->size() == 16);
    REQUIRE(g->x().front() == Approx(std::exp(-1.0)));
    REQUIRE(g->x().back() == Approx(std::exp(1.0)));
    for (int j = 1; j < g->size(); ++j) REQUIRE(g->x()[j] > g->x()[j - 1]);

    auto big = make_log_grid(-12.0, 12.0, 1024);
    const double t512 = 12.0 * (2.0 * 512.0 / 1023.0 - 1.0);
    REQUIRE(big->x()[512] == Approx(std::exp(t512)).epsilon(1e-14));
}

TEST_CASE("make_log_grid rejects bad input", "[grid]") {
    REQUIRE_THROWS_AS(make_log_grid(0.0, 0.0, 64), std::invalid_argument);
    REQUIRE_THROWS_AS(make_log_grid(-1.0, 1.0, 15), std::invalid_argument);
    REQUIRE_THROWS_AS(make_log_grid(1.0, -1.0, 64), std::invalid_argument);
    const double inf = std::numeric_limits<double>::infinity();
    REQUIRE_THROWS_AS(make_log_grid(-inf, 1.0, 64), std::invalid_argument);
}

TEST_CASE("quadrature integrates constants exactly", "[grid]") {
    auto g = make_log_grid(-12.0, 12.0, 1024);
    double sum = 0.0;
    for (double w : g->w()) sum += w;
    const double exact = g->x_max() - g->x_min();
    REQUIRE(std::abs(sum - exact) / exact < 1e-10);
}

TEST_CASE("integrate on sub-ranges", "[grid]") {
    auto g = make_log_grid(-6.0, 4.0, 4096);
    auto one = sample(g, [](double) { return 1.0; });
    REQUIRE(std::abs(integrate(one, 1.0, 2.0) - 1.0) < 1e-8);

    auto invx = sample(g, [](double x) { return 1.0 / x; });
    REQUIRE(std::abs(integrate(invx, std::exp(-1.0), std::exp(1.0)) - 2.0) < 1e-5);

    auto expf = sample(g, [](double x) { return std::exp(-x); });
    const double exact = 0.9900498316880144;  // e^{-0.01} - e^{-20}
    REQUIRE(std::abs(integrate(expf, 0.01, 20.0) - exact) < 1e-5);

    REQUIRE_THROWS_AS(integrate(one, 1e-5, 1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(integrate(one, 1.0, 1e5), std::invalid_argument);
}

TEST_CASE("quadrature error halves at second order", "[grid]") {
    const double exact = 1.0 - std::exp(-40.0);
    double prev = 0.0;
    std::vector<double> errs;
    for (int n : {512, 1024, 2048}) {
        auto g = make_log_grid(-14.0, std::log(40.0), n);
        auto f = sample(g, [](double x) { return std::exp(-x); });
        const Complex got = integrate(f, g->x_min(), 40.0);
        errs.push_back(std::abs(got.real() - exact));
        (void)prev;
    }
    REQUIRE(errs[0] / errs[1] > 3.0);
    REQUIRE(errs[1] / errs[2] > 3.0);
}

TEST_CASE("dilation transform substitution identities", "[grid]") {
    auto g = make_log_grid(-8.0, 3.0, 512);
    auto f = sample(g, [](double x) { return std::sqrt(x) * std::exp(-x); });
    auto u = dilation_transform(f);
    for (int j = 0; j < g->size(); ++j) {
        const double t = g->t()[j];
        REQUIRE(std::abs(u.values[j] - std::exp(t) * std::exp(-std::exp(t))) < 1e-13);
    }
    auto back = dilation_inverse(u);
    for (int j = 0; j < g->size(); ++j)
        REQUIRE(std::abs(back.values[j] - f.values[j]) <= 1e-12 * std::abs(f.values[j]));
}

TEST_CASE("dilation is a discrete isometry on random smooth data", "[grid]") {
    auto g = make_log_grid(-12.0, 12.0, 2048);
    Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        const double c = std::exp(rng.uniform(-1.5, 1.5));
        const double s = c * rng.uniform(0.1, 0.5);
        auto f = sample(g, [&](double x) {
            const double u = (x - c) / s;
            return std::exp(-u * u);
        });
        const double nx = norm_l2(f);
        const double nt = norm_l2_line(dilation_transform(f));
        REQUIRE(std::abs(nx - nt) / nx < 1e-6);
    }
}

TEST_CASE("differentiate matches analytic derivatives", "[grid]") {
    auto g = make_log_grid(-1.0, 1.0, 16385);
    auto f = sample(g, [](double x) { return x * x; });
    auto d1 = differentiate(f, 1);
    double worst = 0.0;
    for (int j = 8; j < g->size() - 8; ++j)
        worst = std::max(worst,
                         std::abs(d1.values[j] - 2.0 * g->x()[j]) / (2.0 * g->x()[j]));
    REQUIRE(worst < 1e-8);

    auto h = make_log_grid(-6.0, 2.0, 4096);
    auto fs = sample(h, [](double x) { return std::sqrt(x); });
    auto d2 = differentiate(fs, 2);
    double worst2 = 0.0;
    for (int j = 8; j < h->size() - 8; ++j) {
        const double x = h->x()[j];
        const double exact = -0.25 * std::pow(x, -1.5);
        worst2 = std::max(worst2, std::abs(d2.values[j] - exact) / std::abs(exact));
    }
    REQUIRE(worst2 < 1e-5);

    auto c = sample(h, [](double) { return 3.25; });
    REQUIRE(norm_l2(differentiate(c, 1)) < 1e-10);
    REQUIRE(norm_l2(differentiate(c, 2)) < 1e-10);
}

TEST_CASE("apply_bessel annihilates the nullspace powers", "[grid]") {
    auto g = make_log_grid(-8.0, 2.0, 2048);
    const Complex m(0.4, 0.3);
    const auto p = CouplingParameter::from_m(m);

    for (const Complex expo : {0.5 + m, 0.5 - m}) {
        auto f = sample(g, [&](double x) { return std::pow(Complex(x), expo); });
        auto lf = apply_bessel(p, f);
        // residual relative to the size of the cancelling terms
        double worst = 0.0;
        for (int j = 8; j < g->size() - 8; ++j) {
            const double x = g->x()[j];
            const double scale = std::abs(f.values[j]) / (x * x) + 1e-300;
            worst = std::max(worst, std::abs(lf.values[j]) / scale);
        }
        REQUIRE(worst < 1e-5);
    }

    // alpha = 1/4: potential vanishes, L x^2 = -2
    auto q = sample(g, [](double x) { return x * x; });
    auto lq = apply_bessel(CouplingParameter::from_m(Complex(0.5)), q);
    for (int j = 8; j < g->size() - 8; ++j)
        REQUIRE(std::abs(lq.values[j] + 2.0) < 1e-4);

    // general alpha on x^{3/2}: L f = (alpha - 1) x^{-1/2} exactly
    const auto p2 = CouplingParameter::from_alpha(Complex(2.0, 1.0));
    auto f32 = sample(g, [](double x) { return std::pow(x, 1.5); });
    auto lf32 = apply_bessel(p2, f32);
    for (int j = 8; j < g->size() - 8; ++j) {
        const double x = g->x()[j];
        const Complex exact = (p2.alpha() - 1.0) / std::sqrt(x);
        REQUIRE(std::abs(lf32.values[j] - exact) <= 1e-4 * std::abs(exact) + 1e-9);
    }
}

TEST_CASE("nullspace residual decays at stencil order", "[grid]") {
    const Complex m(0.35, 0.0);
    const auto p = CouplingParameter::from_m(m);
    std::vector<double> worst;
    for (int n : {512, 1024, 2048}) {
        auto g = make_log_grid(-4.0, 2.0, n);
        auto f = sample(g, [&](double x) { return std::pow(Complex(x), 0.5 + m); });
        auto lf = apply_bessel(p, f);
        double w = 0.0;
        for (int j = 4; j < g->size() - 4; ++j) w = std::max(w, std::abs(lf.values[j]));
        worst.push_back(w);
    }
    REQUIRE(worst[0] / worst[1] > 3.0);
    REQUIRE(worst[1] / worst[2] > 3.0);
}

TEST_CASE("log nullspace at alpha = 0", "[grid]") {
    const auto p0 = CouplingParameter::from_m(Complex(0.0));
    auto g = make_log_grid(-4.0, 2.0, 2048);
    for (auto fn : {+[](double x) { return Complex(std::sqrt(x)); },
                    +[](double x) { return Complex(std::sqrt(x) * std::log(x)); }}) {
        auto f = sample(g, fn);
        auto lf = apply_bessel(p0, f);
        double worst = 0.0;
        for (int j = 8; j < g->size() - 8; ++j)
            worst = std::max(worst, std::abs(lf.values[j]) * g->x()[j] * g->x()[j] /
                                        (std::abs(f.values[j]) + 1e-300));
        REQUIRE(worst < 1e-5);
    }
}

TEST_CASE("cutoff spec shape", "[grid]") {
    CutoffSpec xi;
    REQUIRE(xi.value(0.1) == 1.0);
    REQUIRE(xi.value(0.5) == 1.0);
    REQUIRE(xi.value(1.0) == 0.0);
    REQUIRE(xi.value(3.0) == 0.0);
    // C^2: finite-difference first/second derivatives continuous at junctions
    const double h = 1e-5;
    for (double x0 : {0.5, 1.0}) {
        const double dl = (xi.value(x0) - xi.value(x0 - h)) / h;
        const double dr = (xi.value(x0 + h) - xi.value(x0)) / h;
        REQUIRE(std::abs(dl - dr) < 1e-3);
    }
    REQUIRE_THROWS_AS((CutoffSpec{1.0, 0.5}.check()), std::invalid_argument);
}

TEST_CASE("coupling parameter invariants", "[grid]") {
    const auto p = CouplingParameter::from_m(Complex(0.3, -0.2));
    REQUIRE(p.alpha() == p.m() * p.m());
    REQUIRE_THROWS_AS(CouplingParameter::from_m(Complex(-0.5, 0.0)),
                      std::invalid_argument);
    REQUIRE_NOTHROW(CouplingParameter::from_m(Complex(-0.5, 0.0), true));
    REQUIRE_THROWS_AS(CouplingParameter::from_m(Complex(-1.5, 0.0), true),
                      std::invalid_argument);
    // principal branch
    const auto q = CouplingParameter::from_alpha(Complex(-4.0, 0.0));
    REQUIRE(q.m().real() >= 0.0);
    REQUIRE(std::abs(q.m() - Complex(0.0, 2.0)) < 1e-14);
}
