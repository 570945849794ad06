#include <catch2/catch_amalgamated.hpp>

#include "bessel/critical_line.hpp"

using namespace bessel;
using Catch::Approx;

TEST_CASE("g_tau values and validation", "[critical]") {
    auto g = make_log_grid(-12.0, 1.0, 2048);
    // at x = e^{-1}: log(1/x) = 1, so the polylog factor drops out
    {
        const auto t = g_tau(0.75, Complex(1.0), g);
        const int j = g->nearest_index(std::exp(-1.0));
        const double x = g->x()[j];
        const Complex exact = std::pow(Complex(x), -0.5) *
                              std::pow(-std::log(x), -0.75);
        REQUIRE(std::abs(t.samples.values[j] - exact) < 1e-13);
        // spot value at exactly e^{-1} via the closed form
        REQUIRE(std::abs(detail::g_tau_value(0.75, Complex(1.0), std::exp(-1.0)) -
                         std::exp(0.5)) < 1e-13);
    }
    REQUIRE(std::abs(detail::g_tau_value(0.75, Complex(1.0, 1.0), std::exp(-1.0)) -
                     std::exp(0.5) * std::exp(Complex(0.0, -1.0))) < 1e-13);

    REQUIRE_THROWS_AS(g_tau(0.4, Complex(1.0), g), std::invalid_argument);
    REQUIRE_THROWS_AS(g_tau(1.0, Complex(1.0), g), std::invalid_argument);
    REQUIRE_THROWS_AS(g_tau(0.75, Complex(1.1), g), std::invalid_argument);
    REQUIRE_THROWS_AS(g_tau(0.75, Complex(1.0), make_log_grid(-12.0, -1.0, 64)),
                      std::invalid_argument);

    // extension: C^2 join at 1/2, zero from 1 on
    const auto t = g_tau(0.6, Complex(1.0, 0.5), g);
    for (int j = 0; j < g->size(); ++j)
        if (g->x()[j] > 1.0) REQUIRE(t.samples.values[j] == Complex{});
    const double h = 1e-6;
    const Complex below = detail::g_tau_value(0.6, Complex(1.0, 0.5), 0.5 - h);
    const Complex above = detail::g_tau_value(0.6, Complex(1.0, 0.5), 0.5 + h);
    REQUIRE(std::abs(below - above) < 1e-4);
    REQUIRE(std::abs(detail::g_tau_value(0.6, Complex(1.0, 0.5), 1.0)) < 1e-12);
}

TEST_CASE("g_tau norm closed form vs quadrature", "[critical]") {
    const auto n75 = g_tau_norm_sq(0.75);
    REQUIRE(n75.closed_form == Approx(2.4022448175728996).epsilon(1e-12));
    REQUIRE(n75.rel_dev < 1e-6);

    const auto n60 = g_tau_norm_sq(0.6);
    REQUIRE(n60.closed_form == Approx(5.380280425695025).epsilon(1e-12));
    REQUIRE(n60.rel_dev < 1e-6);

    const auto n90 = g_tau_norm_sq(0.9);
    REQUIRE(n90.closed_form == Approx(1.6759059551047888).epsilon(1e-12));
    REQUIRE(n90.rel_dev < 1e-6);

    // tau -> 1^- limit of the closed form is 1/log 2
    const auto n999 = g_tau_norm_sq(0.999);
    REQUIRE(n999.closed_form == Approx(1.0 / std::log(2.0)).epsilon(5e-3));
}

TEST_CASE("divergence profile values and monotonicity", "[critical]") {
    const std::vector<double> xs{std::exp(-25.0), std::exp(-16.0), 1e-3};
    const auto d = divergence_profile({0.75}, {1.0}, xs);
    REQUIRE(d.max_rel_dev < 1e-8);
    // I(e^{-16}) = 4 (16^{1/4} - (log 2)^{1/4})
    REQUIRE(d.closed_form[1] == Approx(4.350222776863886).epsilon(1e-12));
    REQUIRE(d.integral_values[0] > d.integral_values[1]);

    // x = 1/2 is the empty integral
    const auto d2 = divergence_profile({0.75}, {1.0}, {0.5 - 1e-12});
    REQUIRE(std::abs(d2.closed_form[0]) < 1e-9);

    // predicted single-tau bound threshold: L* = 2^{1/(1-tau)} log 2
    REQUIRE(d.predicted_threshold_L == Approx(11.090354888959125).epsilon(1e-12));
    const auto d06 = divergence_profile({0.6}, {1.0}, {1e-4, 1e-5});
    REQUIRE(d06.predicted_threshold_L == Approx(3.921032573874189).epsilon(1e-12));
    for (size_t k = 0; k < d06.x_samples.size(); ++k)
        REQUIRE(d06.closed_form[k] >= d06.lower_bound_curve[k]);
    // tau = 0.75 at x = e^{-16}: L = 16 > L*, bound holds
    REQUIRE(d.closed_form[1] >= d.lower_bound_curve[1]);
    // and at x = 1e-3 (L < L*) it does not yet
    REQUIRE(d.closed_form[2] < d.lower_bound_curve[2]);
}

TEST_CASE("dominance ordering of the tau family", "[critical]") {
    // g_tau / g_sigma = (log(1/x))^{sigma - tau}; at x = e^{-30},
    // sigma = 0.6, tau = 0.9 the ratio is 30^{-0.3}
    const double x = std::exp(-30.0);
    const Complex m(1.0, 0.3);
    const Complex r = detail::g_tau_value(0.9, m, x) / detail::g_tau_value(0.6, m, x);
    REQUIRE(std::abs(r) == Approx(0.36046543250433827).epsilon(1e-12));
    REQUIRE(std::abs(r) < 0.37);
}

TEST_CASE("ellr1 residual bounded and trending to zero", "[critical][slow]") {
    auto g = make_log_grid(-12.0, 12.0, 2048);
    const Complex m(1.0, 1.0);
    const auto t = g_tau(0.75, m, g);
    const auto pts = ellr1_residual(t, 1.0, {1e-2, 1e-3, 1e-4});
    for (const auto& pt : pts) REQUIRE(pt.residual <= pt.local_bound + 1e-6);
    REQUIRE(pts[0].residual > pts[2].residual);

    // zero source: identically zero residual
    TauFunction zero_t{0.75, m, GridFunction(g)};
    const auto zpts = ellr1_residual(zero_t, 1.0, {1e-2, 1e-4});
    for (const auto& pt : zpts) REQUIRE(pt.residual < 1e-14);
}

TEST_CASE("independence gram", "[critical]") {
    auto g = make_log_grid(-12.0, 1.0, 2048);
    const Complex m(1.0, 0.0);

    const auto single = independence_gram({0.75}, m, g);
    REQUIRE(single.smallest_singular_value > 0.0);

    const auto triple = independence_gram({0.6, 0.75, 0.9}, m, g);
    REQUIRE(triple.smallest_singular_value > 0.0);
    REQUIRE(triple.condition >= 1.0);

    REQUIRE_THROWS_AS(independence_gram({0.7, 0.7}, m, g), std::invalid_argument);
}

TEST_CASE("membership contrast via window drift", "[critical][slow]") {
    auto g = make_log_grid(-12.0, 12.0, 2048);
    const Complex m(1.0, 1.0);
    const auto t = g_tau(0.75, m, g);
    const KernelSpec ts(KernelKind::CompressedTwoSided, CouplingParameter::from_m(m),
                        1.0);
    const auto op = discretize(ts, g);
    GridFunction f = op.apply(t.samples);

    const auto drift = window_drift(f, m, 0.75, 6.2e-6, 6.2e-2);
    REQUIRE(drift.correlation >= 0.99);
    REQUIRE(drift.rel_range > 0.2);

    // the same f still satisfies the Green identity numerically on (0, 1)
    GridFunction lf = apply_bessel(CouplingParameter::from_m(m), f);
    double num = 0.0, den = 0.0;
    for (int j = 0; j < g->size(); ++j) {
        const double x = g->x()[j];
        if (x < 2e-5 || x > 0.4) continue;
        num += g->w()[j] * std::norm(lf.values[j] - t.samples.values[j]);
        den += g->w()[j] * std::norm(t.samples.values[j]);
    }
    REQUIRE(std::sqrt(num / den) < 1e-3);

    // control: the pure power has a limit, no drift
    const CutoffSpec xi;
    auto fctl = sample(g, [&](double x) {
        return std::pow(Complex(x), 0.5 + m) * xi.value(x);
    });
    const auto ctl = window_drift(fctl, m, 0.75, 6.2e-6, 6.2e-2);
    REQUIRE(ctl.rel_range < 1e-3);
    REQUIRE(std::abs(ctl.candidates.front() - 1.0) < 1e-10);
}
