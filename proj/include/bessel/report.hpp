#pragma once

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "bessel/critical_line.hpp"
#include "bessel/domain.hpp"
#include "bessel/forms.hpp"
#include "bessel/holomorphy.hpp"
#include "bessel/io.hpp"
#include "bessel/norms.hpp"
#include "bessel/rng.hpp"

namespace bessel {

using Json = nlohmann::ordered_json;

/// Round to 12 significant digits so the serialized report is insensitive to
/// last-bit noise (e.g. threaded BLAS reductions) while still byte-stable.
inline double round12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::atof(buf);
}

struct CriterionResult {
    int id = 0;
    std::string label;
    bool pass = false;
    double seconds = 0.0;  // wall time; excluded from the canonical report
    Json details;
};

/// The acceptance suite. Norm criteria run their SVD checks on the wide
/// window t in [-24, 24]: the compression of the dilated convolution to an
/// interval of length L carries an O(1/L^2) norm deficit (about 3.3% at
/// L = 24), so the narrower default window cannot meet the stated
/// percentages; see the README for the measured window study.
class AcceptanceSuite {
public:
    explicit AcceptanceSuite(std::uint64_t seed = 20240901) : seed_(seed) {}

    std::vector<CriterionResult> run() {
        std::vector<CriterionResult> out;
        out.push_back(timed(1, "Q norm at alpha=1/4 (SVD vs 4/3, formulas to 1e-10)",
                            [this] { return criterion1(); }));
        out.push_back(timed(2, "norm formula agreement, 50 seeded alpha + 5 SVD",
                            [this] { return criterion2(); }));
        out.push_back(timed(3, "Z norms at m in {1.5, 2, 2+3i}",
                            [this] { return criterion3(); }));
        out.push_back(timed(4, "Green identity residuals, 6 samples",
                            [this] { return criterion4(); }));
        out.push_back(timed(5, "boundary coefficient recovery",
                            [this] { return criterion5(); }));
        out.push_back(timed(6, "inequality suite (estima/Rellich/Hardy/Kato)",
                            [this] { return criterion6(); }));
        out.push_back(timed(7, "critical line Re(m)=1 pathology",
                            [this] { return criterion7(); }));
        out.push_back(timed(8, "factorizations and bilinear forms",
                            [this] { return criterion8(); }));
        out.push_back(timed(9, "Kato-Rellich lab and kernel analyticity",
                            [this] { return criterion9(); }));
        out.push_back(timed(10, "determinism of the seeded report",
                            [&out, this] { return criterion10(out); }));
        return out;
    }

    /// Deterministic numeric content only: no timings, rounded doubles.
    static Json canonical(const std::vector<CriterionResult>& results) {
        Json doc;
        doc["suite"] = "bessel-acceptance";
        doc["criteria"] = Json::array();
        bool all = true;
        for (const auto& r : results) {
            Json c;
            c["id"] = r.id;
            c["label"] = r.label;
            c["pass"] = r.pass;
            c["details"] = r.details;
            doc["criteria"].push_back(c);
            all = all && r.pass;
        }
        doc["all_pass"] = all;
        return doc;
    }

    /// Criteria 1..9 (no labels or timings) serialized for the determinism
    /// comparison.
    static std::string numeric_canonical(const std::vector<CriterionResult>& rs) {
        Json doc = Json::array();
        for (const auto& c : rs) {
            if (c.id == 10) continue;
            Json e;
            e["id"] = c.id;
            e["pass"] = c.pass;
            e["details"] = c.details;
            doc.push_back(e);
        }
        return doc.dump(2);
    }

    std::vector<CriterionResult> run_numeric() {
        std::vector<CriterionResult> rs;
        rs.push_back(timed(1, "c1", [this] { return criterion1(); }));
        rs.push_back(timed(2, "c2", [this] { return criterion2(); }));
        rs.push_back(timed(3, "c3", [this] { return criterion3(); }));
        rs.push_back(timed(4, "c4", [this] { return criterion4(); }));
        rs.push_back(timed(5, "c5", [this] { return criterion5(); }));
        rs.push_back(timed(6, "c6", [this] { return criterion6(); }));
        rs.push_back(timed(7, "c7", [this] { return criterion7(); }));
        rs.push_back(timed(8, "c8", [this] { return criterion8(); }));
        rs.push_back(timed(9, "c9", [this] { return criterion9(); }));
        return rs;
    }

    // per-criterion wall-clock limits (checked by the acceptance binary)
    static double runtime_limit(int id) {
        if (id == 1) return 30.0;
        if (id == 2) return 300.0;
        return 0.0;  // unlimited
    }

private:
    std::uint64_t seed_;

    template <class F>
    CriterionResult timed(int id, std::string label, F&& body) {
        const auto start = std::chrono::steady_clock::now();
        CriterionResult r = body();
        r.id = id;
        r.label = std::move(label);
        r.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        return r;
    }

    static GridPtr svd_grid(int n) { return make_log_grid(-24.0, 24.0, n); }

    CriterionResult criterion1() {
        CriterionResult r;
        const auto p = CouplingParameter::from_m(Complex(0.5));
        const double target = 4.0 / 3.0;

        const auto dist = norm_from_distance(p, NormKind::Q);
        const auto mult = multiplier_sup(p, NormKind::Q);
        const double dist_dev = std::abs(dist.value - target) / target;
        const double mult_dev = std::abs(mult.value - target) / target;

        const auto op = discretize(KernelSpec(KernelKind::Q, p), svd_grid(2048));
        const auto svd = operator_norm_svd(op);
        const double svd_dev = std::abs(svd.value - target) / target;

        r.pass = svd_dev <= 0.02 && dist_dev <= 1e-10 && mult_dev <= 1e-10 &&
                 svd.value_coarse <= svd.value + 1e-9;
        r.details["svd"] = round12(svd.value);
        r.details["svd_coarse"] = round12(svd.value_coarse);
        r.details["svd_rel_dev"] = round12(svd_dev);
        r.details["distance_rel_dev"] = round12(dist_dev);
        r.details["multiplier_rel_dev"] = round12(mult_dev);
        r.details["omega_star"] = round12(mult.omega_star);
        return r;
    }

    CriterionResult criterion2() {
        CriterionResult r;
        Rng rng(seed_ ^ 0x02);
        double worst_formula = 0.0, worst_svd = 0.0;
        const auto grid = svd_grid(1024);
        for (int i = 0; i < 50; ++i) {
            const Complex m(rng.uniform(-0.85, 0.85), rng.uniform(-2.0, 2.0));
            const auto p = CouplingParameter::from_m(m, true);
            const auto mult = multiplier_sup(p, NormKind::Q);
            const double ref = 1.0 / parabola_distance(p.alpha());
            worst_formula =
                std::max(worst_formula, std::abs(mult.value - ref) / ref);
            if (i < 5) {
                const auto op = discretize(KernelSpec(KernelKind::Q, p), grid);
                const auto svd = operator_norm_svd(op, false);
                worst_svd = std::max(worst_svd, std::abs(svd.value - ref) / ref);
            }
        }
        r.pass = worst_formula <= 1e-8 && worst_svd <= 0.03;
        r.details["worst_formula_rel_dev"] = round12(worst_formula);
        r.details["worst_svd_rel_dev"] = round12(worst_svd);
        return r;
    }

    CriterionResult criterion3() {
        CriterionResult r;
        const Complex ms[3] = {Complex(1.5), Complex(2.0), Complex(2.0, 3.0)};
        double worst_formula = 0.0, worst_svd = 0.0;
        const auto grid = svd_grid(1024);
        r.details["samples"] = Json::array();
        for (const Complex m : ms) {
            const auto p = CouplingParameter::from_m(m);
            const auto mult = multiplier_sup(p, NormKind::Z);
            const double ref = 1.0 / parabola_distance(p.alpha());
            const auto op = discretize(KernelSpec(KernelKind::Z, p), grid);
            const auto svd = operator_norm_svd(op, false);
            const double fdev = std::abs(mult.value - ref) / ref;
            const double sdev = std::abs(svd.value - ref) / ref;
            worst_formula = std::max(worst_formula, fdev);
            worst_svd = std::max(worst_svd, sdev);
            Json s;
            s["m"] = format_complex(m);
            s["formula"] = round12(ref);
            s["svd"] = round12(svd.value);
            r.details["samples"].push_back(s);
        }
        r.pass = worst_formula <= 1e-8 && worst_svd <= 0.03;
        r.details["worst_formula_rel_dev"] = round12(worst_formula);
        r.details["worst_svd_rel_dev"] = round12(worst_svd);
        return r;
    }

    CriterionResult criterion4() {
        CriterionResult r;
        struct Sample {
            KernelKind kind;
            Complex m;
        };
        const Sample samples[6] = {
            {KernelKind::ForwardGreen, Complex(0.5)},          // inside
            {KernelKind::ForwardGreen, Complex(0.3, 0.5)},     // inside
            {KernelKind::ForwardGreen, Complex(0.0, 0.9)},     // inside
            {KernelKind::TwoSidedGreen, Complex(1.0, 1.0)},    // boundary
            {KernelKind::TwoSidedGreen, Complex(1.5)},         // outside
            {KernelKind::TwoSidedGreen, Complex(2.0, 3.0)},    // outside
        };
        const AnalyticBump bump{1.5, 0.2, {1.0, 0.0, 0.0, 0.0}};
        const auto g1 = make_log_grid(-12.0, 12.0, 2048);
        const auto g2 = make_log_grid(-12.0, 12.0, 4096);
        double worst = 0.0, worst_ratio = 1e9;
        r.details["samples"] = Json::array();
        for (const auto& s : samples) {
            const auto p = CouplingParameter::from_m(s.m);
            const KernelSpec spec(s.kind, p);
            const double res1 = green_residual(spec, bump.on(g1));
            const double res2 = green_residual(spec, bump.on(g2));
            const double ratio = res1 / res2;
            worst = std::max(worst, res1);
            worst_ratio = std::min(worst_ratio, ratio);
            Json row;
            row["kind"] = kind_name(s.kind);
            row["m"] = format_complex(s.m);
            row["residual_n2048"] = round12(res1);
            row["residual_n4096"] = round12(res2);
            r.details["samples"].push_back(row);
        }
        r.pass = worst <= 1e-3 && worst_ratio >= 2.5;
        r.details["worst_residual"] = round12(worst);
        r.details["worst_doubling_ratio"] = round12(worst_ratio);
        return r;
    }

    CriterionResult criterion5() {
        CriterionResult r;
        const Complex ms[3] = {Complex(0.3), Complex(0.5, 0.2), Complex(1.5)};
        const double a = 0.5;
        const auto grid = make_log_grid(-12.0, 12.0, 2048);
        const auto fine = make_log_grid(-12.0, 12.0, 2 * 2048 - 1);
        const CutoffSpec xi;
        double worst_power = 0.0, worst_minimal = 0.0;
        for (const Complex m : ms) {
            const auto p = CouplingParameter::from_m(m);
            // pure power: f = x^{1/2+m} xi, L f = 0 on (0, a)
            GridFunction f = sample(grid, [&](double x) {
                return std::pow(Complex(x), 0.5 + m) * xi.value(x);
            });
            GridFunction zero(grid);
            const auto bc = boundary_coefficients(p, f, zero, a);
            worst_power = std::max(worst_power, std::abs(bc.c_plus - 1.0));
            worst_power = std::max(worst_power, std::abs(bc.c_minus));

            // minimal element: forward solve of a bump, built on the nested
            // fine grid and downsampled, so the fit sees an independent route
            const AnalyticBump gb{0.3, 0.03, {1.0, 0.0, 0.0, 0.0}};
            const KernelSpec fw(KernelKind::CompressedForward, p, a);
            GridFunction g_fine = gb.on(fine);
            GridFunction f_fine = discretize(fw, fine).apply(g_fine);
            GridFunction fmin(grid);
            for (int j = 0; j < grid->size(); ++j)
                fmin.values[j] = f_fine.values[2 * j];
            const auto bc2 = boundary_coefficients(p, fmin, gb.on(grid), a);
            worst_minimal = std::max(worst_minimal, std::abs(bc2.c_plus));
            worst_minimal = std::max(worst_minimal, std::abs(bc2.c_minus));
        }
        r.pass = worst_power <= 1e-4 && worst_minimal <= 1e-4;
        r.details["worst_power_coeff_err"] = round12(worst_power);
        r.details["worst_minimal_coeff"] = round12(worst_minimal);
        return r;
    }

    CriterionResult criterion6() {
        CriterionResult r;
        Rng rng(seed_ ^ 0x06);
        const auto grid = make_log_grid(-12.0, 12.0, 1024);

        // (a) estima on 100 seeded superpositions
        const auto q14 =
            discretize(KernelSpec(KernelKind::Q, CouplingParameter::from_m(Complex(0.5))),
                       grid);
        double worst_estima = 0.0;
        for (int i = 0; i < 100; ++i) {
            GridFunction f(grid);
            const int nb = 1 + int(rng.uniform() * 3.0);
            for (int b = 0; b < nb; ++b) {
                const double c = std::exp(rng.uniform(-2.0, 2.0));
                const AnalyticBump bump{c, c * rng.uniform(0.05, 0.5), {1, 0, 0, 0}};
                const Complex amp = rng.complex_normal();
                for (int j = 0; j < grid->size(); ++j)
                    f.values[j] += amp * bump.value(grid->x()[j]);
            }
            if (norm_l2(f) == 0.0) continue;
            worst_estima = std::max(worst_estima, estima_check(q14, f).ratio);
        }
        const double indicator = estima_indicator_norm_sq();
        const double indicator_dev = std::abs(indicator - 5.0 / 6.0) / (5.0 / 6.0);

        // (b) Rellich on 100 seeded bumps + the closed-form example
        double worst_rellich = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double c = std::exp(rng.uniform(-1.0, 1.5));
            AnalyticBump bump{c, c * rng.uniform(0.05, 0.3),
                              {rng.normal(), rng.normal(), rng.normal(), 0.0}};
            if (std::abs(bump.poly[0]) + std::abs(bump.poly[1]) +
                    std::abs(bump.poly[2]) < 1e-3)
                bump.poly[0] += 1.0;
            AnalyticFunction u{[bump](double x) { return bump.value(x); },
                               [bump](double x) { return bump.d1(x); },
                               [bump](double x) { return bump.d2(x); },
                               std::max(1e-8, bump.support_lo()),
                               bump.support_hi()};
            worst_rellich = std::max(worst_rellich, rellich_check(u).ratio);
        }
        const AnalyticFunction u_example{
            [](double x) { return x * x * std::exp(-x); },
            [](double x) { return (2.0 * x - x * x) * std::exp(-x); },
            [](double x) { return (x * x - 4.0 * x + 2.0) * std::exp(-x); },
            0.0, 60.0};
        const auto rell = rellich_check(u_example);
        const double rell_dev = std::abs(rell.ratio - 0.375) / 0.375;

        // (c) Hardy closed-form example, ratio 1/2
        const AnalyticFunction hardy_u{
            [](double x) { return x * std::exp(-x); },
            [](double x) { return (1.0 - x) * std::exp(-x); },
            [](double x) { return (x - 2.0) * std::exp(-x); },
            0.0, 60.0};
        const auto hardy = hardy_check(hardy_u);
        const double hardy_dev = std::abs(hardy.ratio - 0.5) / 0.5;

        // (d) Kato bound on 20 seeded (alpha, g)
        double worst_kato = 0.0;
        for (int i = 0; i < 20; ++i) {
            const Complex m(rng.uniform(-0.8, 0.8), rng.uniform(-1.5, 1.5));
            const auto p = CouplingParameter::from_m(m, true);
            const double a = std::exp(rng.uniform(-1.0, 1.0));
            const double c = a * rng.uniform(0.2, 0.6);
            const AnalyticBump bump{c, 0.1 * c, {1, 0, 0, 0}};
            worst_kato =
                std::max(worst_kato, kato_bound_check(p, bump.on(grid), a).ratio);
        }

        r.pass = worst_estima <= 1.0 + 1e-6 && indicator_dev <= 1e-8 &&
                 worst_rellich <= 1.0 + 1e-6 && rell_dev <= 1e-8 &&
                 hardy_dev <= 1e-8 && worst_kato <= 1.0;
        r.details["worst_estima_ratio"] = round12(worst_estima);
        r.details["indicator_norm_sq"] = round12(indicator);
        r.details["worst_rellich_ratio"] = round12(worst_rellich);
        r.details["rellich_example_ratio"] = round12(rell.ratio);
        r.details["hardy_example_ratio"] = round12(hardy.ratio);
        r.details["worst_kato_ratio"] = round12(worst_kato);
        return r;
    }

    CriterionResult criterion7() {
        CriterionResult r;
        const auto grid = make_log_grid(-12.0, 12.0, 2048);
        const Complex m(1.0, 1.0);

        double worst_norm_dev = 0.0;
        for (const double tau : {0.6, 0.75, 0.9})
            worst_norm_dev = std::max(worst_norm_dev, g_tau_norm_sq(tau).rel_dev);

        const std::vector<double> xs{1e-2, 1e-3, 1e-4, 1e-5, 6.2e-6};
        double worst_profile_dev = 0.0;
        for (const double tau : {0.6, 0.75, 0.9})
            worst_profile_dev =
                std::max(worst_profile_dev,
                         divergence_profile({tau}, {1.0}, xs).max_rel_dev);

        // lower bound for x <= 1e-4: the single sigma = 0.6 witness and the
        // positive combination with sigma = min{0.6, 0.75, 0.9}
        const std::vector<double> x_small{1e-4, 1e-5, 1e-6, 1e-8};
        bool bound_ok = true;
        for (const auto& diag :
             {divergence_profile({0.6}, {1.0}, x_small),
              divergence_profile({0.6, 0.75, 0.9}, {1.0, 1.0, 1.0}, x_small)}) {
            for (size_t k = 0; k < diag.x_samples.size(); ++k)
                bound_ok = bound_ok &&
                           diag.closed_form[k] >= diag.lower_bound_curve[k];
        }

        // window drift: pathological f drifts with the model, the power
        // element stays flat
        const auto tf = g_tau(0.75, m, grid);
        const KernelSpec ts(KernelKind::CompressedTwoSided,
                            CouplingParameter::from_m(m), 1.0);
        GridFunction fpath = discretize(ts, grid).apply(tf.samples);
        const auto drift = window_drift(fpath, m, 0.75, 6.2e-6, 6.2e-2);
        const CutoffSpec xi;
        GridFunction fctl = sample(grid, [&](double x) {
            return std::pow(Complex(x), 0.5 + m) * xi.value(x);
        });
        const auto ctl = window_drift(fctl, m, 0.75, 6.2e-6, 6.2e-2);

        r.pass = worst_norm_dev <= 1e-6 && worst_profile_dev <= 1e-8 && bound_ok &&
                 drift.correlation >= 0.99 && ctl.rel_range <= 1e-3;
        r.details["worst_norm_rel_dev"] = round12(worst_norm_dev);
        r.details["worst_profile_rel_dev"] = round12(worst_profile_dev);
        r.details["lower_bound_ok"] = bound_ok;
        r.details["drift_correlation"] = round12(drift.correlation);
        r.details["drift_rel_range"] = round12(drift.rel_range);
        r.details["control_rel_range"] = round12(ctl.rel_range);
        return r;
    }

    CriterionResult criterion8() {
        CriterionResult r;
        const auto grid = make_log_grid(-12.0, 12.0, 2048);
        const AnalyticBump f{1.5, 0.15, {1.0, 0.0, 0.0, 0.0}};
        const AnalyticBump g{1.6, 0.2, {1.0, 0.0, 0.0, 0.0}};
        const Complex ms[6] = {Complex(0.5),        Complex(1.0, 1.0),
                               Complex(0.3),        Complex(2.0),
                               Complex(1.5, -0.5),  Complex(0.25, 0.1)};
        double worst_form = 0.0, worst_agree = 0.0, worst_transpose = 0.0;
        for (const Complex m : ms) {
            const auto res = factorization_check(m, FactorSign::plus, f, g, grid);
            worst_form = std::max(worst_form, res.dev_plus);
            if (m.real() > 0.0) {
                worst_form = std::max(worst_form, res.dev_minus);
                worst_agree =
                    std::max(worst_agree, two_factorizations_agree(m, f, g, grid));
            }
            // transpose relation through the stencil operators
            const FirstOrderSpec ap{0.5 + m};
            const FirstOrderSpec am{-(0.5 + m)};
            GridFunction fv = f.on(grid), gv = g.on(grid);
            const Complex lhs = bilinear_pairing(apply_first_order(ap, fv), gv);
            const Complex rhs = -bilinear_pairing(fv, apply_first_order(am, gv));
            worst_transpose = std::max(
                worst_transpose, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
        }
        double worst_positivity = 0.0;
        for (const double mr : {-0.5, 0.0, 0.5, 1.0, 2.0}) {
            const double q = positivity_check(Complex(mr), f, grid);
            worst_positivity = std::min(worst_positivity, q);
        }
        r.pass = worst_form <= 1e-6 && worst_agree <= 1e-6 &&
                 worst_transpose <= 1e-6 && worst_positivity >= -1e-10;
        r.details["worst_form_rel_dev"] = round12(worst_form);
        r.details["worst_two_route_dev"] = round12(worst_agree);
        r.details["worst_transpose_dev"] = round12(worst_transpose);
        r.details["min_positivity_value"] = round12(worst_positivity);
        return r;
    }

    CriterionResult criterion9() {
        CriterionResult r;
        Rng rng(seed_ ^ 0x09);

        // seeded 50x50 family with an exactly known relative bound c = 1/2
        const int n = 50;
        linalg::Matrix G(n, n), H(n, n);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                G(j, k) = rng.complex_normal();
                H(j, k) = rng.complex_normal();
            }
        linalg::Matrix A = 2.0 * linalg::Matrix::Identity(n, n) + 0.35 * G;
        const linalg::Matrix U =
            Eigen::HouseholderQR<linalg::Matrix>(H).householderQ();
        linalg::Matrix B = 0.5 * U * A;
        const auto fam = make_matrix_family(std::move(A), std::move(B));

        std::vector<Complex> zs;
        for (int k = 0; k < 8; ++k) {
            const double th = 2.0 * M_PI * k / 8.0;
            zs.push_back(0.9 * fam.disk_radius() *
                         Complex(std::cos(th), std::sin(th)));
        }
        const auto kr = kato_rellich_check(fam, zs, seed_ ^ 0x91);
        double worst_poly = 0.0, worst_cr = 0.0;
        for (const auto& s : kr.samples) {
            worst_poly = std::max(worst_poly, s.poly_residual);
            worst_cr = std::max(worst_cr, s.cauchy_riemann_residual);
        }

        const auto grid = make_log_grid(-12.0, 12.0, 1024);
        const AnalyticBump gb{0.2, 0.03, {1.0, 0.0, 0.0, 0.0}};
        double worst_cauchy = 0.0;
        bool decay_ok = true;
        for (const Complex alpha0 : {Complex(0.25), Complex(0.0), Complex(0.0, 0.5)}) {
            const auto rep = family_analyticity(alpha0, 0.1, gb.on(grid), 0.5);
            worst_cauchy = std::max(worst_cauchy, rep.cauchy_residual);
            decay_ok = decay_ok && rep.geometric_decay;
        }

        double worst_conj = 0.0;
        const auto p1 = CouplingParameter::from_m(Complex(0.3, 0.7));
        const auto p2 = CouplingParameter::from_m(Complex(1.2, 0.5));
        for (const KernelSpec& spec :
             {KernelSpec(KernelKind::Q, p1), KernelSpec(KernelKind::ForwardGreen, p1),
              KernelSpec(KernelKind::TwoSidedGreen, p2), KernelSpec(KernelKind::Z, p2)})
            worst_conj = std::max(worst_conj, conjugation_symmetry(spec));

        r.pass = worst_poly <= 1e-12 && worst_cr <= 1e-7 && kr.all_graph_ok &&
                 std::abs(fam.c - 0.5) <= 1e-10 && worst_cauchy <= 1e-6 &&
                 decay_ok && worst_conj <= 1e-14;
        r.details["relative_bound_c"] = round12(fam.c);
        r.details["worst_poly_residual"] = round12(worst_poly);
        r.details["worst_cauchy_riemann"] = round12(worst_cr);
        r.details["graph_bounds_ok"] = kr.all_graph_ok;
        r.details["worst_cauchy_residual"] = round12(worst_cauchy);
        r.details["taylor_decay_ok"] = decay_ok;
        r.details["worst_conjugation_dev"] = round12(worst_conj);
        return r;
    }

    CriterionResult criterion10(const std::vector<CriterionResult>& first_run) {
        CriterionResult r;
        const std::string first = numeric_canonical(first_run);
        AcceptanceSuite again(seed_);
        const std::string second = numeric_canonical(again.run_numeric());
        r.pass = first == second;
        r.details["byte_identical"] = r.pass;
        r.details["report_bytes"] = int(second.size());
        return r;
    }
};

} // namespace bessel
