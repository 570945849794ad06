// Command-line front end: norm/region/green-check/boundary/check/pathology/
// factorize/holo/report, all emitting machine-readable output on stdout.
//
// Exit codes: 0 success, 2 validation failure, 1 internal error, 64 usage.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bessel/critical_line.hpp"
#include "bessel/domain.hpp"
#include "bessel/forms.hpp"
#include "bessel/holomorphy.hpp"
#include "bessel/io.hpp"
#include "bessel/norms.hpp"
#include "bessel/report.hpp"

namespace {

using bessel::Complex;
using bessel::Json;

struct CommonOpts {
    std::string config_path;
    std::optional<double> t_min, t_max;
    std::optional<int> n;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> format;

    bessel::RunConfig resolve() const {
        bessel::RunConfig cfg;
        if (!config_path.empty()) cfg = bessel::load_config(config_path);
        if (t_min) cfg.t_min = *t_min;
        if (t_max) cfg.t_max = *t_max;
        if (n) cfg.n = *n;
        if (seed) cfg.seed = *seed;
        if (format) cfg.format = *format;
        cfg.validate();
        return cfg;
    }
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "key=value config file");
    cmd->add_option("--t-min", opts.t_min, "log-grid lower bound (default -12)");
    cmd->add_option("--t-max", opts.t_max, "log-grid upper bound (default 12)");
    cmd->add_option("--n", opts.n, "number of grid nodes (default 1024)");
    cmd->add_option("--seed", opts.seed, "seed for randomized suites");
    cmd->add_option("--out", opts.format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
}

Json norm_estimate_json(const bessel::NormEstimate& e) {
    Json j;
    j["method"] = bessel::method_name(e.method);
    j["value"] = bessel::round12(e.value);
    if (e.method == bessel::NormMethod::multiplier_sup)
        j["omega_star"] = bessel::round12(e.omega_star);
    if (e.method == bessel::NormMethod::discretized_svd) {
        j["grid"] = {{"n", e.grid_n}, {"t_min", e.grid_t_min}, {"t_max", e.grid_t_max}};
        j["value_coarse"] = bessel::round12(e.value_coarse);
    }
    return j;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"bessel: numerical lab for half-line operators "
                 "-d^2/dx^2 + (alpha - 1/4)/x^2 with complex coupling"};
    app.require_subcommand(1);
    argv = app.ensure_utf8(argv);

    // norm
    auto* norm_cmd = app.add_subcommand("norm", "three-way operator norm report");
    CommonOpts norm_opts;
    std::string norm_alpha, norm_m, norm_kind = "Q";
    norm_cmd->add_option("--alpha", norm_alpha, "coupling alpha, e.g. 0.25 or -3+4i");
    norm_cmd->add_option("--m", norm_m, "coupling m (alpha = m^2)");
    norm_cmd->add_option("--kind", norm_kind, "Q or Z")
        ->check(CLI::IsMember({"Q", "Z"}));
    add_common(norm_cmd, norm_opts);

    // region
    auto* region_cmd = app.add_subcommand("region", "classify alpha against the parabola");
    std::string region_alpha;
    region_cmd->add_option("--alpha", region_alpha)->required();

    // green-check
    auto* green_cmd = app.add_subcommand("green-check", "Green identity residual");
    CommonOpts green_opts;
    std::string green_m, green_kind = "forward";
    green_cmd->add_option("--m", green_m)->required();
    green_cmd->add_option("--kind", green_kind, "forward or twosided")
        ->check(CLI::IsMember({"forward", "twosided"}));
    add_common(green_cmd, green_opts);

    // boundary
    auto* boundary_cmd =
        app.add_subcommand("boundary", "boundary coefficients (c+, c-) of f");
    CommonOpts boundary_opts;
    std::string boundary_m, boundary_f, boundary_g;
    double boundary_a = 0.5;
    boundary_cmd->add_option("--m", boundary_m)->required();
    boundary_cmd->add_option("--a", boundary_a, "compression cutoff (default 0.5)");
    boundary_cmd->add_option("--f", boundary_f, "CSV file with f (default: x^{1/2+m} xi demo)");
    boundary_cmd->add_option("--g", boundary_g, "CSV file with g = L f (default: zero)");
    add_common(boundary_cmd, boundary_opts);

    // check
    auto* check_cmd = app.add_subcommand("check", "inequality checks");
    CommonOpts check_opts;
    std::string check_kind = "estima";
    int check_count = 20;
    check_cmd->add_option("--kind", check_kind)
        ->check(CLI::IsMember({"estima", "rellich", "hardy", "kato"}));
    check_cmd->add_option("--count", check_count, "number of seeded samples");
    add_common(check_cmd, check_opts);

    // pathology
    auto* path_cmd = app.add_subcommand("pathology", "Re(m)=1 divergence diagnostics");
    CommonOpts path_opts;
    std::string path_m = "1+1i";
    double path_tau = 0.75;
    path_cmd->add_option("--tau", path_tau, "tau in (1/2, 1)");
    path_cmd->add_option("--m", path_m, "m with Re(m) = 1");
    add_common(path_cmd, path_opts);

    // factorize
    auto* fact_cmd = app.add_subcommand("factorize", "bilinear form factorizations");
    CommonOpts fact_opts;
    std::string fact_m, fact_sign = "plus";
    fact_cmd->add_option("--m", fact_m)->required();
    fact_cmd->add_option("--sign", fact_sign)->check(CLI::IsMember({"plus", "minus"}));
    add_common(fact_cmd, fact_opts);

    // holo
    auto* holo_cmd = app.add_subcommand("holo", "Kato-Rellich lab and analyticity");
    CommonOpts holo_opts;
    std::string holo_alpha0 = "0.25";
    double holo_r = 0.1;
    holo_cmd->add_option("--alpha0", holo_alpha0, "disk center");
    holo_cmd->add_option("--r", holo_r, "disk radius");
    add_common(holo_cmd, holo_opts);

    // report
    auto* report_cmd = app.add_subcommand("report", "full acceptance report (JSON)");
    CommonOpts report_opts;
    add_common(report_cmd, report_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // prints help, exit 0
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    }

    if (norm_cmd->parsed()) {
        const auto cfg = norm_opts.resolve();
        if (norm_alpha.empty() == norm_m.empty())
            throw std::invalid_argument("norm: pass exactly one of --alpha / --m");
        const auto p = norm_alpha.empty()
                           ? bessel::CouplingParameter::from_m(
                                 bessel::parse_complex(norm_m), true)
                           : bessel::CouplingParameter::from_alpha(
                                 bessel::parse_complex(norm_alpha));
        const auto kind =
            norm_kind == "Q" ? bessel::NormKind::Q : bessel::NormKind::Z;
        const auto rep = bessel::norm_report(p, kind, cfg.grid());
        Json j;
        j["alpha"] = bessel::format_complex(p.alpha());
        j["kind"] = norm_kind;
        j["distance_closed_form"] = norm_estimate_json(rep.distance);
        j["multiplier_sup"] = norm_estimate_json(rep.multiplier);
        j["discretized_svd"] = norm_estimate_json(rep.svd);
        j["max_pairwise_rel_dev"] = bessel::round12(rep.max_pairwise_rel_dev);
        std::cout << j.dump(2) << '\n';
        return 0;
    }

    if (region_cmd->parsed()) {
        const Complex alpha = bessel::parse_complex(region_alpha);
        const auto rc = bessel::region_classify(alpha);
        Json j;
        j["alpha"] = bessel::format_complex(alpha);
        j["class"] = bessel::region_name(rc.region);
        j["distance"] = bessel::round12(rc.distance);
        std::cout << j.dump(2) << '\n';
        return 0;
    }

    if (green_cmd->parsed()) {
        const auto cfg = green_opts.resolve();
        const auto p =
            bessel::CouplingParameter::from_m(bessel::parse_complex(green_m), true);
        const auto kind = green_kind == "forward" ? bessel::KernelKind::ForwardGreen
                                                  : bessel::KernelKind::TwoSidedGreen;
        const bessel::AnalyticBump bump{1.5, 0.2, {1.0, 0.0, 0.0, 0.0}};
        const bessel::KernelSpec spec(kind, p);
        const auto g1 = cfg.grid();
        const auto g2 = bessel::make_log_grid(cfg.t_min, cfg.t_max, 2 * cfg.n);
        Json j;
        j["m"] = bessel::format_complex(p.m());
        j["kind"] = green_kind;
        j["residual"] = bessel::round12(bessel::green_residual(spec, bump.on(g1)));
        j["residual_doubled_n"] =
            bessel::round12(bessel::green_residual(spec, bump.on(g2)));
        std::cout << j.dump(2) << '\n';
        return 0;
    }

    if (boundary_cmd->parsed()) {
        const auto cfg = boundary_opts.resolve();
        const auto p =
            bessel::CouplingParameter::from_m(bessel::parse_complex(boundary_m), true);
        bessel::GridFunction f, g;
        if (!boundary_f.empty()) {
            f = bessel::read_grid_function_csv(boundary_f);
            g = boundary_g.empty() ? bessel::GridFunction(f.grid)
                                   : bessel::read_grid_function_csv(boundary_g);
        } else {
            const auto grid = cfg.grid();
            const bessel::CutoffSpec xi;
            f = bessel::sample(grid, [&](double x) {
                return std::pow(Complex(x), 0.5 + p.m()) * xi.value(x);
            });
            g = bessel::GridFunction(grid);
        }
        const auto bc = bessel::boundary_coefficients(p, f, g, boundary_a);
        Json j;
        j["m"] = bessel::format_complex(p.m());
        j["a"] = boundary_a;
        j["c_plus"] = bessel::format_complex(bc.c_plus);
        j["c_minus"] = bessel::format_complex(bc.c_minus);
        j["residual"] = bessel::round12(bc.residual);
        j["basis"] = bc.basis == bessel::BoundaryBasis::power_power ? "power/power"
                                                                    : "power/log";
        j["condition"] = bessel::round12(bc.condition);
        j["ill_conditioned"] = bc.ill_conditioned;
        j["source_mismatch_warning"] = bc.source_mismatch_warning;
        std::cout << j.dump(2) << '\n';
        return 0;
    }

    if (check_cmd->parsed()) {
        const auto cfg = check_opts.resolve();
        bessel::Rng rng(cfg.seed);
        const auto grid = cfg.grid();
        Json j;
        j["kind"] = check_kind;
        Json rows = Json::array();
        if (check_kind == "estima") {
            const auto q14 = bessel::discretize(
                bessel::KernelSpec(bessel::KernelKind::Q,
                                   bessel::CouplingParameter::from_m(Complex(0.5))),
                grid);
            for (int i = 0; i < check_count; ++i) {
                const double c = std::exp(rng.uniform(-2.0, 2.0));
                const bessel::AnalyticBump bump{c, c * rng.uniform(0.05, 0.5),
                                                {1.0, 0.0, 0.0, 0.0}};
                const auto rec = bessel::estima_check(q14, bump.on(grid));
                rows.push_back({{"lhs", bessel::round12(rec.lhs)},
                                {"rhs", bessel::round12(rec.rhs)},
                                {"ratio", bessel::round12(rec.ratio)}});
            }
            j["indicator_norm_sq"] = bessel::round12(bessel::estima_indicator_norm_sq());
        } else if (check_kind == "kato") {
            for (int i = 0; i < check_count; ++i) {
                const Complex m(rng.uniform(-0.8, 0.8), rng.uniform(-1.5, 1.5));
                const auto p = bessel::CouplingParameter::from_m(m, true);
                const double a = std::exp(rng.uniform(-1.0, 1.0));
                const double c = a * rng.uniform(0.2, 0.6);
                const bessel::AnalyticBump bump{c, 0.1 * c, {1.0, 0.0, 0.0, 0.0}};
                const auto rec = bessel::kato_bound_check(p, bump.on(grid), a);
                rows.push_back({{"m", bessel::format_complex(m)},
                                {"ratio", bessel::round12(rec.ratio)}});
            }
        } else {
            for (int i = 0; i < check_count; ++i) {
                const double c = std::exp(rng.uniform(-1.0, 1.5));
                const bessel::AnalyticBump bump{
                    c, c * rng.uniform(0.05, 0.3), {1.0 + rng.normal(), rng.normal(), 0.0, 0.0}};
                bessel::AnalyticFunction u{
                    [bump](double x) { return bump.value(x); },
                    [bump](double x) { return bump.d1(x); },
                    [bump](double x) { return bump.d2(x); },
                    std::max(1e-8, bump.support_lo()), bump.support_hi()};
                const auto rec = check_kind == "rellich" ? bessel::rellich_check(u)
                                                         : bessel::hardy_check(u);
                rows.push_back({{"lhs", bessel::round12(rec.lhs)},
                                {"rhs", bessel::round12(rec.rhs)},
                                {"ratio", bessel::round12(rec.ratio)}});
            }
        }
        j["samples"] = rows;
        std::cout << j.dump(2) << '\n';
        return 0;
    }

    if (path_cmd->parsed()) {
        const auto cfg = path_opts.resolve();
        const Complex m = bessel::parse_complex(path_m);
        const auto grid = cfg.grid();
        const auto tf = bessel::g_tau(path_tau, m, grid);
        std::vector<double> xs;
        for (double x = 1e-1; x > 1.2 * grid->x_min(); x /= 2.0) xs.push_back(x);
        const auto diag = bessel::divergence_profile(tf, xs);
        const auto ell = bessel::ellr1_residual(tf, 1.0, xs);
        if (cfg.format == "csv") {
            std::printf("x,|I|,bound,residual\n");
            for (size_t k = 0; k < xs.size(); ++k)
                std::printf("%.17g,%.17g,%.17g,%.17g\n", diag.x_samples[k],
                            std::abs(diag.integral_values[k]),
                            diag.lower_bound_curve[k], ell[k].residual);
        } else {
            Json j;
            j["tau"] = path_tau;
            j["m"] = bessel::format_complex(m);
            Json rows = Json::array();
            for (size_t k = 0; k < xs.size(); ++k)
                rows.push_back({{"x", diag.x_samples[k]},
                                {"absI", bessel::round12(std::abs(diag.integral_values[k]))},
                                {"bound", bessel::round12(diag.lower_bound_curve[k])},
                                {"residual", bessel::round12(ell[k].residual)}});
            j["rows"] = rows;
            std::cout << j.dump(2) << '\n';
        }
        return 0;
    }

    if (fact_cmd->parsed()) {
        const auto cfg = fact_opts.resolve();
        const Complex m = bessel::parse_complex(fact_m);
        const auto sign = fact_sign == "plus" ? bessel::FactorSign::plus
                                              : bessel::FactorSign::minus;
        const bessel::AnalyticBump f{1.5, 0.15, {1.0, 0.0, 0.0, 0.0}};
        const bessel::AnalyticBump g{1.6, 0.2, {1.0, 0.0, 0.0, 0.0}};
        const auto res = bessel::factorization_check(m, sign, f, g, cfg.grid());
        Json j;
        j["m"] = bessel::format_complex(m);
        j["sign"] = fact_sign;
        j["value_plus"] = bessel::format_complex(res.value_plus);
        if (m.real() > 0.0) j["value_minus"] = bessel::format_complex(res.value_minus);
        j["reference"] = bessel::format_complex(res.reference);
        j["dev_plus"] = bessel::round12(res.dev_plus);
        j["dev_minus"] = bessel::round12(res.dev_minus);
        j["composition_residual"] = bessel::round12(res.composition_residual);
        std::cout << j.dump(2) << '\n';
        return 0;
    }

    if (holo_cmd->parsed()) {
        const auto cfg = holo_opts.resolve();
        bessel::Rng rng(cfg.seed);
        const int n = 50;
        bessel::linalg::Matrix G(n, n), H(n, n);
        for (int jj = 0; jj < n; ++jj)
            for (int k = 0; k < n; ++k) {
                G(jj, k) = rng.complex_normal();
                H(jj, k) = rng.complex_normal();
            }
        bessel::linalg::Matrix A =
            2.0 * bessel::linalg::Matrix::Identity(n, n) + 0.35 * G;
        const bessel::linalg::Matrix U =
            Eigen::HouseholderQR<bessel::linalg::Matrix>(H).householderQ();
        bessel::linalg::Matrix B = 0.5 * U * A;
        const auto fam = bessel::make_matrix_family(std::move(A), std::move(B));
        std::vector<Complex> zs;
        for (int k = 0; k < 8; ++k) {
            const double th = 2.0 * M_PI * k / 8.0;
            zs.push_back(0.9 * fam.disk_radius() * Complex(std::cos(th), std::sin(th)));
        }
        const auto kr = bessel::kato_rellich_check(fam, zs, cfg.seed ^ 0x91);
        Json j;
        j["relative_bound_c"] = bessel::round12(fam.c);
        Json zrows = Json::array();
        for (const auto& s : kr.samples)
            zrows.push_back({{"z", bessel::format_complex(s.z)},
                             {"poly_residual", bessel::round12(s.poly_residual)},
                             {"cauchy_riemann", bessel::round12(s.cauchy_riemann_residual)},
                             {"graph_bounds_ok", s.graph_bounds_ok}});
        j["z_samples"] = zrows;

        const Complex alpha0 = bessel::parse_complex(holo_alpha0);
        const bessel::AnalyticBump gb{0.2, 0.03, {1.0, 0.0, 0.0, 0.0}};
        const auto grid = cfg.grid();
        const auto rep = bessel::family_analyticity(alpha0, holo_r, gb.on(grid), 0.5);
        j["alpha0"] = bessel::format_complex(alpha0);
        j["cauchy_residual"] = bessel::round12(rep.cauchy_residual);
        j["taylor_decay_ok"] = rep.geometric_decay;
        std::cout << j.dump(2) << '\n';
        return 0;
    }

    if (report_cmd->parsed()) {
        const auto cfg = report_opts.resolve();
        bessel::AcceptanceSuite suite(cfg.seed);
        const auto results = suite.run();
        std::cout << bessel::AcceptanceSuite::canonical(results).dump(2) << '\n';
        bool all = true;
        for (const auto& r : results) all = all && r.pass;
        return all ? 0 : 2;
    }

    return 64;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const CLI::ParseError&) {
        std::cerr << "usage: bessel <norm|region|green-check|boundary|check|"
                     "pathology|factorize|holo|report> [options]\n";
        return 64;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
}
