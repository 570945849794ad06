#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "bessel/io.hpp"
#include "bessel/rng.hpp"

using namespace bessel;
using Catch::Approx;

TEST_CASE("complex parsing", "[io]") {
    REQUIRE(parse_complex("0.25") == Complex(0.25, 0.0));
    REQUIRE(parse_complex("-3+4i") == Complex(-3.0, 4.0));
    REQUIRE(parse_complex("1+1i") == Complex(1.0, 1.0));
    REQUIRE(parse_complex("0.5+0.2i") == Complex(0.5, 0.2));
    REQUIRE(parse_complex("2i") == Complex(0.0, 2.0));
    REQUIRE(parse_complex("-i") == Complex(0.0, -1.0));
    REQUIRE(parse_complex("1-i") == Complex(1.0, -1.0));
    REQUIRE(parse_complex("1e-3+2.5e2i") == Complex(1e-3, 250.0));
    REQUIRE(parse_complex(" 1 + 2 i ") == Complex(1.0, 2.0));
    REQUIRE_THROWS_AS(parse_complex(""), std::exception);
    REQUIRE_THROWS_AS(parse_complex("abc"), std::exception);
    REQUIRE_THROWS_AS(parse_complex("1+2"), std::exception);
}

TEST_CASE("complex round trip through the formatter", "[io]") {
    Rng rng(4);
    for (int s = 0; s < 50; ++s) {
        const Complex z(rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0));
        REQUIRE(parse_complex(format_complex(z)) == z);
    }
}

TEST_CASE("grid function CSV round trip", "[io]") {
    auto g = make_log_grid(-3.0, 2.0, 64);
    auto f = sample(g, [](double x) { return Complex(std::exp(-x), std::sin(x)); });
    std::ostringstream os;
    write_grid_function_csv(f, os);
    const std::string text = os.str();
    REQUIRE(text.rfind("x,re(f),im(f)\n", 0) == 0);

    std::istringstream is(text);
    const GridFunction back = read_grid_function_csv(is);
    REQUIRE(back.size() == f.size());
    REQUIRE(back.grid->t_min() == Approx(g->t_min()).epsilon(1e-12));
    for (int j = 0; j < f.size(); ++j)
        REQUIRE(std::abs(back.values[j] - f.values[j]) < 1e-15);
}

TEST_CASE("grid function CSV validation", "[io]") {
    std::istringstream no_header("1,2,3\n2,3,4\n");
    REQUIRE_THROWS_AS(read_grid_function_csv(no_header), std::invalid_argument);

    // non log-uniform nodes rejected
    std::ostringstream os;
    os << "x,re(f),im(f)\n";
    for (int j = 0; j < 32; ++j) os << (1.0 + j) << ",0,0\n";
    std::istringstream is(os.str());
    REQUIRE_THROWS_AS(read_grid_function_csv(is), std::invalid_argument);
}

TEST_CASE("operator CSV shape", "[io]") {
    auto g = make_log_grid(-1.0, 1.0, 16);
    const auto op = discretize(
        KernelSpec(KernelKind::Q, CouplingParameter::from_m(Complex(0.5))), g);
    std::ostringstream os;
    write_operator_csv(op, os);
    std::istringstream is(os.str());
    std::string line;
    int rows = 0;
    while (std::getline(is, line)) {
        int commas = 0;
        for (char c : line) commas += c == ',';
        REQUIRE(commas == 2 * 16 - 1);
        ++rows;
    }
    REQUIRE(rows == 16);
}

TEST_CASE("run config parsing and overrides", "[io]") {
    RunConfig cfg;
    cfg.apply("t_min", "-10");
    cfg.apply("n", "256");
    cfg.apply("seed", "99");
    cfg.apply("tol.green", "1e-3");
    cfg.validate();
    REQUIRE(cfg.t_min == -10.0);
    REQUIRE(cfg.n == 256);
    REQUIRE(cfg.seed == 99);
    REQUIRE(cfg.tolerances.at("green") == 1e-3);

    REQUIRE_THROWS_AS(cfg.apply("bogus", "1"), std::invalid_argument);
    cfg.n = 8;
    REQUIRE_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.n = 64;
    cfg.apply("tol.bad", "-1");
    REQUIRE_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("rng is deterministic and well scaled", "[io]") {
    Rng a(123), b(123), c(124);
    for (int i = 0; i < 100; ++i) REQUIRE(a.next_u64() == b.next_u64());
    REQUIRE(a.next_u64() != c.next_u64());

    Rng r(7);
    double mean = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) mean += r.normal() / n;
    REQUIRE(std::abs(mean) < 0.03);
}
