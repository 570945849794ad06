#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "bessel/grid.hpp"
#include "bessel/kernels.hpp"

namespace bessel {

/// Complex numbers on the command line and in config files: "a", "a+bi",
/// "a-bi", "bi", "i", "-i". Locale-free.
inline Complex parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("parse_complex: empty input");

    const auto parse_num = [](std::string tok) -> double {
        if (tok.empty() || tok == "+") return 1.0;
        if (tok == "-") return -1.0;
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size())
            throw std::invalid_argument("parse_complex: trailing characters");
        return v;
    };

    // split at the last '+'/'-' that is not a leading sign or exponent sign
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if (s[i] != '+' && s[i] != '-') continue;
        const char prev = s[i - 1];
        if (prev == 'e' || prev == 'E') continue;
        split = i;
        break;
    }
    const bool imag_tail = s.back() == 'i' || s.back() == 'I';
    if (!imag_tail) {
        if (split != std::string::npos)
            throw std::invalid_argument("parse_complex: malformed input");
        return {parse_num(s), 0.0};
    }
    std::string head = split == std::string::npos ? "" : s.substr(0, split);
    std::string tail = split == std::string::npos ? s : s.substr(split);
    tail.pop_back();  // drop 'i'
    const double im = parse_num(tail);
    const double re = head.empty() ? 0.0 : parse_num(head);
    return {re, im};
}

inline std::string format_complex(Complex z) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
    return buf;
}

inline void write_grid_function_csv(const GridFunction& f, std::ostream& os) {
    f.check();
    os << "x,re(f),im(f)\n";
    char buf[128];
    for (int j = 0; j < f.size(); ++j) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", f.grid->x()[j],
                      f.values[j].real(), f.values[j].imag());
        os << buf;
    }
}

inline void write_grid_function_csv(const GridFunction& f, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    write_grid_function_csv(f, os);
}

/// Reads the x,re(f),im(f) format back; the x column must form a log-uniform
/// grid (relative spacing tolerance 1e-9).
inline GridFunction read_grid_function_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line))
        throw std::invalid_argument("grid csv: empty input");
    if (line.rfind("x,", 0) != 0)
        throw std::invalid_argument("grid csv: missing header row");
    std::vector<double> xs;
    std::vector<Complex> vals;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string a, b, c;
        if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',') ||
            !std::getline(ls, c))
            throw std::invalid_argument("grid csv: malformed row");
        xs.push_back(std::stod(a));
        vals.emplace_back(std::stod(b), std::stod(c));
    }
    const int n = int(xs.size());
    if (n < 16) throw std::invalid_argument("grid csv: need at least 16 rows");
    const double t0 = std::log(xs.front()), t1 = std::log(xs.back());
    const double dt = (t1 - t0) / (n - 1);
    for (int j = 0; j < n; ++j)
        if (std::abs(std::log(xs[j]) - (t0 + j * dt)) > 1e-9 * std::max(1.0, std::abs(t1)))
            throw std::invalid_argument("grid csv: nodes are not log-uniform");
    GridFunction f(make_log_grid(t0, t1, n));
    f.values = std::move(vals);
    return f;
}

inline GridFunction read_grid_function_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    return read_grid_function_csv(is);
}

/// Row-major dense dump, each complex entry as a re,im pair.
inline void write_operator_csv(const DiscretizedOperator& op, std::ostream& os) {
    char buf[80];
    const int n = op.grid->size();
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            const Complex v = op.matrix(j, k);
            std::snprintf(buf, sizeof buf, k + 1 == n ? "%.17g,%.17g" : "%.17g,%.17g,",
                          v.real(), v.imag());
            os << buf;
        }
        os << '\n';
    }
}

/// Named run parameters: grid, seed, thresholds. Config file lines are
/// key=value; '#' starts a comment. Flags override file values.
struct RunConfig {
    double t_min = -12.0;
    double t_max = 12.0;
    int n = 1024;
    std::uint64_t seed = 20240901;
    std::string format = "json";  // or "csv"
    std::map<std::string, double> tolerances;

    void apply(const std::string& key, const std::string& value) {
        if (key == "t_min") t_min = std::stod(value);
        else if (key == "t_max") t_max = std::stod(value);
        else if (key == "n") n = std::stoi(value);
        else if (key == "seed") seed = std::stoull(value);
        else if (key == "format") format = value;
        else if (key.rfind("tol.", 0) == 0) tolerances[key.substr(4)] = std::stod(value);
        else throw std::invalid_argument("config: unknown key '" + key + "'");
    }

    void validate() const {
        if (n < 16) throw std::invalid_argument("config: n must be >= 16");
        if (!(t_min < t_max)) throw std::invalid_argument("config: t_min < t_max");
        if (format != "json" && format != "csv")
            throw std::invalid_argument("config: format must be json or csv");
        for (const auto& [k, v] : tolerances)
            if (!(v > 0.0))
                throw std::invalid_argument("config: threshold '" + k + "' must be > 0");
    }

    GridPtr grid() const { return make_log_grid(t_min, t_max, n); }
};

inline RunConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config " + path);
    RunConfig cfg;
    std::string line;
    while (std::getline(is, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!key.empty()) cfg.apply(key, value);
    }
    return cfg;
}

} // namespace bessel
