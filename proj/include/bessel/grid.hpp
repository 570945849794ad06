#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "bessel/coupling.hpp"

namespace bessel {

/// Log-uniform radial grid on (0, infinity): nodes x_j = exp(t_j) with t_j
/// uniform on [t_min, t_max].
///
/// Quadrature weights are the trapezoid cell weights in x on the log nodes,
/// w_j = (x_{j+1} - x_{j-1})/2 (halved cells at the ends). The weights
/// telescope, so the rule integrates constants over [x_0, x_{n-1}] exactly;
/// it agrees with the dt-trapezoid transported by dx = x dt to O(dt^2).
class RadialGrid {
public:
    static std::shared_ptr<const RadialGrid> make_log(double t_min, double t_max,
                                                      int n) {
        if (!std::isfinite(t_min) || !std::isfinite(t_max))
            throw std::invalid_argument("make_log_grid: bounds must be finite");
        if (!(t_min < t_max))
            throw std::invalid_argument("make_log_grid: need t_min < t_max");
        if (n < 16)
            throw std::invalid_argument("make_log_grid: need n >= 16");
        return std::shared_ptr<const RadialGrid>(new RadialGrid(t_min, t_max, n));
    }

    int size() const { return n_; }
    double t_min() const { return t_min_; }
    double t_max() const { return t_max_; }
    double dt() const { return dt_; }

    const std::vector<double>& t() const { return t_; }
    const std::vector<double>& x() const { return x_; }
    const std::vector<double>& w() const { return w_; }

    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }

    /// Weight of node j pulled back to the line (dt-side weight w_j / x_j).
    double wt(int j) const { return w_[j] / x_[j]; }

    /// Index of the node closest to x (x > 0).
    int nearest_index(double xq) const {
        if (!(xq > 0.0)) throw std::invalid_argument("nearest_index: x must be > 0");
        const double tq = std::log(xq);
        const int j = int(std::lround((tq - t_min_) / dt_));
        return std::clamp(j, 0, n_ - 1);
    }

    bool same_as(const RadialGrid& other) const {
        return n_ == other.n_ && t_min_ == other.t_min_ && t_max_ == other.t_max_;
    }

private:
    RadialGrid(double t_min, double t_max, int n)
        : t_min_(t_min), t_max_(t_max), n_(n) {
        dt_ = (t_max - t_min) / double(n - 1);
        t_.resize(n);
        x_.resize(n);
        for (int j = 0; j < n; ++j) {
            t_[j] = t_min + dt_ * j;
            x_[j] = std::exp(t_[j]);
        }
        w_.resize(n);
        w_[0] = 0.5 * (x_[1] - x_[0]);
        for (int j = 1; j < n - 1; ++j) w_[j] = 0.5 * (x_[j + 1] - x_[j - 1]);
        w_[n - 1] = 0.5 * (x_[n - 1] - x_[n - 2]);
    }

    double t_min_, t_max_, dt_;
    int n_;
    std::vector<double> t_, x_, w_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

inline GridPtr make_log_grid(double t_min, double t_max, int n) {
    return RadialGrid::make_log(t_min, t_max, n);
}

/// Complex samples on a radial grid, one value per node.
struct GridFunction {
    GridPtr grid;
    std::vector<Complex> values;

    GridFunction() = default;
    explicit GridFunction(GridPtr g)
        : grid(std::move(g)), values(grid->size(), Complex{}) {}

    int size() const { return int(values.size()); }

    void check() const {
        if (!grid || int(values.size()) != grid->size())
            throw std::invalid_argument("GridFunction: size mismatch with grid");
    }
};

template <class F>
GridFunction sample(const GridPtr& grid, F&& f) {
    GridFunction out(grid);
    for (int j = 0; j < grid->size(); ++j) out.values[j] = Complex(f(grid->x()[j]));
    return out;
}

inline void require_same_grid(const GridFunction& f, const GridFunction& g) {
    f.check();
    g.check();
    if (!f.grid->same_as(*g.grid))
        throw std::invalid_argument("grid mismatch between grid functions");
}

/// Sesquilinear L^2(dx) inner product by the grid rule (conjugation on f).
inline Complex inner_product(const GridFunction& f, const GridFunction& g) {
    require_same_grid(f, g);
    Complex s{};
    const auto& w = f.grid->w();
    for (int j = 0; j < f.size(); ++j) s += w[j] * std::conj(f.values[j]) * g.values[j];
    return s;
}

inline double norm_l2(const GridFunction& f) {
    f.check();
    double s = 0.0;
    const auto& w = f.grid->w();
    for (int j = 0; j < f.size(); ++j) s += w[j] * std::norm(f.values[j]);
    return std::sqrt(s);
}

/// L^2 norm restricted to nodes with lo <= x <= hi.
inline double norm_l2_window(const GridFunction& f, double lo, double hi) {
    f.check();
    double s = 0.0;
    const auto& w = f.grid->w();
    const auto& x = f.grid->x();
    for (int j = 0; j < f.size(); ++j)
        if (x[j] >= lo && x[j] <= hi) s += w[j] * std::norm(f.values[j]);
    return std::sqrt(s);
}

/// Linear-in-t interpolation of the samples at a point inside the grid range.
inline Complex value_at(const GridFunction& f, double xq) {
    f.check();
    const auto& g = *f.grid;
    const double tq = std::log(xq);
    if (tq < g.t_min() - 1e-12 || tq > g.t_max() + 1e-12)
        throw std::invalid_argument("value_at: point outside grid range");
    const double s = std::clamp((tq - g.t_min()) / g.dt(), 0.0, double(g.size() - 1));
    const int j = std::min(int(s), g.size() - 2);
    const double frac = s - j;
    return (1.0 - frac) * f.values[j] + frac * f.values[j + 1];
}

/// Integral of f over [lo, hi], a sub-range of the grid. Interior cells use the
/// grid's trapezoid rule; the two boundary cells are clipped with interpolated
/// endpoint values.
inline Complex integrate(const GridFunction& f, double lo, double hi) {
    f.check();
    const auto& g = *f.grid;
    if (!(lo <= hi)) throw std::invalid_argument("integrate: need lo <= hi");
    const double eps = 1e-12 * (1.0 + std::abs(hi));
    if (lo < g.x_min() - eps || hi > g.x_max() + eps)
        throw std::invalid_argument("integrate: [lo, hi] outside grid range");
    lo = std::max(lo, g.x_min());
    hi = std::min(hi, g.x_max());
    if (lo == hi) return {};

    const auto& x = g.x();
    // first node strictly above lo, last node strictly below hi
    int jl = int(std::ceil((std::log(lo) - g.t_min()) / g.dt() - 1e-12));
    int jr = int(std::floor((std::log(hi) - g.t_min()) / g.dt() + 1e-12));
    jl = std::clamp(jl, 0, g.size() - 1);
    jr = std::clamp(jr, 0, g.size() - 1);

    Complex acc{};
    if (jl > jr) {
        // both endpoints inside one cell
        const Complex fl = value_at(f, lo), fh = value_at(f, hi);
        return 0.5 * (hi - lo) * (fl + fh);
    }
    for (int j = jl; j < jr; ++j)
        acc += 0.5 * (x[j + 1] - x[j]) * (f.values[j] + f.values[j + 1]);
    if (lo < x[jl]) acc += 0.5 * (x[jl] - lo) * (value_at(f, lo) + f.values[jl]);
    if (hi > x[jr]) acc += 0.5 * (hi - x[jr]) * (f.values[jr] + value_at(f, hi));
    return acc;
}

/// Samples over the uniform t-grid underlying a radial grid.
struct LineFunction {
    GridPtr grid;
    std::vector<Complex> values;

    int size() const { return int(values.size()); }
};

/// (Uf)(t) = e^{t/2} f(e^t). With the pulled-back t-weights this is an exact
/// isometry of the discrete norms.
inline LineFunction dilation_transform(const GridFunction& f) {
    f.check();
    LineFunction out{f.grid, std::vector<Complex>(f.values.size())};
    const auto& x = f.grid->x();
    for (int j = 0; j < f.size(); ++j) out.values[j] = std::sqrt(x[j]) * f.values[j];
    return out;
}

inline GridFunction dilation_inverse(const LineFunction& u) {
    GridFunction out(u.grid);
    const auto& x = u.grid->x();
    for (int j = 0; j < u.size(); ++j) out.values[j] = u.values[j] / std::sqrt(x[j]);
    return out;
}

inline double norm_l2_line(const LineFunction& u) {
    double s = 0.0;
    for (int j = 0; j < u.size(); ++j) s += u.grid->wt(j) * std::norm(u.values[j]);
    return std::sqrt(s);
}

} // namespace bessel
