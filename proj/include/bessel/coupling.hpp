#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace bessel {

using Complex = std::complex<double>;

/// Coupling parameter of the half-line operator -d^2/dx^2 + (alpha - 1/4)/x^2.
///
/// The canonical representation is m with alpha = m^2; alpha is always derived,
/// never stored. The principal square root (Re m >= 0) is enforced unless the
/// caller explicitly opts into the strip -1 < Re m < 0.
class CouplingParameter {
public:
    static CouplingParameter from_m(Complex m, bool allow_negative_re = false) {
        if (!std::isfinite(m.real()) || !std::isfinite(m.imag()))
            throw std::invalid_argument("CouplingParameter: m must be finite");
        if (m.real() < 0.0) {
            if (!allow_negative_re)
                throw std::invalid_argument(
                    "CouplingParameter: Re(m) < 0 requires explicit override");
            if (m.real() <= -1.0)
                throw std::invalid_argument(
                    "CouplingParameter: override only covers -1 < Re(m) < 0");
        }
        return CouplingParameter(m);
    }

    /// Principal branch: the root with Re(m) >= 0.
    static CouplingParameter from_alpha(Complex alpha) {
        if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()))
            throw std::invalid_argument("CouplingParameter: alpha must be finite");
        return CouplingParameter(std::sqrt(alpha));
    }

    Complex m() const { return m_; }
    Complex alpha() const { return m_ * m_; }

    bool is_zero(double tol = 0.0) const { return std::abs(m_) <= tol; }

private:
    explicit CouplingParameter(Complex m) : m_(m) {}
    Complex m_;
};

} // namespace bessel
