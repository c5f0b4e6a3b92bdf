#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace aybe {

using Cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline const Cplx kImagUnit{0.0, 1.0};

// 2*pi*i, the recurring factor of the normalized derivative and of all
// automorphy exponents.
inline const Cplx kTwoPiI{0.0, 2.0 * kPi};

/// Thrown when an evaluation point is too close to the singular set
/// (theta zeros, the lattice, Sigma_B) or a linear system is too
/// ill-conditioned to trust.
class singular_error : public std::runtime_error {
public:
    explicit singular_error(const std::string& what) : std::runtime_error(what) {}
};

inline bool is_finite(Cplx z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace aybe
