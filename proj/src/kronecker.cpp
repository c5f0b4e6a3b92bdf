#include "aybe/kronecker.hpp"

#include <cmath>
#include <cstdio>

namespace aybe {

namespace {

// Pole guard: reject denominators below 1e-10 x the natural scale of the
// kind (|theta'(0)| elliptically, 1 otherwise).
constexpr double kPoleRel = 1e-10;

std::string cplx_text(Cplx z) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g%+gi", z.real(), z.imag());
    return buf;
}

// Nearest pole of the relevant denominator, for the error message.
Cplx nearest_pole(const KroneckerKind& kind, Cplx w) {
    switch (kind.tag) {
        case KroneckerKind::Tag::Elliptic: {
            const Cplx tau = kind.tp->tau;
            const double b = std::lround(w.imag() / tau.imag());
            const double a = std::lround(w.real() - b * tau.real());
            return a + b * tau;
        }
        case KroneckerKind::Tag::Trigonometric:
            return kPi * std::lround(w.real() / kPi);
        case KroneckerKind::Tag::Rational:
            return {};
    }
    return {};
}

void require_away_from_pole(const KroneckerKind& kind, double denom_abs, double scale, const char* what, Cplx w) {
    if (!(denom_abs > kPoleRel * scale))
        throw singular_error(std::string("sigma: ") + what + " = " + cplx_text(w) + " is at the pole " +
                             cplx_text(nearest_pole(kind, w)));
}

Jet cot_jet(const Jet& a) {
    auto [s, c] = jet_sincos(a);
    return c / s;
}

}  // namespace

Jet sigma_jet(const KroneckerKind& kind, Cplx u, Cplx x, int order) {
    const Jet uj = Jet::variable(u, order);
    switch (kind.tag) {
        case KroneckerKind::Tag::Elliptic: {
            const TorusParam& tp = *kind.tp;
            const Cplx dtheta0 = theta1_prime0(tp);
            const Cplx theta_x = theta1(x, tp);
            const Jet theta_u = theta1(uj, tp);
            require_away_from_pole(kind, std::abs(theta_u.value()), std::abs(dtheta0), "u", u);
            require_away_from_pole(kind, std::abs(theta_x), std::abs(dtheta0), "x", x);
            const Jet num = theta1(uj + x, tp) * dtheta0;
            return num / (theta_u * theta_x);
        }
        case KroneckerKind::Tag::Trigonometric: {
            require_away_from_pole(kind, std::abs(std::sin(u)), 1.0, "u", u);
            require_away_from_pole(kind, std::abs(std::sin(x)), 1.0, "x", x);
            return cot_jet(uj) + (std::cos(x) / std::sin(x));
        }
        case KroneckerKind::Tag::Rational: {
            require_away_from_pole(kind, std::abs(u), 1.0, "u", u);
            require_away_from_pole(kind, std::abs(x), 1.0, "x", x);
            return jet_reciprocal(uj) + (1.0 / x);
        }
    }
    throw std::logic_error("sigma_jet: bad kind");
}

Cplx sigma(const KroneckerKind& kind, Cplx u, Cplx x) { return sigma_jet(kind, u, x, 0).value(); }

Cplx fay_residual(const KroneckerKind& kind, Cplx u, Cplx v, Cplx x, Cplx y) {
    const Cplx lhs = sigma(kind, u, x) * sigma(kind, u + v, y);
    const Cplx rhs = sigma(kind, u + v, x + y) * sigma(kind, -v, x) + sigma(kind, v, y) * sigma(kind, u, x + y);
    return lhs - rhs;
}

Cplx sigma_derivative_identity_residual(const TorusParam& tp, Cplx u, Cplx v, Cplx x, Cplx y) {
    const KroneckerKind kind = KroneckerKind::elliptic(tp);
    const auto s = [&](Cplx a, Cplx b, int k) { return sigma_jet(kind, a, b, k).derivative(k); };

    const Cplx lhs = s(u, x + y, 1) * s(v, y, 1) - s(u, x, 1) * s(u + v, y, 1) - s(-v, x, 1) * s(u + v, x + y, 1);
    const Cplx rhs = s(u, x, 0) * s(u + v, y, 2) - s(-v, x, 0) * s(u + v, x + y, 2);
    return lhs - rhs;
}

}  // namespace aybe
