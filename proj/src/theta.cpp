#include "aybe/theta.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace aybe {

namespace {

// Smallest term count N with |q|^{exponent(N)} * (2N+1)^order below
// trunc_eps. The exponents already discount the growth of sin/cos inside the
// reduced strip |Im z| <= Im(tau)/2 (a factor |q|^{-(2n+1)/2} resp. |q|^{-n});
// the (2N+1)^order factor covers differentiated terms so the same count
// serves all jet coefficients.
template <typename ExpFn>
int term_count(const TorusParam& tp, int order, ExpFn exponent) {
    const double lq = std::log(std::abs(tp.q));  // < 0
    for (int n = 1; n <= tp.max_terms; ++n) {
        const double tail = exponent(n) * lq + order * std::log(2.0 * n + 1.0);
        if (tail < std::log(tp.trunc_eps)) return n;
    }
    throw std::domain_error("theta: max_terms exceeded before tail bound met (tau too close to the real axis?)");
}

}  // namespace

TorusParam::TorusParam(Cplx tau_, double trunc_eps_, int max_terms_)
    : tau(tau_), q(std::exp(kImagUnit * kPi * tau_)), trunc_eps(trunc_eps_), max_terms(max_terms_) {
    if (!is_finite(tau)) throw std::domain_error("TorusParam: tau not finite");
    if (!(tau.imag() > 0.0)) throw std::domain_error("TorusParam: Im(tau) must be positive");
    if (!(trunc_eps > 0.0)) throw std::domain_error("TorusParam: trunc_eps must be positive");
    if (max_terms < 1) throw std::domain_error("TorusParam: max_terms must be >= 1");
    // Both base tail bounds must be attainable within max_terms.
    term_count(*this, 0, [](int n) { return static_cast<double>(n) * n - 0.5; });
    term_count(*this, 0, [](int n) { return static_cast<double>(n) * (n - 1); });
}

namespace {

// Reduction of the constant coefficient; shared by both theta functions.
ArgReduction reduce(Cplx z, const TorusParam& tp) {
    ArgReduction r;
    r.shift_m = std::lround(z.imag() / tp.tau.imag());
    Cplx w = z - static_cast<double>(r.shift_m) * tp.tau;
    r.shift_k = std::lround(w.real());
    r.z_red = w - static_cast<double>(r.shift_k);
    const double m = static_cast<double>(r.shift_m);
    r.factor_log = -kImagUnit * kPi * (m * m) * tp.tau - kTwoPiI * m * r.z_red;
    r.sign = ((r.shift_m + r.shift_k) % 2 == 0) ? 1.0 : -1.0;
    return r;
}

// Multiplier jet sign * exp(factor_log) with the reduced argument jet
// substituted for z_red. Identity multiplier when no shift happened.
Jet multiplier_jet(const ArgReduction& red, const Jet& z_red, const TorusParam& tp, bool with_sign) {
    Jet log_jet = z_red * (-kTwoPiI * static_cast<double>(red.shift_m));
    const double m = static_cast<double>(red.shift_m);
    log_jet += -kImagUnit * kPi * (m * m) * tp.tau;
    Jet mult = jet_exp(log_jet);
    if (with_sign) mult *= red.sign;
    return mult;
}

}  // namespace

ArgReduction reduce_argument(Cplx z, const TorusParam& tp) { return reduce(z, tp); }

Jet theta1(const Jet& z, const TorusParam& tp) {
    const ArgReduction red = reduce(z.value(), tp);
    Jet zr = z;
    zr -= (static_cast<double>(red.shift_k) + static_cast<double>(red.shift_m) * tp.tau);

    const int N = term_count(tp, z.order(), [](int n) { return static_cast<double>(n) * n - 0.5; });
    Jet sum(z.order());
    Cplx qpow = 1.0;  // q^{n(n+1)}
    double sgn = 1.0;
    for (int n = 0; n < N; ++n) {
        sum += (sgn * qpow) * jet_sin(zr * Cplx(kPi * (2.0 * n + 1.0)));
        qpow *= std::pow(tp.q, 2 * (n + 1));  // q^{n(n+1)} -> q^{(n+1)(n+2)}
        sgn = -sgn;
    }
    sum *= 2.0 * std::exp(kImagUnit * kPi * tp.tau / 4.0);  // 2 q^{1/4}

    if (red.shift_m == 0 && red.shift_k == 0) return sum;
    return multiplier_jet(red, zr, tp, /*with_sign=*/true) * sum;
}

Jet theta3(const Jet& z, const TorusParam& tp) {
    const ArgReduction red = reduce(z.value(), tp);
    Jet zr = z;
    zr -= (static_cast<double>(red.shift_k) + static_cast<double>(red.shift_m) * tp.tau);

    const int N = term_count(tp, z.order(), [](int n) { return static_cast<double>(n) * (n - 1); });
    Jet sum = Jet::constant(1.0, z.order());
    for (int n = 1; n <= N; ++n) {
        const Cplx qn2 = std::pow(tp.q, n * n);
        sum += (2.0 * qn2) * jet_cos(zr * Cplx(2.0 * kPi * n));
    }

    if (red.shift_m == 0 && red.shift_k == 0) return sum;
    return multiplier_jet(red, zr, tp, /*with_sign=*/false) * sum;
}

Cplx theta1(Cplx z, const TorusParam& tp) { return theta1(Jet::constant(z, 0), tp).value(); }
Cplx theta3(Cplx z, const TorusParam& tp) { return theta3(Jet::constant(z, 0), tp).value(); }

Cplx theta1_prime0(const TorusParam& tp) { return theta1(Jet::variable(0.0, 1), tp).derivative(1); }

Cplx theta_relation_check(Cplx z, const TorusParam& tp) {
    const Cplx lhs = theta3(z + (tp.tau + 1.0) / 2.0, tp);
    const Cplx rhs = kImagUnit * std::exp(-kImagUnit * kPi * (z + tp.tau / 4.0)) * theta1(z, tp);
    return lhs - rhs;
}

}  // namespace aybe
