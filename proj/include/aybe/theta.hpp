#pragma once

#include "aybe/common.hpp"
#include "aybe/jet.hpp"

namespace aybe {

/// Modular parameter tau (Im tau > 0) together with the q-series
/// truncation policy. q = exp(pi*i*tau).
struct TorusParam {
    Cplx tau;
    Cplx q;
    double trunc_eps;
    int max_terms;

    explicit TorusParam(Cplx tau_, double trunc_eps_ = 1e-16, int max_terms_ = 64);
};

/// Result of pulling z into the fundamental strip |Im z_red| <= Im(tau)/2,
/// |Re z_red| <= 1/2, via the quasi-periodicity laws:
///   theta1(z) = sign * exp(factor_log) * theta1(z_red)
///   theta3(z) =        exp(factor_log) * theta3(z_red)
/// (only the sign differs between the two).
struct ArgReduction {
    Cplx z_red;
    Cplx factor_log;
    Cplx sign;
    long shift_m;  // multiples of tau removed
    long shift_k;  // integers removed
};

ArgReduction reduce_argument(Cplx z, const TorusParam& tp);

/// First Jacobi theta function as a jet in its argument:
///   theta1(z) = 2 q^{1/4} sum_{n>=0} (-1)^n q^{n(n+1)} sin((2n+1) pi z).
Jet theta1(const Jet& z, const TorusParam& tp);

/// Third Jacobi theta function as a jet:
///   theta3(z) = 1 + 2 sum_{n>=1} q^{n^2} cos(2 pi n z).
Jet theta3(const Jet& z, const TorusParam& tp);

Cplx theta1(Cplx z, const TorusParam& tp);
Cplx theta3(Cplx z, const TorusParam& tp);

/// theta1'(0), plain d/dz convention.
Cplx theta1_prime0(const TorusParam& tp);

/// Residual of the relation theta3(z + (tau+1)/2) = i exp(-pi i (z + tau/4)) theta1(z);
/// a self-test hook, expected to be ~0 everywhere.
Cplx theta_relation_check(Cplx z, const TorusParam& tp);

}  // namespace aybe
