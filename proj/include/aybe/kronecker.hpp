#pragma once

#include <optional>

#include "aybe/common.hpp"
#include "aybe/jet.hpp"
#include "aybe/theta.hpp"

namespace aybe {

/// Which incarnation of the Kronecker function to evaluate: the elliptic
/// sigma(u,x) = theta'(0) theta(u+x) / (theta(u) theta(x)) or one of its
/// degenerations cot(u) + cot(x), 1/u + 1/x.
struct KroneckerKind {
    enum class Tag { Elliptic, Trigonometric, Rational };

    Tag tag;
    std::optional<TorusParam> tp;

    static KroneckerKind elliptic(const TorusParam& tp) { return {Tag::Elliptic, tp}; }
    static KroneckerKind trigonometric() { return {Tag::Trigonometric, std::nullopt}; }
    static KroneckerKind rational() { return {Tag::Rational, std::nullopt}; }
};

Cplx sigma(const KroneckerKind& kind, Cplx u, Cplx x);

/// Jet of u' -> sigma(u', x) at u' = u; coefficient k feeds Jet::nabla(k)
/// or Jet::derivative(k) depending on the caller's derivative convention.
Jet sigma_jet(const KroneckerKind& kind, Cplx u, Cplx x, int order);

/// LHS - RHS of Fay's identity
///   sigma(u,x) sigma(u+v,y) = sigma(u+v,x+y) sigma(-v,x) + sigma(v,y) sigma(u,x+y).
Cplx fay_residual(const KroneckerKind& kind, Cplx u, Cplx v, Cplx x, Cplx y);

/// LHS - RHS of the derivative identity (plain d/du derivatives)
///   s'(u,x+y) s'(v,y) - s'(u,x) s'(u+v,y) - s'(-v,x) s'(u+v,x+y)
///     = s(u,x) s''(u+v,y) - s(-v,x) s''(u+v,x+y).
Cplx sigma_derivative_identity_residual(const TorusParam& tp, Cplx u, Cplx v, Cplx x, Cplx y);

}  // namespace aybe
