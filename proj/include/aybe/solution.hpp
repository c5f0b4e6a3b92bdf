#pragma once

#include <vector>

#include "aybe/bspec.hpp"
#include "aybe/tensor.hpp"
#include "aybe/theta.hpp"

namespace aybe {

/// Minimum admissible distance of evaluation points from the singular sets
/// (Sigma_B for the first spectral variable, Lambda for the second).
inline constexpr double kSingularRadius = 1e-3;

/// Closed-form solution for B = diag(exp(2 pi i lambda_1), ..., exp(2 pi i lambda_n)):
///   r(v,y) = sum_{k,l} sigma(v - (lambda_k - lambda_l), y) e_{l,k} (x) e_{k,l}.
MatTensor r_diagonal(const std::vector<Cplx>& lambdas, Cplx v, Cplx y, const TorusParam& tp);

/// Closed-form solution for the unipotent Jordan block J_n(1):
///   r(v,y) = sum_{k,l} nabla_{k,l}(sigma(v,y)) sum_{i<=n-l, j<=n-k} e_{i,j+k} (x) e_{j,i+l}.
MatTensor r_jordan(int n, Cplx v, Cplx y, const TorusParam& tp);

/// Solution for a general BSpec A = S^{-1} J S:
///   (S^{-1} (x) S^{-1}) r_J(v,y) (S (x) S),
/// where r_J uses the diagonal or Jordan closed form when J is of that
/// shape and the Sol-space construction for mixed block structures.
MatTensor r_general(const BSpec& spec, Cplx v, Cplx y, const TorusParam& tp);

}  // namespace aybe
