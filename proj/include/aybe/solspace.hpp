#pragma once

#include <vector>

#include "aybe/bspec.hpp"
#include "aybe/cmatrix.hpp"
#include "aybe/tensor.hpp"
#include "aybe/theta.hpp"

namespace aybe {

/// One summand c_0 tb_w + c_1 nabla tb_w + ... of a Sol-element entry, where
/// tb_w(z) = theta3(z + w + (tau+1)/2) is the shifted third theta function.
struct ThetaTerm {
    std::vector<Cplx> poly;  // coefficient of nabla^r at index r
    Cplx shift;              // w
};

/// Entry of a Sol element: finite sum of ThetaTerms (a single term for the
/// raw bases; gauge transforms mix terms with different shifts).
class SolEntry {
public:
    SolEntry() = default;

    void add_term(std::vector<Cplx> poly, Cplx shift);
    void add_scaled(const SolEntry& o, Cplx factor);
    bool empty() const { return terms_.empty(); }

    Cplx eval(Cplx z, const TorusParam& tp) const;

private:
    std::vector<ThetaTerm> terms_;
};

/// Element of Sol_{B,v,tau}: a matrix of holomorphic functions stored
/// symbolically as nabla-polynomials against shifted theta3 factors.
class SolElement {
public:
    explicit SolElement(int n) : n_(n), grid_(static_cast<size_t>(n) * n) {}

    int n() const { return n_; }
    SolEntry& entry(int a, int b) { return grid_[static_cast<size_t>(a) * n_ + b]; }
    const SolEntry& entry(int a, int b) const { return grid_[static_cast<size_t>(a) * n_ + b]; }

    CMatrix eval(Cplx z, const TorusParam& tp) const;

    /// T Phi T^{-1} (entries become linear combinations of the old entries).
    SolElement conjugated(const CMatrix& t, const CMatrix& t_inv) const;

    void add_scaled(const SolElement& o, Cplx factor);

private:
    int n_;
    std::vector<SolEntry> grid_;
};

/// The Polishchuk-Zaslow generator U of Sol_{J,v,0,tau}:
/// (U)_{k,l} = e^t_{n(k-1)+l} (exp(nabla N) theta3_v) e_{n(n-1)+1}.
SolElement sol_generator_U(int n, Cplx v, const TorusParam& tp);

/// Basis F_{ij} = K^{n-i} U K^{j-1} (K the nilpotent Jordan block), in
/// row-major (i,j) order.
std::vector<SolElement> sol_basis_jordan(int n, Cplx v, const TorusParam& tp);

/// Basis for diagonal B: one entry theta3(z + v - lambda_kl + (tau+1)/2)
/// per matrix position (k,l), row-major.
std::vector<SolElement> sol_basis_diagonal(const std::vector<Cplx>& lambdas, Cplx v, const TorusParam& tp);

/// Basis of Sol_{A,v,tau} for A = S^{-1} J S from a BSpec: rectangular
/// Polishchuk-Zaslow bases per Jordan block pair, gauged by the block
/// scaling and the conjugator.
std::vector<SolElement> sol_basis_bspec(const BSpec& spec, Cplx v, const TorusParam& tp);

/// Matrix of res_{z0}: column i holds vec(Phi_i(z0)); res0_matrix is z0 = 0.
CMatrix res_matrix(const std::vector<SolElement>& basis, Cplx z0, const TorusParam& tp);
CMatrix res0_matrix(const std::vector<SolElement>& basis, const TorusParam& tp);

/// Matrix of ev_{y2} relative to base point y1:
/// column i holds vec(Phi_i(y2)) / theta3(y2 - y1 + (tau+1)/2).
CMatrix ev_matrix(const std::vector<SolElement>& basis, Cplx y2, Cplx y1, const TorusParam& tp);
CMatrix ev_y_matrix(const std::vector<SolElement>& basis, Cplx y, const TorusParam& tp);

/// ev_y o res_0^{-1}, pushed through the canonical map and multiplied by
/// c = i theta'(0) exp(-pi i tau / 4) so the result matches the closed forms.
MatTensor r_from_solspace(const BSpec& spec, Cplx v, Cplx y, const TorusParam& tp);

/// Four-variable form r_B(v1, v2; y1, y2) built from Sol_{B, v1-v2, y1, tau}
/// with res at y1 and ev at y2 (same normalization).
MatTensor r_from_solspace4(const BSpec& spec, Cplx v1, Cplx v2, Cplx y1, Cplx y2, const TorusParam& tp);

/// Closed-form preimage gamma^{a,b} of e_{a,b} (1-based) under res_0 via
/// explicit enumeration of the south-west path sets; n <= 3.
SolElement res0_inverse_paths(int n, int a, int b, Cplx v, const TorusParam& tp);

/// max of |Phi(z+1) - Phi(z)| and |Phi(z+tau) B - e(z) B Phi(z)| at z, with
/// e(z) = -exp(-2 pi i (z + v + tau)), normalized by the magnitude of the
/// compared values (theta factors grow fast off the real axis).
double membership_residual(const SolElement& phi, const CMatrix& b, Cplx v, Cplx z, const TorusParam& tp);

}  // namespace aybe
