#pragma once

#include <string>
#include <vector>

#include "aybe/cmatrix.hpp"
#include "aybe/common.hpp"

namespace aybe {

/// One Jordan block J_size(exp(2 pi i lambda)).
struct JordanBlock {
    Cplx lambda;
    int size;
};

/// Input matrix A = S^{-1} J S described by its conjugator S and the Jordan
/// blocks of J. lambda is supplied directly (never recovered from mu);
/// block sizes must sum to n.
struct BSpec {
    int n = 0;
    CMatrix S;  // n x n, invertible; identity when omitted in JSON
    std::vector<JordanBlock> blocks;

    static BSpec diagonal(const std::vector<Cplx>& lambdas);
    static BSpec single_jordan(int n, Cplx lambda = Cplx{});

    /// Convenience decomposition of a raw matrix. Only matrices with
    /// pairwise eigenvalue gaps above 1e-6 are accepted (Jordan structure is
    /// numerically discontinuous; anything clustered must be supplied as an
    /// explicit block list). lambda = log(mu)/(2 pi i) with Re(lambda) in [0,1).
    static BSpec from_matrix(const CMatrix& a);

    static BSpec from_json(const std::string& text);
    std::string to_json() const;

    void validate(double cond_bound = 1e12) const;

    bool is_diagonal() const;
    bool is_single_block() const;

    /// Eigenvalue exponents, one per block.
    std::vector<Cplx> block_lambdas() const;
    /// All differences lambda_p - lambda_q (the Sigma_B representatives).
    std::vector<Cplx> lambda_diffs() const;

    /// J = diag(J_{m_1}(mu_1), ..., J_{m_t}(mu_t)).
    CMatrix jordan_matrix() const;
    /// The matrix A = S^{-1} J S itself.
    CMatrix matrix() const;
    /// A BSpec for S_extra^{-1} A S_extra (conjugators compose).
    BSpec conjugated(const CMatrix& s_extra) const;
};

/// Distance from w to the nearest point of Lambda = Z + tau Z.
double dist_to_lattice(Cplx w, Cplx tau);

/// The nearest point of Lambda itself.
Cplx nearest_lattice_point(Cplx w, Cplx tau);

/// The singular set Sigma_B = {lambda_p - lambda_q} + Lambda.
struct SigmaLattice {
    std::vector<Cplx> diffs;  // closed under negation; contains 0
    Cplx tau;

    static SigmaLattice of(const BSpec& spec, Cplx tau);
    static SigmaLattice of_lambdas(const std::vector<Cplx>& lambdas, Cplx tau);
    double distance(Cplx v) const;
    /// The nearest point of Sigma_B itself.
    Cplx nearest(Cplx v) const;
};

}  // namespace aybe
