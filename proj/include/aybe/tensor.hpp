#pragma once

#include <vector>

#include "aybe/cmatrix.hpp"
#include "aybe/common.hpp"

namespace aybe {

class TripleTensor;

/// Element of Mat_n(C) (x) Mat_n(C), stored as the n^4 coefficients of the
/// basis e_{ab} (x) e_{cd} in row-major (a,b,c,d) order (0-based indices).
class MatTensor {
public:
    explicit MatTensor(int n);

    int n() const { return n_; }

    Cplx coeff(int a, int b, int c, int d) const { return c_[idx(a, b, c, d)]; }
    Cplx& coeff(int a, int b, int c, int d) { return c_[idx(a, b, c, d)]; }

    MatTensor operator-() const;
    MatTensor& operator+=(const MatTensor& o);
    MatTensor& operator-=(const MatTensor& o);
    MatTensor& operator*=(Cplx s);
    friend MatTensor operator+(MatTensor a, const MatTensor& b) { return a += b; }
    friend MatTensor operator-(MatTensor a, const MatTensor& b) { return a -= b; }
    friend MatTensor operator*(MatTensor a, Cplx s) { return a *= s; }
    friend MatTensor operator*(Cplx s, MatTensor a) { return a *= s; }

    double max_abs() const;

private:
    size_t idx(int a, int b, int c, int d) const;

    int n_;
    std::vector<Cplx> c_;
};

/// Operator on (C^n)^(x3), dense n^3 x n^3. The workspace of the AYBE
/// residuals; produced by embedding MatTensors into one of three slots.
class TripleTensor {
public:
    TripleTensor(int n, CMatrix op) : n_(n), op_(std::move(op)) {}

    int n() const { return n_; }
    const CMatrix& op() const { return op_; }

    friend TripleTensor triple_mul(const TripleTensor& a, const TripleTensor& b);
    friend TripleTensor triple_sub(const TripleTensor& a, const TripleTensor& b);
    friend double triple_norm(const TripleTensor& a) { return a.op_.max_abs(); }

private:
    int n_;
    CMatrix op_;
};

enum class Slot { s12, s13, s23 };

/// Image of t under rho_12, rho_13 or rho_23 (e.g. rho_13(x (x) y) = x (x) 1 (x) y).
TripleTensor embed(const MatTensor& t, Slot slot);

/// rho(a (x) b) = b (x) a, extended linearly.
MatTensor flip(const MatTensor& t);

/// Matrix (n^2 x n^2) of the canonical map can(t): Z -> Tr(XZ) Y summed over
/// the simple tensors of t, in the basis {e_{ab}} of Mat_n (row-major).
CMatrix to_linear_map(const MatTensor& t);

/// Inverse of to_linear_map.
MatTensor from_linear_map(const CMatrix& m, int n);

/// |det(can(t))| > tol.
bool nondegenerate(const MatTensor& t, double tol);

/// (S^{-1} (x) S^{-1}) t (S (x) S) given S and its inverse.
MatTensor conjugate(const MatTensor& t, const CMatrix& s, const CMatrix& s_inv);

}  // namespace aybe
