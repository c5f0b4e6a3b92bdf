#pragma once

#include <initializer_list>
#include <vector>

#include "aybe/common.hpp"

namespace aybe {

/// Dense complex matrix with the handful of operations the solver needs.
/// Row-major storage; indices are 0-based.
class CMatrix {
public:
    CMatrix() : rows_(0), cols_(0) {}
    CMatrix(int rows, int cols);
    CMatrix(int rows, int cols, std::initializer_list<Cplx> entries);

    static CMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Cplx operator()(int i, int j) const { return a_[idx(i, j)]; }
    Cplx& operator()(int i, int j) { return a_[idx(i, j)]; }

    CMatrix operator-() const;
    CMatrix& operator+=(const CMatrix& o);
    CMatrix& operator-=(const CMatrix& o);
    CMatrix& operator*=(Cplx s);
    friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
    friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
    friend CMatrix operator*(CMatrix a, Cplx s) { return a *= s; }
    friend CMatrix operator*(Cplx s, CMatrix a) { return a *= s; }
    friend CMatrix operator*(const CMatrix& a, const CMatrix& b);

    CMatrix transpose() const;

    double max_abs() const;
    double norm_inf() const;  // max row sum

    bool same_shape(const CMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

private:
    size_t idx(int i, int j) const { return static_cast<size_t>(i) * static_cast<size_t>(cols_) + static_cast<size_t>(j); }

    int rows_, cols_;
    std::vector<Cplx> a_;
};

/// Partial-pivot LU factorization of a square matrix, kept around for
/// repeated solves, determinant and the condition estimate.
class LuFactor {
public:
    explicit LuFactor(const CMatrix& a);

    /// Solve A X = rhs. Throws singular_error on an exactly singular pivot.
    CMatrix solve(const CMatrix& rhs) const;
    CMatrix inverse() const;
    Cplx det() const;

    /// Infinity-norm condition number ||A|| * ||A^{-1}|| via the explicit
    /// inverse (matrices here are at most n^3 x n^3 with n <= 4).
    double cond_inf() const;

private:
    int n_;
    CMatrix lu_;
    std::vector<int> perm_;
    int perm_sign_;
    double norm_a_;
    bool exactly_singular_;
};

/// Solve A X = rhs, rejecting matrices whose condition estimate exceeds
/// cond_bound (default 1e12) with singular_error.
CMatrix linear_solve(const CMatrix& a, const CMatrix& rhs, double cond_bound = 1e12);

}  // namespace aybe
