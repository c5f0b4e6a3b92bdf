#include "aybe/cmatrix.hpp"

#include <cmath>
#include <stdexcept>

namespace aybe {

CMatrix::CMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows <= 0 || cols <= 0) throw std::domain_error("CMatrix: non-positive dimension");
    a_.assign(static_cast<size_t>(rows) * static_cast<size_t>(cols), Cplx{});
}

CMatrix::CMatrix(int rows, int cols, std::initializer_list<Cplx> entries) : CMatrix(rows, cols) {
    if (entries.size() != a_.size()) throw std::domain_error("CMatrix: initializer size mismatch");
    size_t k = 0;
    for (Cplx e : entries) a_[k++] = e;
}

CMatrix CMatrix::identity(int n) {
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::operator-() const {
    CMatrix r = *this;
    for (auto& x : r.a_) x = -x;
    return r;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
    if (!same_shape(o)) throw std::domain_error("CMatrix: shape mismatch");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
    if (!same_shape(o)) throw std::domain_error("CMatrix: shape mismatch");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
}

CMatrix& CMatrix::operator*=(Cplx s) {
    for (auto& x : a_) x *= s;
    return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) throw std::domain_error("CMatrix: product shape mismatch");
    CMatrix r(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const Cplx aik = a(i, k);
            if (aik == Cplx{}) continue;
            for (int j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

CMatrix CMatrix::transpose() const {
    CMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

double CMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& x : a_) m = std::max(m, std::abs(x));
    return m;
}

double CMatrix::norm_inf() const {
    double m = 0.0;
    for (int i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (int j = 0; j < cols_; ++j) s += std::abs((*this)(i, j));
        m = std::max(m, s);
    }
    return m;
}

LuFactor::LuFactor(const CMatrix& a)
    : n_(a.rows()), lu_(a), perm_(static_cast<size_t>(a.rows())), perm_sign_(1), norm_a_(a.norm_inf()), exactly_singular_(false) {
    if (a.rows() != a.cols()) throw std::domain_error("LuFactor: matrix not square");
    for (int i = 0; i < n_; ++i) perm_[static_cast<size_t>(i)] = i;
    for (int col = 0; col < n_; ++col) {
        int piv = col;
        double best = std::abs(lu_(col, col));
        for (int i = col + 1; i < n_; ++i) {
            const double m = std::abs(lu_(i, col));
            if (m > best) {
                best = m;
                piv = i;
            }
        }
        if (best == 0.0) {
            exactly_singular_ = true;
            continue;
        }
        if (piv != col) {
            for (int j = 0; j < n_; ++j) std::swap(lu_(piv, j), lu_(col, j));
            std::swap(perm_[static_cast<size_t>(piv)], perm_[static_cast<size_t>(col)]);
            perm_sign_ = -perm_sign_;
        }
        const Cplx d = lu_(col, col);
        for (int i = col + 1; i < n_; ++i) {
            const Cplx f = lu_(i, col) / d;
            lu_(i, col) = f;
            if (f == Cplx{}) continue;
            for (int j = col + 1; j < n_; ++j) lu_(i, j) -= f * lu_(col, j);
        }
    }
}

CMatrix LuFactor::solve(const CMatrix& rhs) const {
    if (exactly_singular_) throw singular_error("linear_solve: matrix is singular");
    if (rhs.rows() != n_) throw std::domain_error("LuFactor::solve: rhs shape mismatch");
    CMatrix x(n_, rhs.cols());
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < rhs.cols(); ++j) x(i, j) = rhs(perm_[static_cast<size_t>(i)], j);
    // forward substitution (unit lower triangle)
    for (int i = 0; i < n_; ++i)
        for (int k = 0; k < i; ++k) {
            const Cplx f = lu_(i, k);
            if (f == Cplx{}) continue;
            for (int j = 0; j < rhs.cols(); ++j) x(i, j) -= f * x(k, j);
        }
    // back substitution
    for (int i = n_ - 1; i >= 0; --i) {
        for (int k = i + 1; k < n_; ++k) {
            const Cplx f = lu_(i, k);
            if (f == Cplx{}) continue;
            for (int j = 0; j < rhs.cols(); ++j) x(i, j) -= f * x(k, j);
        }
        const Cplx d = lu_(i, i);
        for (int j = 0; j < rhs.cols(); ++j) x(i, j) /= d;
    }
    return x;
}

CMatrix LuFactor::inverse() const { return solve(CMatrix::identity(n_)); }

Cplx LuFactor::det() const {
    if (exactly_singular_) return Cplx{};
    Cplx d = static_cast<double>(perm_sign_);
    for (int i = 0; i < n_; ++i) d *= lu_(i, i);
    return d;
}

double LuFactor::cond_inf() const {
    if (exactly_singular_) return std::numeric_limits<double>::infinity();
    return norm_a_ * inverse().norm_inf();
}

CMatrix linear_solve(const CMatrix& a, const CMatrix& rhs, double cond_bound) {
    LuFactor lu(a);
    const double cond = lu.cond_inf();
    if (!(cond < cond_bound))
        throw singular_error("linear_solve: condition estimate " + std::to_string(cond) + " exceeds bound");
    return lu.solve(rhs);
}

}  // namespace aybe
