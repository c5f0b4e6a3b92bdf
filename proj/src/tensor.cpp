#include "aybe/tensor.hpp"

#include <cmath>
#include <stdexcept>

namespace aybe {

MatTensor::MatTensor(int n) : n_(n) {
    if (n <= 0) throw std::domain_error("MatTensor: non-positive n");
    c_.assign(static_cast<size_t>(n) * n * n * n, Cplx{});
}

size_t MatTensor::idx(int a, int b, int c, int d) const {
    if (a < 0 || b < 0 || c < 0 || d < 0 || a >= n_ || b >= n_ || c >= n_ || d >= n_)
        throw std::out_of_range("MatTensor: index out of range");
    return ((static_cast<size_t>(a) * n_ + b) * n_ + c) * n_ + d;
}

MatTensor MatTensor::operator-() const {
    MatTensor r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

MatTensor& MatTensor::operator+=(const MatTensor& o) {
    if (n_ != o.n_) throw std::domain_error("MatTensor: size mismatch");
    for (size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
}

MatTensor& MatTensor::operator-=(const MatTensor& o) {
    if (n_ != o.n_) throw std::domain_error("MatTensor: size mismatch");
    for (size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
}

MatTensor& MatTensor::operator*=(Cplx s) {
    for (auto& x : c_) x *= s;
    return *this;
}

double MatTensor::max_abs() const {
    double m = 0.0;
    for (const auto& x : c_) m = std::max(m, std::abs(x));
    return m;
}

TripleTensor embed(const MatTensor& t, Slot slot) {
    const int n = t.n();
    const int n3 = n * n * n;
    CMatrix op(n3, n3);
    const auto at = [n](int i1, int i2, int i3) { return (i1 * n + i2) * n + i3; };
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    const Cplx v = t.coeff(a, b, c, d);
                    if (v == Cplx{}) continue;
                    // e_{ab} acts on the first tensor slot of the pair, e_{cd}
                    // on the second; the remaining slot carries the identity.
                    for (int k = 0; k < n; ++k) {
                        switch (slot) {
                            case Slot::s12: op(at(a, c, k), at(b, d, k)) += v; break;
                            case Slot::s13: op(at(a, k, c), at(b, k, d)) += v; break;
                            case Slot::s23: op(at(k, a, c), at(k, b, d)) += v; break;
                        }
                    }
                }
    return TripleTensor(n, std::move(op));
}

TripleTensor triple_mul(const TripleTensor& a, const TripleTensor& b) {
    if (a.n_ != b.n_) throw std::domain_error("TripleTensor: size mismatch");
    return TripleTensor(a.n_, a.op_ * b.op_);
}

TripleTensor triple_sub(const TripleTensor& a, const TripleTensor& b) {
    if (a.n_ != b.n_) throw std::domain_error("TripleTensor: size mismatch");
    return TripleTensor(a.n_, a.op_ - b.op_);
}

MatTensor flip(const MatTensor& t) {
    const int n = t.n();
    MatTensor r(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) r.coeff(a, b, c, d) = t.coeff(c, d, a, b);
    return r;
}

CMatrix to_linear_map(const MatTensor& t) {
    const int n = t.n();
    CMatrix m(n * n, n * n);
    // can(e_{ab} (x) e_{cd}) maps e_{kl} to Tr(e_{ab} e_{kl}) e_{cd} = delta_{bk} delta_{al} e_{cd},
    // so column (b,a) receives the coefficient at row (c,d).
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) m(c * n + d, b * n + a) += t.coeff(a, b, c, d);
    return m;
}

MatTensor from_linear_map(const CMatrix& m, int n) {
    if (m.rows() != n * n || m.cols() != n * n) throw std::domain_error("from_linear_map: shape mismatch");
    MatTensor t(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) t.coeff(a, b, c, d) = m(c * n + d, b * n + a);
    return t;
}

bool nondegenerate(const MatTensor& t, double tol) {
    return std::abs(LuFactor(to_linear_map(t)).det()) > tol;
}

MatTensor conjugate(const MatTensor& t, const CMatrix& s, const CMatrix& s_inv) {
    const int n = t.n();
    if (s.rows() != n || s.cols() != n || s_inv.rows() != n || s_inv.cols() != n)
        throw std::domain_error("conjugate: shape mismatch");
    // S^{-1} e_{ab} S = sum_{a'b'} (S^{-1})_{a'a} S_{bb'} e_{a'b'}, applied in
    // both tensor factors.
    MatTensor r(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    const Cplx v = t.coeff(a, b, c, d);
                    if (v == Cplx{}) continue;
                    for (int a2 = 0; a2 < n; ++a2)
                        for (int b2 = 0; b2 < n; ++b2) {
                            const Cplx f1 = s_inv(a2, a) * s(b, b2);
                            if (f1 == Cplx{}) continue;
                            for (int c2 = 0; c2 < n; ++c2)
                                for (int d2 = 0; d2 < n; ++d2)
                                    r.coeff(a2, b2, c2, d2) += v * f1 * s_inv(c2, c) * s(d, d2);
                        }
                }
    return r;
}

}  // namespace aybe
