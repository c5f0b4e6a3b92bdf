#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "aybe/common.hpp"

namespace aybe {

/// Truncated complex Taylor series c_0 + c_1 t + ... + c_D t^D + O(t^{D+1}).
///
/// Carries the higher derivatives of everything built from it: seed the
/// expansion variable with Jet::variable(z0, D) and propagate through the
/// arithmetic below. Operations require both operands to have the same order.
class Jet {
public:
    explicit Jet(int order) : c_(static_cast<size_t>(check_order(order)) + 1, Cplx{}) {}

    static Jet constant(Cplx value, int order) {
        Jet j(order);
        j.c_[0] = value;
        return j;
    }

    /// The identity function z -> z expanded at z0: [z0, 1, 0, ...].
    static Jet variable(Cplx z0, int order) {
        Jet j(order);
        j.c_[0] = z0;
        if (order >= 1) j.c_[1] = 1.0;
        return j;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    Cplx operator[](int k) const { return c_.at(static_cast<size_t>(k)); }
    Cplx& operator[](int k) { return c_.at(static_cast<size_t>(k)); }
    Cplx value() const { return c_[0]; }

    /// Plain k-th derivative d^k/dt^k at the expansion point: k! * c_k.
    Cplx derivative(int k) const {
        require_k(k);
        double f = 1.0;
        for (int j = 2; j <= k; ++j) f *= j;
        return f * c_[static_cast<size_t>(k)];
    }

    /// The normalized derivative nabla^k = (-1/(2*pi*i))^k d^k/dt^k.
    Cplx nabla(int k) const {
        require_k(k);
        return std::pow(-1.0 / kTwoPiI, k) * derivative(k);
    }

    Jet operator-() const {
        Jet r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    Jet& operator+=(const Jet& o) {
        require_same(o);
        for (size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        require_same(o);
        for (size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
        return *this;
    }
    Jet& operator+=(Cplx s) {
        c_[0] += s;
        return *this;
    }
    Jet& operator-=(Cplx s) {
        c_[0] -= s;
        return *this;
    }
    Jet& operator*=(Cplx s) {
        for (auto& x : c_) x *= s;
        return *this;
    }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator+(Jet a, Cplx s) { return a += s; }
    friend Jet operator-(Jet a, Cplx s) { return a -= s; }
    friend Jet operator*(Jet a, Cplx s) { return a *= s; }
    friend Jet operator*(Cplx s, Jet a) { return a *= s; }

    /// Cauchy product truncated at the common order.
    friend Jet operator*(const Jet& a, const Jet& b) {
        a.require_same(b);
        const int D = a.order();
        Jet r(D);
        for (int k = 0; k <= D; ++k) {
            Cplx s{};
            for (int j = 0; j <= k; ++j) s += a.c_[static_cast<size_t>(j)] * b.c_[static_cast<size_t>(k - j)];
            r.c_[static_cast<size_t>(k)] = s;
        }
        return r;
    }

    /// Truncated quotient; requires b.c_0 != 0.
    friend Jet operator/(const Jet& a, const Jet& b) {
        a.require_same(b);
        if (b.c_[0] == Cplx{}) throw std::domain_error("Jet: division by jet with zero constant term");
        const int D = a.order();
        Jet r(D);
        for (int k = 0; k <= D; ++k) {
            Cplx s = a.c_[static_cast<size_t>(k)];
            for (int j = 1; j <= k; ++j) s -= b.c_[static_cast<size_t>(j)] * r.c_[static_cast<size_t>(k - j)];
            r.c_[static_cast<size_t>(k)] = s / b.c_[0];
        }
        return r;
    }

private:
    static int check_order(int order) {
        if (order < 0) throw std::domain_error("Jet: negative order");
        return order;
    }
    void require_same(const Jet& o) const {
        if (c_.size() != o.c_.size()) throw std::domain_error("Jet: order mismatch");
    }
    void require_k(int k) const {
        if (k < 0 || k > order()) throw std::domain_error("Jet: derivative index exceeds order");
    }

    std::vector<Cplx> c_;
};

/// exp of a jet via the standard convolution recurrence.
inline Jet jet_exp(const Jet& a) {
    const int D = a.order();
    Jet r(D);
    r[0] = std::exp(a[0]);
    for (int k = 1; k <= D; ++k) {
        Cplx s{};
        for (int j = 1; j <= k; ++j) s += static_cast<double>(j) * a[j] * r[k - j];
        r[k] = s / static_cast<double>(k);
    }
    return r;
}

/// sin and cos share the coupled recurrence; computing both costs one pass.
inline std::pair<Jet, Jet> jet_sincos(const Jet& a) {
    const int D = a.order();
    Jet s(D), c(D);
    s[0] = std::sin(a[0]);
    c[0] = std::cos(a[0]);
    for (int k = 1; k <= D; ++k) {
        Cplx ss{}, cc{};
        for (int j = 1; j <= k; ++j) {
            ss += static_cast<double>(j) * a[j] * c[k - j];
            cc -= static_cast<double>(j) * a[j] * s[k - j];
        }
        s[k] = ss / static_cast<double>(k);
        c[k] = cc / static_cast<double>(k);
    }
    return {s, c};
}

inline Jet jet_sin(const Jet& a) { return jet_sincos(a).first; }
inline Jet jet_cos(const Jet& a) { return jet_sincos(a).second; }

inline Jet jet_reciprocal(const Jet& a) { return Jet::constant(1.0, a.order()) / a; }

}  // namespace aybe
