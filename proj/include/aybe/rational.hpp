#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <gmpxx.h>

namespace aybe {

/// Exact rational number: arbitrary-precision numerator and positive
/// denominator, always reduced to lowest terms.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long long num) : q_(static_cast<long>(num)) {}
    Rational(long long num, long long den);

    static Rational from_string(const std::string& s);
    static Rational factorial(unsigned n);
    static Rational binomial(unsigned n, unsigned k);

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    bool operator==(const Rational& o) const { return q_ == o.q_; }
    bool operator!=(const Rational& o) const { return q_ != o.q_; }
    bool operator<(const Rational& o) const { return q_ < o.q_; }

    bool is_zero() const { return q_ == 0; }
    int sign() const { return sgn(q_); }

    std::string num_string() const;
    std::string den_string() const;
    /// "p" when the denominator is 1, otherwise "p/q".
    std::string to_string() const;

    double to_double() const { return q_.get_d(); }

    bool den_is_one() const;
    bool num_is_one() const;

private:
    explicit Rational(mpq_class q) : q_(std::move(q)) {}
    mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace aybe
