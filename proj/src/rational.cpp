#include "aybe/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace aybe {

Rational::Rational(long long num, long long den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    q_ = mpq_class(static_cast<long>(num), static_cast<long>(den));
    q_.canonicalize();
}

Rational Rational::from_string(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::domain_error("Rational: unparseable '" + s + "'");
    if (q.get_den() == 0) throw std::domain_error("Rational: zero denominator in '" + s + "'");
    q.canonicalize();
    return Rational(std::move(q));
}

Rational Rational::factorial(unsigned n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(mpq_class(f));
}

Rational Rational::binomial(unsigned n, unsigned k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return Rational(mpq_class(b));
}

Rational Rational::operator-() const { return Rational(mpq_class(-q_)); }

Rational& Rational::operator+=(const Rational& o) {
    q_ += o.q_;
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    q_ -= o.q_;
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    q_ *= o.q_;
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.q_ == 0) throw std::domain_error("Rational: division by zero");
    q_ /= o.q_;
    return *this;
}

std::string Rational::num_string() const { return q_.get_num().get_str(); }
std::string Rational::den_string() const { return q_.get_den().get_str(); }

std::string Rational::to_string() const {
    if (q_.get_den() == 1) return num_string();
    return num_string() + "/" + den_string();
}

bool Rational::den_is_one() const { return q_.get_den() == 1; }
bool Rational::num_is_one() const { return q_.get_num() == 1; }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace aybe
