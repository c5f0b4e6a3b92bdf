#include "aybe/nabla.hpp"

#include <mutex>
#include <sstream>
#include <stdexcept>

namespace aybe {

RationalMatrix::RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows <= 0 || cols <= 0) throw std::domain_error("RationalMatrix: non-positive dimension");
    a_.assign(static_cast<size_t>(rows) * cols, Rational());
}

RationalMatrix RationalMatrix::identity(int n) {
    RationalMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Rational(1);
    return m;
}

bool RationalMatrix::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

bool RationalMatrix::operator==(const RationalMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

RationalMatrix& RationalMatrix::operator+=(const RationalMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::domain_error("RationalMatrix: shape mismatch");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols() != b.rows()) throw std::domain_error("RationalMatrix: product shape mismatch");
    RationalMatrix r(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const Rational& aik = a(i, k);
            if (aik.is_zero()) continue;
            for (int j = 0; j < b.cols(); ++j) {
                const Rational& bkj = b(k, j);
                if (!bkj.is_zero()) r(i, j) += aik * bkj;
            }
        }
    return r;
}

RationalMatrix operator*(const Rational& s, RationalMatrix a) {
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) a(i, j) *= s;
    return a;
}

NablaPoly::NablaPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

NablaPoly NablaPoly::monomial(int degree, Rational coeff) {
    std::vector<Rational> c(static_cast<size_t>(degree) + 1);
    c.back() = std::move(coeff);
    return NablaPoly(std::move(c));
}

void NablaPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

int NablaPoly::degree() const { return static_cast<int>(c_.size()) - 1; }

Rational NablaPoly::coeff(int r) const {
    if (r < 0 || r >= static_cast<int>(c_.size())) return Rational();
    return c_[static_cast<size_t>(r)];
}

bool NablaPoly::operator==(const NablaPoly& o) const { return c_ == o.c_; }

NablaPoly& NablaPoly::operator+=(const NablaPoly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
    for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
}

NablaPoly operator*(const Rational& s, NablaPoly a) {
    for (auto& x : a.c_) x *= s;
    a.trim();
    return a;
}

Cplx NablaPoly::apply(const Jet& f) const {
    if (degree() > f.order()) throw std::domain_error("NablaPoly::apply: jet order too small");
    Cplx s{};
    for (int r = 0; r <= degree(); ++r) {
        const Rational& cr = c_[static_cast<size_t>(r)];
        if (!cr.is_zero()) s += cr.to_double() * f.nabla(r);
    }
    return s;
}

namespace {

std::string magnitude_string(const Rational& mag, bool latex) {
    if (latex && !mag.den_is_one()) return "\\tfrac{" + mag.num_string() + "}{" + mag.den_string() + "}";
    return mag.to_string();
}

}  // namespace

std::string NablaPoly::render(const std::string& symbol, bool latex) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int r = 0; r <= degree(); ++r) {
        const Rational cr = coeff(r);
        if (cr.is_zero()) continue;
        const Rational mag = cr.sign() < 0 ? -cr : cr;
        if (first) {
            if (cr.sign() < 0) os << "-";
            first = false;
        } else {
            os << (cr.sign() < 0 ? " - " : " + ");
        }
        const bool unit = mag.num_is_one() && mag.den_is_one();
        if (r == 0) {
            os << magnitude_string(mag, latex);
        } else {
            if (!unit) os << magnitude_string(mag, latex) << (latex ? " " : " ");
            os << symbol;
            if (r > 1) os << (latex ? "^{" + std::to_string(r) + "}" : "^" + std::to_string(r));
        }
    }
    return os.str();
}

RationalMatrix build_N(int n) { return build_N_pair(n, n); }

RationalMatrix build_N_pair(int m, int mp) {
    if (m < 1 || mp < 1) throw std::domain_error("build_N_pair: sizes must be >= 1");
    // log of the unipotent Jordan block: (log J)_{i,i+k} = (-1)^{k+1}/k.
    const auto log_jordan = [](int sz) {
        RationalMatrix l(sz, sz);
        for (int i = 0; i < sz; ++i)
            for (int k = 1; i + k < sz; ++k) l(i, i + k) = Rational(k % 2 == 1 ? 1 : -1, k);
        return l;
    };
    const RationalMatrix lm = log_jordan(m);
    const RationalMatrix lp = log_jordan(mp);
    // N = log(J_m (x) (J_mp^{-1})^t) = log(J_m) (x) 1 - 1 (x) log(J_mp)^t
    // on row-major vectorized matrices.
    RationalMatrix n(m * mp, m * mp);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k) {
            if (lm(i, k).is_zero()) continue;
            for (int j = 0; j < mp; ++j) n(i * mp + j, k * mp + j) += lm(i, k);
        }
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < mp; ++j)
            for (int l = 0; l < mp; ++l) {
                if (lp(l, j).is_zero()) continue;  // transposed index order
                n(i * mp + j, i * mp + l) += -lp(l, j);
            }
    return n;
}

bool nilpotency_index_check(int n) {
    const RationalMatrix N = build_N(n);
    RationalMatrix p = RationalMatrix::identity(n * n);
    RationalMatrix prev = p;
    for (int r = 1; r <= 2 * n - 1; ++r) {
        prev = p;
        p = p * N;
    }
    // p = N^{2n-1}, prev = N^{2n-2}
    if (!p.is_zero()) return false;
    if (n >= 2 && prev.is_zero()) return false;
    return true;
}

std::vector<std::vector<NablaPoly>> exp_nabla_of(const RationalMatrix& nilpotent) {
    const int sz = nilpotent.rows();
    if (nilpotent.cols() != sz) throw std::domain_error("exp_nabla_of: matrix not square");
    std::vector<std::vector<NablaPoly>> e(static_cast<size_t>(sz), std::vector<NablaPoly>(static_cast<size_t>(sz)));
    RationalMatrix power = RationalMatrix::identity(sz);
    Rational inv_fact(1);
    for (int r = 0; r <= sz; ++r) {
        if (r > 0) {
            power = power * nilpotent;
            inv_fact /= Rational(r);
        }
        if (power.is_zero()) break;
        for (int i = 0; i < sz; ++i)
            for (int j = 0; j < sz; ++j) {
                const Rational c = inv_fact * power(i, j);
                if (!c.is_zero()) e[static_cast<size_t>(i)][static_cast<size_t>(j)] += NablaPoly::monomial(r, c);
            }
    }
    return e;
}

std::vector<std::vector<NablaPoly>> exp_nabla_N(int n) {
    // computed once per n; shared across threads
    static std::mutex mu;
    static std::map<int, std::vector<std::vector<NablaPoly>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, exp_nabla_of(build_N(n))).first;
    return it->second;
}

NablaPoly nabla_kl(int n, int k, int l) {
    if (k < 0 || l < 0 || k > n - 1 || l > n - 1) throw std::out_of_range("nabla_kl: indices out of range");
    const auto e = exp_nabla_N(n);
    const int row = n * (n - k - 1) + l;  // e^t_{n(n-k-1)+l+1}, 0-based
    const int col = n * (n - 1);          // e_{n(n-1)+1}, 0-based
    return e[static_cast<size_t>(row)][static_cast<size_t>(col)];
}

RationalMatrix n_power_block(int n, int i, int r) {
    if (i < 0 || i > n - 1 || r < 0) throw std::out_of_range("n_power_block: indices out of range");
    const auto a_scalar = [](int k) { return Rational(k % 2 == 1 ? -1 : 1, k); };  // a_k = (-1)^k / k
    // A_0 as an explicit matrix; A_k (k >= 1) enter only as the scalars -a_k.
    RationalMatrix a0(n, n);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < p; ++q) a0(p, q) = a_scalar(p - q);

    std::vector<RationalMatrix> a0_pow;
    a0_pow.push_back(RationalMatrix::identity(n));
    for (int p = 1; p <= r; ++p) a0_pow.push_back(a0_pow.back() * a0);

    // Scalar part: sum over strictly decreasing sequences i = s_0 > ... > s_k = 0
    // of prod (-a_{s_l - s_{l+1}}), i.e. over compositions of i into k positive parts.
    std::vector<Rational> comp_sum(static_cast<size_t>(r) + 1);  // indexed by k
    if (i == 0) {
        comp_sum[0] = Rational(1);  // the empty product
    } else {
        std::vector<int> parts;
        const auto rec = [&](auto&& self, int remaining, Rational prod) -> void {
            const int k = static_cast<int>(parts.size());
            if (remaining == 0) {
                if (k >= 1 && k <= r) comp_sum[static_cast<size_t>(k)] += prod;
                return;
            }
            if (k >= r) return;
            for (int step = 1; step <= remaining; ++step) {
                parts.push_back(step);
                self(self, remaining - step, prod * (-a_scalar(step)));
                parts.pop_back();
            }
        };
        rec(rec, i, Rational(1));
    }

    RationalMatrix out(n, n);
    for (int k = 0; k <= r; ++k) {
        if (comp_sum[static_cast<size_t>(k)].is_zero()) continue;
        out += (Rational::binomial(static_cast<unsigned>(r), static_cast<unsigned>(k)) * comp_sum[static_cast<size_t>(k)]) *
               a0_pow[static_cast<size_t>(r - k)];
    }
    return out;
}

SymbolicTable symbolic_table(int n) {
    SymbolicTable t;
    t.n = n;
    const auto e = exp_nabla_N(n);
    const int col = n * (n - 1);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
            t.entries[{k, l}] = e[static_cast<size_t>(n * (n - k - 1) + l)][static_cast<size_t>(col)];
    return t;
}

std::string SymbolicTable::render_text() const {
    std::ostringstream os;
    for (const auto& [kl, poly] : entries)
        os << "nabla_{" << kl.first << "," << kl.second << "} = " << poly.render("\u2207", false) << "\n";
    return os.str();
}

std::string SymbolicTable::render_latex() const {
    std::ostringstream os;
    os << "\\begin{aligned}\n";
    for (const auto& [kl, poly] : entries)
        os << "\\nabla_{" << kl.first << "," << kl.second << "} &= " << poly.render("\\nabla", true) << " \\\\\n";
    os << "\\end{aligned}\n";
    return os.str();
}

}  // namespace aybe
