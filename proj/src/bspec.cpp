#include "aybe/bspec.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace aybe {

namespace {

using nlohmann::json;

Cplx cplx_from_json(const json& j) {
    if (!j.is_object() || !j.contains("re") || !j.contains("im"))
        throw std::invalid_argument("BSpec: complex values must be {\"re\":..,\"im\":..} objects");
    return {j.at("re").get<double>(), j.at("im").get<double>()};
}

json cplx_to_json(Cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

}  // namespace

BSpec BSpec::diagonal(const std::vector<Cplx>& lambdas) {
    BSpec s;
    s.n = static_cast<int>(lambdas.size());
    s.S = CMatrix::identity(s.n);
    for (Cplx l : lambdas) s.blocks.push_back({l, 1});
    return s;
}

BSpec BSpec::single_jordan(int n, Cplx lambda) {
    BSpec s;
    s.n = n;
    s.S = CMatrix::identity(n);
    s.blocks.push_back({lambda, n});
    return s;
}

namespace {

// Characteristic polynomial coefficients by Faddeev-LeVerrier:
// p(z) = z^n + c[0] z^{n-1} + ... + c[n-1].
std::vector<Cplx> char_poly(const CMatrix& a) {
    const int n = a.rows();
    std::vector<Cplx> c(static_cast<size_t>(n));
    CMatrix m = a;
    for (int k = 1; k <= n; ++k) {
        Cplx tr{};
        for (int i = 0; i < n; ++i) tr += m(i, i);
        c[static_cast<size_t>(k - 1)] = -tr / static_cast<double>(k);
        if (k == n) break;
        CMatrix shifted = m;
        for (int i = 0; i < n; ++i) shifted(i, i) += c[static_cast<size_t>(k - 1)];
        m = a * shifted;
    }
    return c;
}

Cplx poly_eval(const std::vector<Cplx>& c, Cplx z) {
    Cplx p = 1.0;
    for (Cplx ck : c) p = p * z + ck;
    return p;
}

// Durand-Kerner root finder; fine for the n <= 8 scale of this code base.
std::vector<Cplx> poly_roots(const std::vector<Cplx>& c) {
    const int n = static_cast<int>(c.size());
    double scale = 1.0;
    for (int k = 0; k < n; ++k) scale = std::max(scale, std::pow(std::abs(c[static_cast<size_t>(k)]), 1.0 / (k + 1)));
    std::vector<Cplx> z(static_cast<size_t>(n));
    const Cplx seed(0.4, 0.9);
    Cplx p = 1.0;
    for (int i = 0; i < n; ++i) {
        p *= seed;
        z[static_cast<size_t>(i)] = scale * p;
    }
    for (int iter = 0; iter < 500; ++iter) {
        double step = 0.0;
        for (int i = 0; i < n; ++i) {
            Cplx denom = 1.0;
            for (int j = 0; j < n; ++j)
                if (j != i) denom *= z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)];
            const Cplx d = poly_eval(c, z[static_cast<size_t>(i)]) / denom;
            z[static_cast<size_t>(i)] -= d;
            step = std::max(step, std::abs(d));
        }
        if (step < 1e-15 * scale) break;
    }
    return z;
}

}  // namespace

BSpec BSpec::from_matrix(const CMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("BSpec::from_matrix: matrix not square");
    const int n = a.rows();
    if (std::abs(LuFactor(a).det()) < 1e-12) throw singular_error("BSpec::from_matrix: matrix not invertible");

    std::vector<Cplx> mu = poly_roots(char_poly(a));
    std::sort(mu.begin(), mu.end(), [](Cplx x, Cplx y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(mu[static_cast<size_t>(i)] - mu[static_cast<size_t>(j)]) < 1e-6)
                throw singular_error(
                    "BSpec::from_matrix: eigenvalue gap below 1e-6; supply the Jordan decomposition explicitly");

    // eigenvectors by inverse iteration with a slightly shifted eigenvalue
    CMatrix p(n, n);
    for (int k = 0; k < n; ++k) {
        const Cplx shift = mu[static_cast<size_t>(k)] + Cplx(1e-11) * (1.0 + std::abs(mu[static_cast<size_t>(k)]));
        CMatrix b = a;
        for (int i = 0; i < n; ++i) b(i, i) -= shift;
        const LuFactor lu(b);
        CMatrix x(n, 1);
        for (int i = 0; i < n; ++i) x(i, 0) = Cplx(1.0, static_cast<double>(i + 1));
        for (int it = 0; it < 3; ++it) {
            x = lu.solve(x);
            x *= 1.0 / x.max_abs();
        }
        for (int i = 0; i < n; ++i) p(i, k) = x(i, 0);
    }

    BSpec spec;
    spec.n = n;
    spec.S = LuFactor(p).inverse();  // A = P diag(mu) P^{-1} = S^{-1} J S
    for (Cplx m : mu) {
        double arg = std::arg(m);
        if (arg < 0.0) arg += 2.0 * kPi;
        spec.blocks.push_back({Cplx(arg / (2.0 * kPi), -std::log(std::abs(m)) / (2.0 * kPi)), 1});
    }
    spec.validate();

    // the decomposition must reproduce the input
    const CMatrix check = spec.matrix() - a;
    if (check.max_abs() > 1e-8 * std::max(1.0, a.max_abs()))
        throw singular_error("BSpec::from_matrix: decomposition failed to reproduce the matrix");
    return spec;
}

BSpec BSpec::from_json(const std::string& text) {
    const json j = json::parse(text);
    BSpec s;
    s.n = j.at("n").get<int>();
    if (s.n < 1) throw std::invalid_argument("BSpec: n must be >= 1");
    if (j.contains("S")) {
        const auto& rows = j.at("S");
        if (!rows.is_array() || static_cast<int>(rows.size()) != s.n)
            throw std::invalid_argument("BSpec: S must be an n x n array");
        s.S = CMatrix(s.n, s.n);
        for (int i = 0; i < s.n; ++i) {
            const auto& row = rows.at(static_cast<size_t>(i));
            if (!row.is_array() || static_cast<int>(row.size()) != s.n)
                throw std::invalid_argument("BSpec: S must be an n x n array");
            for (int k = 0; k < s.n; ++k) s.S(i, k) = cplx_from_json(row.at(static_cast<size_t>(k)));
        }
    } else {
        s.S = CMatrix::identity(s.n);
    }
    for (const auto& b : j.at("blocks")) {
        const int size = b.at("size").get<int>();
        if (size < 1) throw std::invalid_argument("BSpec: block size must be >= 1");
        s.blocks.push_back({cplx_from_json(b.at("lambda")), size});
    }
    s.validate();
    return s;
}

std::string BSpec::to_json() const {
    json j;
    j["n"] = n;
    json rows = json::array();
    for (int i = 0; i < n; ++i) {
        json row = json::array();
        for (int k = 0; k < n; ++k) row.push_back(cplx_to_json(S(i, k)));
        rows.push_back(row);
    }
    j["S"] = rows;
    json bs = json::array();
    for (const auto& b : blocks) bs.push_back(json{{"lambda", cplx_to_json(b.lambda)}, {"size", b.size}});
    j["blocks"] = bs;
    return j.dump(2);
}

void BSpec::validate(double cond_bound) const {
    int total = 0;
    for (const auto& b : blocks) {
        if (b.size < 1) throw std::invalid_argument("BSpec: block size must be >= 1");
        if (!is_finite(b.lambda)) throw std::invalid_argument("BSpec: lambda not finite");
        total += b.size;
    }
    if (total != n) throw std::invalid_argument("BSpec: block sizes must sum to n");
    if (S.rows() != n || S.cols() != n) throw std::invalid_argument("BSpec: S must be n x n");
    const LuFactor lu(S);
    if (!(lu.cond_inf() < cond_bound)) throw singular_error("BSpec: conjugator S is ill-conditioned");
}

bool BSpec::is_diagonal() const {
    for (const auto& b : blocks)
        if (b.size != 1) return false;
    return true;
}

bool BSpec::is_single_block() const { return blocks.size() == 1; }

std::vector<Cplx> BSpec::block_lambdas() const {
    std::vector<Cplx> l;
    for (const auto& b : blocks) l.push_back(b.lambda);
    return l;
}

std::vector<Cplx> BSpec::lambda_diffs() const {
    std::vector<Cplx> d;
    for (const auto& p : blocks)
        for (const auto& q : blocks) d.push_back(p.lambda - q.lambda);
    return d;
}

CMatrix BSpec::jordan_matrix() const {
    CMatrix j(n, n);
    int off = 0;
    for (const auto& b : blocks) {
        const Cplx mu = std::exp(kTwoPiI * b.lambda);
        for (int i = 0; i < b.size; ++i) {
            j(off + i, off + i) = mu;
            if (i + 1 < b.size) j(off + i, off + i + 1) = 1.0;
        }
        off += b.size;
    }
    return j;
}

CMatrix BSpec::matrix() const {
    const LuFactor lu(S);
    return lu.solve(jordan_matrix() * S);
}

BSpec BSpec::conjugated(const CMatrix& s_extra) const {
    BSpec r = *this;
    r.S = S * s_extra;  // (S s_extra)^{-1} J (S s_extra) = s_extra^{-1} A s_extra
    return r;
}

Cplx nearest_lattice_point(Cplx w, Cplx tau) {
    // Coordinates w = a + b tau with a, b real.
    const double b = w.imag() / tau.imag();
    const double a = w.real() - b * tau.real();
    Cplx best{};
    double best_d = std::abs(w);
    for (double db : {std::floor(b), std::ceil(b)})
        for (double da : {std::floor(a), std::ceil(a)}) {
            const Cplx p = da + db * tau;
            if (std::abs(w - p) < best_d) {
                best_d = std::abs(w - p);
                best = p;
            }
        }
    return best;
}

double dist_to_lattice(Cplx w, Cplx tau) { return std::abs(w - nearest_lattice_point(w, tau)); }

SigmaLattice SigmaLattice::of(const BSpec& spec, Cplx tau) { return of_lambdas(spec.block_lambdas(), tau); }

SigmaLattice SigmaLattice::of_lambdas(const std::vector<Cplx>& lambdas, Cplx tau) {
    SigmaLattice s;
    s.tau = tau;
    for (Cplx p : lambdas)
        for (Cplx q : lambdas) s.diffs.push_back(p - q);
    return s;
}

double SigmaLattice::distance(Cplx v) const {
    double best = std::numeric_limits<double>::infinity();
    for (Cplx d : diffs) best = std::min(best, dist_to_lattice(v - d, tau));
    return best;
}

Cplx SigmaLattice::nearest(Cplx v) const {
    Cplx best{};
    double best_d = std::numeric_limits<double>::infinity();
    for (Cplx d : diffs) {
        const Cplx p = d + nearest_lattice_point(v - d, tau);
        if (std::abs(v - p) < best_d) {
            best_d = std::abs(v - p);
            best = p;
        }
    }
    return best;
}

}  // namespace aybe
