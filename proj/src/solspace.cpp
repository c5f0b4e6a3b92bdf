#include "aybe/solspace.hpp"

#include <cmath>
#include <stdexcept>

#include "aybe/nabla.hpp"
#include "aybe/solution.hpp"

namespace aybe {

namespace {

// Condition bound for inverting res_0; past this the sample counts as
// "too close to Sigma_B" and is rejected loudly.
constexpr double kResCondBound = 1e10;

Cplx half_period(const TorusParam& tp) { return (tp.tau + 1.0) / 2.0; }

std::vector<Cplx> poly_from_rational(const NablaPoly& p) {
    std::vector<Cplx> c(static_cast<size_t>(p.degree() + 1));
    for (int r = 0; r <= p.degree(); ++r) c[static_cast<size_t>(r)] = p.coeff(r).to_double();
    return c;
}

}  // namespace

void SolEntry::add_term(std::vector<Cplx> poly, Cplx shift) {
    while (!poly.empty() && poly.back() == Cplx{}) poly.pop_back();
    if (poly.empty()) return;
    terms_.push_back({std::move(poly), shift});
}

void SolEntry::add_scaled(const SolEntry& o, Cplx factor) {
    if (factor == Cplx{}) return;
    for (const auto& t : o.terms_) {
        std::vector<Cplx> poly = t.poly;
        for (auto& c : poly) c *= factor;
        add_term(std::move(poly), t.shift);
    }
}

Cplx SolEntry::eval(Cplx z, const TorusParam& tp) const {
    Cplx s{};
    for (const auto& t : terms_) {
        const int order = static_cast<int>(t.poly.size()) - 1;
        const Jet th = theta3(Jet::variable(z + t.shift + half_period(tp), order), tp);
        for (int r = 0; r <= order; ++r)
            if (t.poly[static_cast<size_t>(r)] != Cplx{}) s += t.poly[static_cast<size_t>(r)] * th.nabla(r);
    }
    return s;
}

CMatrix SolElement::eval(Cplx z, const TorusParam& tp) const {
    CMatrix m(n_, n_);
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b) m(a, b) = entry(a, b).eval(z, tp);
    return m;
}

SolElement SolElement::conjugated(const CMatrix& t, const CMatrix& t_inv) const {
    SolElement r(n_);
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
            for (int p = 0; p < n_; ++p) {
                if (t(a, p) == Cplx{}) continue;
                for (int q = 0; q < n_; ++q) {
                    const Cplx f = t(a, p) * t_inv(q, b);
                    if (f != Cplx{}) r.entry(a, b).add_scaled(entry(p, q), f);
                }
            }
    return r;
}

void SolElement::add_scaled(const SolElement& o, Cplx factor) {
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b) entry(a, b).add_scaled(o.entry(a, b), factor);
}

SolElement sol_generator_U(int n, Cplx v, const TorusParam&) {
    const auto e = exp_nabla_N(n);
    const int col = n * (n - 1);
    SolElement u(n);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
            u.entry(k, l).add_term(poly_from_rational(e[static_cast<size_t>(k * n + l)][static_cast<size_t>(col)]), v);
    return u;
}

std::vector<SolElement> sol_basis_jordan(int n, Cplx v, const TorusParam&) {
    const auto e = exp_nabla_N(n);
    const int col = n * (n - 1);
    // (F_{ij})_{p,q} = U_{p+n-i, q-j+1}; all indices 0-based here.
    std::vector<SolElement> basis;
    basis.reserve(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            SolElement f(n);
            for (int p = 0; p <= i; ++p)
                for (int q = j; q < n; ++q) {
                    const int urow = p + (n - 1 - i);
                    const int ucol = q - j;
                    f.entry(p, q).add_term(poly_from_rational(e[static_cast<size_t>(urow * n + ucol)][static_cast<size_t>(col)]), v);
                }
            basis.push_back(std::move(f));
        }
    return basis;
}

std::vector<SolElement> sol_basis_diagonal(const std::vector<Cplx>& lambdas, Cplx v, const TorusParam&) {
    const int n = static_cast<int>(lambdas.size());
    std::vector<SolElement> basis;
    basis.reserve(static_cast<size_t>(n) * n);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            SolElement f(n);
            f.entry(k, l).add_term({Cplx(1.0)}, v - (lambdas[static_cast<size_t>(k)] - lambdas[static_cast<size_t>(l)]));
            basis.push_back(std::move(f));
        }
    return basis;
}

std::vector<SolElement> sol_basis_bspec(const BSpec& spec, Cplx v, const TorusParam&) {
    spec.validate();
    const int n = spec.n;
    const int t = static_cast<int>(spec.blocks.size());
    std::vector<int> offset(static_cast<size_t>(t));
    for (int p = 1; p < t; ++p) offset[static_cast<size_t>(p)] = offset[static_cast<size_t>(p - 1)] + spec.blocks[static_cast<size_t>(p - 1)].size;

    // Basis of Sol_{B', v, tau} for B' = diag(mu_p J_{m_p}(1)): block (p,q)
    // carries the rectangular Polishchuk-Zaslow basis with theta shift
    // v - (lambda_p - lambda_q).
    std::vector<SolElement> basis;
    basis.reserve(static_cast<size_t>(n) * n);
    for (int p = 0; p < t; ++p)
        for (int q = 0; q < t; ++q) {
            const int m = spec.blocks[static_cast<size_t>(p)].size;
            const int mp = spec.blocks[static_cast<size_t>(q)].size;
            const Cplx w = v - (spec.blocks[static_cast<size_t>(p)].lambda - spec.blocks[static_cast<size_t>(q)].lambda);
            const auto e = exp_nabla_of(build_N_pair(m, mp));
            for (int u = 0; u < m * mp; ++u) {
                SolElement f(n);
                for (int r = 0; r < m; ++r)
                    for (int c = 0; c < mp; ++c) {
                        const NablaPoly& poly = e[static_cast<size_t>(r * mp + c)][static_cast<size_t>(u)];
                        if (!poly.is_zero())
                            f.entry(offset[static_cast<size_t>(p)] + r, offset[static_cast<size_t>(q)] + c)
                                .add_term(poly_from_rational(poly), w);
                    }
                basis.push_back(std::move(f));
            }
        }

    // Gauge from B' to A = S^{-1} J S: Phi -> T Phi T^{-1}, T = S^{-1} D.
    bool need_gauge = false;
    for (const auto& b : spec.blocks)
        if (b.size > 1 && std::abs(std::exp(kTwoPiI * b.lambda) - 1.0) > 0.0) need_gauge = true;
    CMatrix d = CMatrix::identity(n), d_inv = CMatrix::identity(n);
    if (need_gauge) {
        int off = 0;
        for (const auto& b : spec.blocks) {
            const Cplx mu = std::exp(kTwoPiI * b.lambda);
            Cplx pw = 1.0;
            for (int i = 0; i < b.size; ++i) {
                d(off + i, off + i) = pw;
                d_inv(off + i, off + i) = 1.0 / pw;
                pw *= mu;
            }
            off += b.size;
        }
    }
    bool s_is_identity = true;
    for (int i = 0; i < n && s_is_identity; ++i)
        for (int j = 0; j < n; ++j)
            if (spec.S(i, j) != Cplx(i == j ? 1.0 : 0.0)) {
                s_is_identity = false;
                break;
            }
    if (!need_gauge && s_is_identity) return basis;

    const CMatrix s_inv = LuFactor(spec.S).inverse();
    const CMatrix t_mat = s_inv * d;
    const CMatrix t_inv = d_inv * spec.S;
    for (auto& f : basis) f = f.conjugated(t_mat, t_inv);
    return basis;
}

CMatrix res_matrix(const std::vector<SolElement>& basis, Cplx z0, const TorusParam& tp) {
    if (basis.empty()) throw std::domain_error("res_matrix: empty basis");
    const int n = basis.front().n();
    if (static_cast<int>(basis.size()) != n * n) throw std::domain_error("res_matrix: basis must have n^2 elements");
    CMatrix m(n * n, n * n);
    for (int i = 0; i < n * n; ++i) {
        const CMatrix phi = basis[static_cast<size_t>(i)].eval(z0, tp);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) m(a * n + b, i) = phi(a, b);
    }
    return m;
}

CMatrix res0_matrix(const std::vector<SolElement>& basis, const TorusParam& tp) { return res_matrix(basis, Cplx{}, tp); }

CMatrix ev_matrix(const std::vector<SolElement>& basis, Cplx y2, Cplx y1, const TorusParam& tp) {
    const Cplx norm = theta3(y2 - y1 + half_period(tp), tp);
    if (std::abs(norm) < 1e-12) throw singular_error("ev_matrix: theta3 normalization vanishes (y on Lambda?)");
    CMatrix m = res_matrix(basis, y2, tp);
    m *= 1.0 / norm;
    return m;
}

CMatrix ev_y_matrix(const std::vector<SolElement>& basis, Cplx y, const TorusParam& tp) {
    return ev_matrix(basis, y, Cplx{}, tp);
}

namespace {

MatTensor r_from_maps(const CMatrix& res, const CMatrix& ev, int n, const TorusParam& tp) {
    const LuFactor lu(res);
    const double cond = lu.cond_inf();
    if (!(cond < kResCondBound))
        throw singular_error("r_from_solspace: res_0 ill-conditioned (v too close to Sigma_B), cond = " + std::to_string(cond));
    const CMatrix r_map = ev * lu.inverse();
    const Cplx c = kImagUnit * theta1_prime0(tp) * std::exp(-kImagUnit * kPi * tp.tau / 4.0);
    MatTensor t = from_linear_map(r_map, n);
    t *= c;
    return t;
}

}  // namespace

MatTensor r_from_solspace(const BSpec& spec, Cplx v, Cplx y, const TorusParam& tp) {
    const auto basis = sol_basis_bspec(spec, v, tp);
    return r_from_maps(res0_matrix(basis, tp), ev_y_matrix(basis, y, tp), spec.n, tp);
}

MatTensor r_from_solspace4(const BSpec& spec, Cplx v1, Cplx v2, Cplx y1, Cplx y2, const TorusParam& tp) {
    const Cplx v = v1 - v2;
    const auto basis = sol_basis_bspec(spec, v - y1, tp);
    return r_from_maps(res_matrix(basis, y1, tp), ev_matrix(basis, y2, y1, tp), spec.n, tp);
}

SolElement res0_inverse_paths(int n, int a, int b, Cplx v, const TorusParam& tp) {
    if (n > 3) throw std::domain_error("res0_inverse_paths: combinatorial oracle capped at n = 3");
    if (a < 1 || b < 1 || a > n || b > n) throw std::out_of_range("res0_inverse_paths: indices out of range");
    const auto basis = sol_basis_jordan(n, v, tp);
    const auto f = [&](int i, int j) -> const SolElement& {  // 1-based
        return basis[static_cast<size_t>((i - 1) * n + (j - 1))];
    };
    // F_{ij}(0) for all (i,j).
    std::vector<CMatrix> f0;
    f0.reserve(basis.size());
    for (const auto& el : basis) f0.push_back(el.eval(Cplx{}, tp));
    const Cplx theta_v0 = theta3(v + half_period(tp), tp);

    SolElement gamma(n);
    // gamma^{a,b} = sum_{p<=a, q>=b} coeff_{p,q} F_{p,q}, coeff via all
    // south-west paths (p,q) -> (a,b).
    for (int p = 1; p <= a; ++p)
        for (int q = b; q <= n; ++q) {
            Cplx coeff{};
            // DFS over paths; prod carries prod_s (F_{P_{s+1}}(0))_{P_s}.
            const auto dfs = [&](auto&& self, int ai, int bj, int len, Cplx prod) -> void {
                if (ai == a && bj == b) {
                    coeff += (len % 2 == 0 ? 1.0 : -1.0) / std::pow(theta_v0, len + 1) * prod;
                    return;
                }
                for (int ni = ai; ni <= a; ++ni)
                    for (int nj = bj; nj >= b; --nj) {
                        if (ni == ai && nj == bj) continue;
                        const Cplx step = f0[static_cast<size_t>((ni - 1) * n + (nj - 1))](ai - 1, bj - 1);
                        if (step == Cplx{}) continue;
                        self(self, ni, nj, len + 1, prod * step);
                    }
            };
            dfs(dfs, p, q, 0, Cplx(1.0));
            if (coeff != Cplx{}) gamma.add_scaled(f(p, q), coeff);
        }
    return gamma;
}

double membership_residual(const SolElement& phi, const CMatrix& b, Cplx v, Cplx z, const TorusParam& tp) {
    const CMatrix at_z = phi.eval(z, tp);
    const CMatrix at_z1 = phi.eval(z + 1.0, tp);
    const CMatrix at_zt = phi.eval(z + tp.tau, tp);
    const Cplx e = -std::exp(-kTwoPiI * (z + v + tp.tau));
    const CMatrix lhs = at_zt * b;
    const CMatrix rhs = e * (b * at_z);
    // scale-normalized: theta magnitudes grow like exp(pi Im(.)^2 / Im tau),
    // so a raw difference would just measure where z sits
    const double scale = std::max({1.0, at_z.max_abs(), lhs.max_abs(), rhs.max_abs()});
    const double r1 = (at_z1 - at_z).max_abs();
    const double r2 = (lhs - rhs).max_abs();
    return std::max(r1, r2) / scale;
}

}  // namespace aybe
