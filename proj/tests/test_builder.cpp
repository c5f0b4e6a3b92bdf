#include <doctest.h>

#include <cmath>
#include <random>

#include "aybe/kronecker.hpp"
#include "aybe/nabla.hpp"
#include "aybe/solution.hpp"

using namespace aybe;

namespace {

Rational rat(long long p, long long q = 1) { return Rational(p, q); }

RationalMatrix rat_power(const RationalMatrix& m, int r) {
    RationalMatrix p = RationalMatrix::identity(m.rows());
    for (int k = 0; k < r; ++k) p = p * m;
    return p;
}

NablaPoly poly(std::vector<Rational> c) { return NablaPoly(std::move(c)); }

struct Rng {
    std::mt19937_64 g{31337};
    double unit() { return static_cast<double>(g() >> 11) * 0x1.0p-53; }
    Cplx in_cell(Cplx tau) { return (0.15 + 0.7 * unit()) + (0.15 + 0.7 * unit()) * tau; }
};

}  // namespace

TEST_SUITE_BEGIN("builder");

TEST_CASE("build_N reproduces the displayed matrices") {
    // n = 1: the 1x1 zero matrix
    CHECK(build_N(1).is_zero());

    // n = 2: [[0,0,1,0],[-1,0,0,1],[0,0,0,0],[0,0,-1,0]]
    const RationalMatrix n2 = build_N(2);
    const long long expect2[4][4] = {{0, 0, 1, 0}, {-1, 0, 0, 1}, {0, 0, 0, 0}, {0, 0, -1, 0}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(n2(i, j) == rat(expect2[i][j]));

    // n = 2: N^2 has the single entry -2 at (2,3) in 1-based indexing, N^3 = 0
    const RationalMatrix n2sq = rat_power(n2, 2);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(n2sq(i, j) == (i == 1 && j == 2 ? rat(-2) : rat(0)));
    CHECK(rat_power(n2, 3).is_zero());

    // n = 3: spot rows of the displayed 9x9 matrix
    const RationalMatrix n3 = build_N(3);
    CHECK(n3(0, 3) == rat(1));
    CHECK(n3(0, 6) == rat(-1, 2));
    CHECK(n3(1, 0) == rat(-1));
    CHECK(n3(2, 0) == rat(1, 2));
    CHECK(n3(2, 1) == rat(-1));
    CHECK(n3(2, 8) == rat(-1, 2));
    CHECK(n3(5, 3) == rat(1, 2));
    CHECK(n3(8, 6) == rat(1, 2));
    CHECK(n3(8, 7) == rat(-1));
    for (int j = 0; j < 9; ++j) CHECK(n3(6, j) == rat(0));
}

TEST_CASE("nilpotency index: N^{2n-1} = 0, N^{2n-2} != 0") {
    for (int n = 1; n <= 6; ++n) CHECK(nilpotency_index_check(n));
    for (int n = 2; n <= 5; ++n) {
        const RationalMatrix nm = build_N(n);
        CHECK(rat_power(nm, 2 * n - 1).is_zero());
        CHECK_FALSE(rat_power(nm, 2 * n - 2).is_zero());
    }
}

TEST_CASE("exp(nabla N) for n = 2 matches the display") {
    const auto e = exp_nabla_N(2);
    const NablaPoly one = NablaPoly::one();
    const NablaPoly nab = poly({rat(0), rat(1)});
    const NablaPoly mnab = poly({rat(0), rat(-1)});
    const NablaPoly mnab2 = poly({rat(0), rat(0), rat(-1)});
    const NablaPoly zero;
    const NablaPoly expect[4][4] = {{one, zero, nab, zero},
                                    {mnab, one, mnab2, nab},
                                    {zero, zero, one, zero},
                                    {zero, zero, mnab, one}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(e[i][j] == expect[i][j]);
}

TEST_CASE("exp(nabla N) e_7 for n = 3 matches the displayed columns") {
    const auto e = exp_nabla_N(3);
    const int col = 6;  // e_7
    CHECK(e[0][col] == poly({rat(0), rat(-1, 2), rat(1, 2)}));
    CHECK(e[1][col] == poly({rat(0), rat(0), rat(1, 2), rat(-1, 2)}));
    CHECK(e[2][col] == poly({rat(0), rat(0), rat(-1, 4), rat(0), rat(1, 4)}));
    CHECK(e[3][col] == poly({rat(0), rat(1)}));
    CHECK(e[4][col] == poly({rat(0), rat(0), rat(-1)}));
    CHECK(e[5][col] == poly({rat(0), rat(0), rat(1, 2), rat(1, 2)}));
    CHECK(e[6][col] == NablaPoly::one());
    CHECK(e[7][col] == poly({rat(0), rat(-1)}));
    CHECK(e[8][col] == poly({rat(0), rat(1, 2), rat(1, 2)}));
}

TEST_CASE("nabla_kl tables for n = 2 and n = 3 are exact") {
    // n = 2: {1, nabla, -nabla, -nabla^2}
    CHECK(nabla_kl(2, 0, 0) == NablaPoly::one());
    CHECK(nabla_kl(2, 1, 0) == poly({rat(0), rat(1)}));
    CHECK(nabla_kl(2, 0, 1) == poly({rat(0), rat(-1)}));
    CHECK(nabla_kl(2, 1, 1) == poly({rat(0), rat(0), rat(-1)}));

    // n = 3: all nine entries
    CHECK(nabla_kl(3, 0, 0) == NablaPoly::one());
    CHECK(nabla_kl(3, 1, 0) == poly({rat(0), rat(1)}));
    CHECK(nabla_kl(3, 0, 1) == poly({rat(0), rat(-1)}));
    CHECK(nabla_kl(3, 1, 1) == poly({rat(0), rat(0), rat(-1)}));
    CHECK(nabla_kl(3, 0, 2) == poly({rat(0), rat(1, 2), rat(1, 2)}));
    CHECK(nabla_kl(3, 2, 0) == poly({rat(0), rat(-1, 2), rat(1, 2)}));
    CHECK(nabla_kl(3, 1, 2) == poly({rat(0), rat(0), rat(1, 2), rat(1, 2)}));
    CHECK(nabla_kl(3, 2, 1) == poly({rat(0), rat(0), rat(1, 2), rat(-1, 2)}));
    CHECK(nabla_kl(3, 2, 2) == poly({rat(0), rat(0), rat(-1, 4), rat(0), rat(1, 4)}));

    // nabla_{0,0} is the identity operator for every n
    for (int n = 1; n <= 5; ++n) CHECK(nabla_kl(n, 0, 0) == NablaPoly::one());
    CHECK(nabla_kl(1, 0, 0) == NablaPoly::one());

    CHECK_THROWS_AS(nabla_kl(2, 2, 0), std::out_of_range);
}

TEST_CASE("degree bounds: deg nabla_kl <= k+l and <= 2n-2") {
    for (int n = 1; n <= 4; ++n)
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) {
                const int d = nabla_kl(n, k, l).degree();
                CHECK(d <= k + l);
                CHECK(d <= 2 * n - 2);
            }
}

TEST_CASE("powers-of-N block formula matches direct rational powers") {
    // r = 0: identity block at i = 0, zero otherwise
    CHECK(n_power_block(3, 0, 0) == RationalMatrix::identity(3));
    CHECK(n_power_block(3, 1, 0).is_zero());
    CHECK(n_power_block(3, 2, 0).is_zero());

    // n = 2, r = 1, i = 1: A_1 = identity
    CHECK(n_power_block(2, 1, 1) == RationalMatrix::identity(2));

    // all blocks of N^r for n <= 4, r <= 2n-2
    for (int n = 1; n <= 4; ++n) {
        const RationalMatrix nm = build_N(n);
        for (int r = 0; r <= 2 * n - 2; ++r) {
            const RationalMatrix nr = rat_power(nm, r);
            for (int i = 0; i < n; ++i) {
                const RationalMatrix blk = n_power_block(n, i, r);
                for (int p = 0; p < n; ++p)
                    for (int q = 0; q < n; ++q) CHECK(blk(p, q) == nr(p, i * n + q));
            }
        }
    }
}

TEST_CASE("powers-of-N path-product identity") {
    // sum over north-east paths of length chi from (0,0) to (i,j) of
    // prod_s e^t_{beta_s+1} N_{alpha_s}^{(u_s)} e_1 equals e^t_{j+1} N_i^{(u)} e_1
    // with u = sum u_s; exact in rational arithmetic.
    struct Case {
        int n, i, j;
        std::vector<int> us;
    };
    for (const Case& c : {Case{2, 1, 1, {1, 1}}, Case{2, 1, 1, {2, 1}}, Case{3, 1, 1, {1, 2}}, Case{3, 2, 1, {2, 1}},
                          Case{3, 2, 2, {1, 1, 2}}, Case{3, 1, 2, {1, 1, 1}}}) {
        const int chi = static_cast<int>(c.us.size());
        // enumerate step sequences (alpha_s, beta_s) != (0,0) with the given sums
        Rational lhs;
        std::vector<std::pair<int, int>> path;
        const auto rec = [&](auto&& self, int ai, int bj) -> void {
            if (static_cast<int>(path.size()) == chi) {
                if (ai != c.i || bj != c.j) return;
                Rational prod(1);
                for (int s = 0; s < chi; ++s) {
                    const auto [al, be] = path[static_cast<size_t>(s)];
                    if (al > c.n - 1) return;  // no such block in N
                    prod *= n_power_block(c.n, al, c.us[static_cast<size_t>(s)])(be, 0);
                }
                lhs += prod;
                return;
            }
            for (int al = 0; al + ai <= c.i; ++al)
                for (int be = 0; be + bj <= c.j; ++be) {
                    if (al == 0 && be == 0) continue;
                    path.emplace_back(al, be);
                    self(self, ai + al, bj + be);
                    path.pop_back();
                }
        };
        rec(rec, 0, 0);
        int u = 0;
        for (int s : c.us) u += s;
        const Rational rhs = n_power_block(c.n, c.i, u)(c.j, 0);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("symbolic table rendering") {
    const SymbolicTable t2 = symbolic_table(2);
    CHECK(t2.entries.at({0, 0}).render("∇", false) == "1");
    CHECK(t2.entries.at({1, 0}).render("∇", false) == "∇");
    CHECK(t2.entries.at({0, 1}).render("∇", false) == "-∇");
    CHECK(t2.entries.at({1, 1}).render("∇", false) == "-∇^2");

    const SymbolicTable t3 = symbolic_table(3);
    CHECK(t3.entries.at({2, 2}).render("∇", false) == "-1/4 ∇^2 + 1/4 ∇^4");
    CHECK(t3.entries.at({2, 2}).render("\\nabla", true) == "-\\tfrac{1}{4} \\nabla^{2} + \\tfrac{1}{4} \\nabla^{4}");
    CHECK(t3.entries.at({0, 2}).render("∇", false) == "1/2 ∇ + 1/2 ∇^2");

    const SymbolicTable t1 = symbolic_table(1);
    CHECK(t1.entries.at({0, 0}).render("∇", false) == "1");
}

TEST_CASE("r_diagonal closed form") {
    const TorusParam tp(Cplx(0.0, 1.0));
    const KroneckerKind kind = KroneckerKind::elliptic(tp);
    const Cplx v(0.37, 0.21), y(0.18, 0.42);

    // n = 1, lambda = 0: sigma(v,y) e11 (x) e11
    const MatTensor r1 = r_diagonal({Cplx{}}, v, y, tp);
    CHECK(std::abs(r1.coeff(0, 0, 0, 0) - sigma(kind, v, y)) < 1e-14);

    // n = 2, equal lambdas: sigma(v,y) sum e_{lk} (x) e_{kl}
    const MatTensor r2 = r_diagonal({Cplx{}, Cplx{}}, v, y, tp);
    const Cplx s = sigma(kind, v, y);
    for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) CHECK(std::abs(r2.coeff(l, k, k, l) - s) < 1e-14);
    CHECK(std::abs(r2.coeff(0, 1, 0, 1)) == 0.0);

    // n = 2, lambdas (0, 0.3): coefficient of e_{2,1} (x) e_{1,2} is sigma(v + 0.3, y)
    const MatTensor r3 = r_diagonal({Cplx{}, Cplx(0.3)}, v, y, tp);
    CHECK(std::abs(r3.coeff(1, 0, 0, 1) - sigma(kind, v + 0.3, y)) < 1e-13);
    CHECK(std::abs(r3.coeff(0, 1, 1, 0) - sigma(kind, v - 0.3, y)) < 1e-13);

    // common shift leaves the tensor unchanged (lambda_kl invariant)
    const MatTensor r4 = r_diagonal({Cplx(0.11, 0.07), Cplx(0.41, 0.07)}, v, y, tp);
    CHECK((r4 - r3).max_abs() < 1e-13);
}

TEST_CASE("r_jordan reproduces the displayed n = 2 solution") {
    const TorusParam tp(Cplx(0.0, 1.0));
    const Cplx v(0.37, 0.21), y(0.18, 0.42);
    const Jet sj = sigma_jet(KroneckerKind::elliptic(tp), v, y, 2);
    const Cplx s = sj.nabla(0), ds = sj.nabla(1), dds = sj.nabla(2);

    const MatTensor r = r_jordan(2, v, y, tp);
    // sigma (e11 x e11 + e22 x e22 + e12 x e21 + e21 x e12)
    CHECK(std::abs(r.coeff(0, 0, 0, 0) - s) < 1e-13);
    CHECK(std::abs(r.coeff(1, 1, 1, 1) - s) < 1e-13);
    CHECK(std::abs(r.coeff(0, 1, 1, 0) - s) < 1e-13);
    CHECK(std::abs(r.coeff(1, 0, 0, 1) - s) < 1e-13);
    // nabla sigma (e12 x h - h x e12), h = e11 - e22
    CHECK(std::abs(r.coeff(0, 1, 0, 0) - ds) < 1e-13);
    CHECK(std::abs(r.coeff(0, 1, 1, 1) + ds) < 1e-13);
    CHECK(std::abs(r.coeff(0, 0, 0, 1) + ds) < 1e-13);
    CHECK(std::abs(r.coeff(1, 1, 0, 1) - ds) < 1e-13);
    // -nabla^2 sigma e12 x e12
    CHECK(std::abs(r.coeff(0, 1, 0, 1) + dds) < 1e-13);
    // vanishing pattern: e_{21} (x) e_{11}
    CHECK(std::abs(r.coeff(1, 0, 0, 0)) == 0.0);

    // n = 1 reduces to the diagonal case
    const MatTensor r1 = r_jordan(1, v, y, tp);
    CHECK(std::abs(r1.coeff(0, 0, 0, 0) - s) < 1e-14);
}

TEST_CASE("r_jordan support pattern and difference dependence") {
    Rng rng;
    const TorusParam tp(Cplx(0.0, 1.0));
    for (int n = 2; n <= 4; ++n) {
        const Cplx v = rng.in_cell(tp.tau), y = rng.in_cell(tp.tau);
        const MatTensor r = r_jordan(n, v, y, tp);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    for (int d = 0; d < n; ++d) {
                        const Cplx coeff = r.coeff(a, b, c, d);
                        if (d < a || b < c) {
                            CHECK(std::abs(coeff) == 0.0);  // zero unless d >= a and b >= c
                        } else if (a > 0 && c > 0) {
                            // depends only on (d - a, b - c): compare with the shifted entry
                            CHECK(std::abs(coeff - r.coeff(a - 1, b - 1, c - 1, d - 1)) < 1e-13);
                        }
                    }
    }
}

TEST_CASE("r_general shortcuts agree with the closed forms") {
    const TorusParam tp(Cplx(0.0, 1.0));
    const Cplx v(0.37, 0.21), y(0.18, 0.42);

    const MatTensor a = r_general(BSpec::single_jordan(3), v, y, tp);
    CHECK((a - r_jordan(3, v, y, tp)).max_abs() == 0.0);

    const std::vector<Cplx> lambdas{Cplx{}, Cplx(0.3), Cplx(0.55, 0.1)};
    const MatTensor b = r_general(BSpec::diagonal(lambdas), v, y, tp);
    CHECK((b - r_diagonal(lambdas, v, y, tp)).max_abs() == 0.0);
}

TEST_CASE("from_matrix diagonalizes well-separated matrices") {
    const TorusParam tp(Cplx(0.0, 1.0));
    const Cplx v(0.33, 0.27), y(0.41, 0.18);

    // build A = S^{-1} diag(mu) S and recover a spec describing the same matrix
    BSpec ref = BSpec::diagonal({Cplx(0.2, 0.0), Cplx(0.55, 0.1), Cplx(0.8, -0.05)});
    ref.S = CMatrix(3, 3,
                    {Cplx(1.0), Cplx(0.4, 0.2), Cplx(-0.1, 0.3), Cplx(0.2, -0.3), Cplx(1.2), Cplx(0.5, 0.1),
                     Cplx(0.0, 0.2), Cplx(-0.3, 0.0), Cplx(0.9)});
    const CMatrix a = ref.matrix();
    const BSpec rec = BSpec::from_matrix(a);

    // the recovered spec describes the same matrix ...
    CHECK((rec.matrix() - a).max_abs() < 1e-9);
    // ... with the lambda branch Re in [0,1) ...
    for (const auto& b : rec.blocks) {
        CHECK(b.lambda.real() >= 0.0);
        CHECK(b.lambda.real() < 1.0);
        CHECK(b.size == 1);
    }
    // ... and therefore the same solution tensor
    CHECK((r_general(rec, v, y, tp) - r_general(ref, v, y, tp)).max_abs() < 1e-8);

    // clustered eigenvalues are refused
    CMatrix near_jordan(2, 2, {Cplx(1.0), Cplx(1.0), Cplx(0.0), Cplx(1.0 + 1e-9)});
    CHECK_THROWS_AS(BSpec::from_matrix(near_jordan), singular_error);
}

TEST_CASE("singular evaluation points are rejected") {
    const TorusParam tp(Cplx(0.0, 1.0));
    CHECK_THROWS_AS(r_jordan(2, Cplx(1e-5, 0.0), Cplx(0.3, 0.4), tp), singular_error);
    CHECK_THROWS_AS(r_jordan(2, Cplx(0.3, 0.4), Cplx(1.0, 0.0), tp), singular_error);
    // v on the lambda difference 0.3 is singular for the diagonal solution
    CHECK_THROWS_AS(r_diagonal({Cplx{}, Cplx(0.3)}, Cplx(0.3), Cplx(0.21, 0.4), tp), singular_error);
}

TEST_CASE("BSpec JSON schema violations are rejected") {
    CHECK_THROWS_AS(BSpec::from_json(R"({"n": 2, "blocks": []})"), std::invalid_argument);
    CHECK_THROWS_AS(BSpec::from_json(R"({"n": 2, "blocks": [{"lambda": {"re":0,"im":0}, "size": 1}]})"),
                    std::invalid_argument);  // sizes sum to 1 != 2
    CHECK_THROWS_AS(BSpec::from_json(R"({"n": 2, "blocks": [{"lambda": {"re":0,"im":0}, "size": 0},
                                                            {"lambda": {"re":0,"im":0}, "size": 2}]})"),
                    std::invalid_argument);  // non-positive block
    CHECK_THROWS_AS(BSpec::from_json(R"({"n": 2, "S": [[{"re":1,"im":0}]],
                                          "blocks": [{"lambda": {"re":0,"im":0}, "size": 2}]})"),
                    std::invalid_argument);  // S not n x n
    CHECK_THROWS_AS(BSpec::from_json(R"({"n": 2, "blocks": [{"lambda": "0.3", "size": 2}]})"),
                    std::invalid_argument);  // complex must be {re, im}
    // singular conjugator
    CHECK_THROWS_AS(
        BSpec::from_json(
            R"({"n": 2, "S": [[{"re":1,"im":0},{"re":1,"im":0}],[{"re":1,"im":0},{"re":1,"im":0}]],
                "blocks": [{"lambda": {"re":0,"im":0}, "size": 2}]})"),
        singular_error);

    // round-trip of a valid spec
    BSpec spec;
    spec.n = 3;
    spec.blocks = {{Cplx(0.1, 0.05), 2}, {Cplx(0.45, 0.0), 1}};
    spec.S = CMatrix::identity(3);
    spec.S(0, 2) = Cplx(0.25, -0.5);
    const BSpec back = BSpec::from_json(spec.to_json());
    CHECK((back.matrix() - spec.matrix()).max_abs() < 1e-15);
}

TEST_SUITE_END();
