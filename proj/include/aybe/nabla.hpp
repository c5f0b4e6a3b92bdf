#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "aybe/common.hpp"
#include "aybe/jet.hpp"
#include "aybe/rational.hpp"

namespace aybe {

/// Dense matrix over the exact rationals; 0-based indices.
class RationalMatrix {
public:
    RationalMatrix(int rows, int cols);

    static RationalMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Rational& operator()(int i, int j) const { return a_[idx(i, j)]; }
    Rational& operator()(int i, int j) { return a_[idx(i, j)]; }

    bool is_zero() const;
    bool operator==(const RationalMatrix& o) const;

    RationalMatrix& operator+=(const RationalMatrix& o);
    friend RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) { return a += b; }
    friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
    friend RationalMatrix operator*(const Rational& s, RationalMatrix a);

private:
    size_t idx(int i, int j) const { return static_cast<size_t>(i) * cols_ + j; }

    int rows_, cols_;
    std::vector<Rational> a_;
};

/// Polynomial sum_r c_r nabla^r with exact rational coefficients, where
/// nabla = -(1/(2 pi i)) d/dz.
class NablaPoly {
public:
    NablaPoly() = default;
    explicit NablaPoly(std::vector<Rational> coeffs);

    static NablaPoly one() { return NablaPoly({Rational(1)}); }
    static NablaPoly monomial(int degree, Rational coeff = Rational(1));

    int degree() const;  // -1 for the zero polynomial
    Rational coeff(int r) const;
    bool is_zero() const { return degree() < 0; }
    bool operator==(const NablaPoly& o) const;

    NablaPoly& operator+=(const NablaPoly& o);
    friend NablaPoly operator+(NablaPoly a, const NablaPoly& b) { return a += b; }
    friend NablaPoly operator*(const Rational& s, NablaPoly a);

    /// Apply to a function carried as a jet of plain Taylor coefficients:
    /// sum_r c_r nabla^r f, with nabla^r read off via Jet::nabla.
    Cplx apply(const Jet& f) const;

    /// "1", "nabla", "-nabla^2", "1/2 nabla + 1/2 nabla^2", ... with the
    /// given symbol ("∇" for text, "\\nabla" for LaTeX).
    std::string render(const std::string& symbol, bool latex) const;

private:
    void trim();
    std::vector<Rational> c_;
};

/// The nilpotent n^2 x n^2 matrix N built from a_k = (-1)^k / k: block
/// upper-triangular Toeplitz with diagonal blocks A_0 (strictly lower
/// Toeplitz with entries a_k) and off-diagonal blocks A_k = -a_k * 1.
/// Equivalently N = log(J (x) (J^{-1})^t) with J the unipotent Jordan block.
RationalMatrix build_N(int n);

/// True iff N^{2n-1} = 0 exactly, and N^{2n-2} != 0 for n >= 2.
bool nilpotency_index_check(int n);

/// exp(nabla N) = sum_{r=0}^{2n-2} N^r nabla^r / r! as an n^2 x n^2 matrix
/// of polynomials in nabla.
std::vector<std::vector<NablaPoly>> exp_nabla_N(int n);

/// nabla_{k,l} = e^t_{n(n-k-1)+l+1} exp(nabla N) e_{n(n-1)+1}, 0 <= k,l <= n-1.
NablaPoly nabla_kl(int n, int k, int l);

/// Block (0,i) of N^r via the combinatorial formula
///   N_i^{(r)} = sum_k C(r,k) A_0^{r-k} sum_{s in S_i^k} prod A_{s_l - s_{l+1}},
/// S_i^k the strictly decreasing sequences i = s_0 > ... > s_k = 0.
RationalMatrix n_power_block(int n, int i, int r);

/// The full (k,l) table of nabla_{k,l} plus renderers.
struct SymbolicTable {
    int n;
    std::map<std::pair<int, int>, NablaPoly> entries;

    std::string render_text() const;
    std::string render_latex() const;
};

SymbolicTable symbolic_table(int n);

/// General rectangular variant used by the Sol-space construction for a
/// block pair of sizes (m, mp): log(J_m (x) (J_mp^{-1})^t), an (m*mp)^2 matrix.
/// For m == mp == n this coincides with build_N(n).
RationalMatrix build_N_pair(int m, int mp);

/// exp(nabla N) for an arbitrary nilpotent rational matrix N (truncates when
/// powers vanish).
std::vector<std::vector<NablaPoly>> exp_nabla_of(const RationalMatrix& nilpotent);

}  // namespace aybe
