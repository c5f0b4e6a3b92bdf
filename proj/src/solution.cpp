#include "aybe/solution.hpp"

#include <cstdio>

#include "aybe/kronecker.hpp"
#include "aybe/nabla.hpp"
#include "aybe/solspace.hpp"

namespace aybe {

namespace {

std::string cplx_text(Cplx z) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g%+gi", z.real(), z.imag());
    return buf;
}

void require_admissible(const SigmaLattice& sigma, Cplx v, Cplx y, Cplx tau) {
    if (sigma.distance(v) < kSingularRadius)
        throw singular_error("solution: v = " + cplx_text(v) + " is within " + std::to_string(kSingularRadius) +
                             " of the Sigma_B point " + cplx_text(sigma.nearest(v)));
    if (dist_to_lattice(y, tau) < kSingularRadius)
        throw singular_error("solution: y = " + cplx_text(y) + " is within " + std::to_string(kSingularRadius) +
                             " of the lattice point " + cplx_text(nearest_lattice_point(y, tau)));
}

// diag(1, mu, mu^2, ...) per block; the gauge between J_m(mu) and mu J_m(1).
CMatrix block_scaling(const BSpec& spec) {
    CMatrix d(spec.n, spec.n);
    int off = 0;
    for (const auto& b : spec.blocks) {
        const Cplx mu = std::exp(kTwoPiI * b.lambda);
        Cplx p = 1.0;
        for (int i = 0; i < b.size; ++i) {
            d(off + i, off + i) = p;
            p *= mu;
        }
        off += b.size;
    }
    return d;
}

CMatrix block_scaling_inverse(const BSpec& spec) {
    CMatrix d(spec.n, spec.n);
    int off = 0;
    for (const auto& b : spec.blocks) {
        const Cplx mu = std::exp(kTwoPiI * b.lambda);
        Cplx p = 1.0;
        for (int i = 0; i < b.size; ++i) {
            d(off + i, off + i) = 1.0 / p;
            p *= mu;
        }
        off += b.size;
    }
    return d;
}

bool is_identity(const CMatrix& m) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (m(i, j) != Cplx(i == j ? 1.0 : 0.0)) return false;
    return true;
}

}  // namespace

MatTensor r_diagonal(const std::vector<Cplx>& lambdas, Cplx v, Cplx y, const TorusParam& tp) {
    const int n = static_cast<int>(lambdas.size());
    require_admissible(SigmaLattice::of_lambdas(lambdas, tp.tau), v, y, tp.tau);
    const KroneckerKind kind = KroneckerKind::elliptic(tp);
    MatTensor r(n);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            const Cplx val = sigma(kind, v - (lambdas[static_cast<size_t>(k)] - lambdas[static_cast<size_t>(l)]), y);
            r.coeff(l, k, k, l) += val;
        }
    return r;
}

MatTensor r_jordan(int n, Cplx v, Cplx y, const TorusParam& tp) {
    require_admissible(SigmaLattice::of_lambdas({Cplx{}}, tp.tau), v, y, tp.tau);
    const Jet sj = sigma_jet(KroneckerKind::elliptic(tp), v, y, 2 * n - 2);
    const SymbolicTable table = symbolic_table(n);
    MatTensor r(n);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            const NablaPoly& poly = table.entries.at({k, l});
            if (poly.is_zero()) continue;
            const Cplx val = poly.apply(sj);
            // 1 <= i <= n-l, 1 <= j <= n-k, tensor e_{i,j+k} (x) e_{j,i+l}
            for (int i = 1; i <= n - l; ++i)
                for (int j = 1; j <= n - k; ++j) r.coeff(i - 1, j + k - 1, j - 1, i + l - 1) += val;
        }
    return r;
}

MatTensor r_general(const BSpec& spec, Cplx v, Cplx y, const TorusParam& tp) {
    spec.validate();
    require_admissible(SigmaLattice::of(spec, tp.tau), v, y, tp.tau);

    MatTensor rj(spec.n);
    if (spec.is_diagonal()) {
        rj = r_diagonal(spec.block_lambdas(), v, y, tp);
    } else if (spec.is_single_block()) {
        rj = r_jordan(spec.n, v, y, tp);
        const CMatrix d = block_scaling(spec);
        if (!is_identity(d)) rj = conjugate(rj, block_scaling_inverse(spec), d);  // (D (x) D) r (D^{-1} (x) D^{-1})
    } else {
        BSpec jordan_form = spec;
        jordan_form.S = CMatrix::identity(spec.n);
        rj = r_from_solspace(jordan_form, v, y, tp);
    }

    if (is_identity(spec.S)) return rj;
    const CMatrix s_inv = LuFactor(spec.S).inverse();
    return conjugate(rj, spec.S, s_inv);
}

}  // namespace aybe
