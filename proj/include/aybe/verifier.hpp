#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "aybe/bspec.hpp"
#include "aybe/solution.hpp"
#include "aybe/tensor.hpp"
#include "aybe/theta.hpp"

namespace aybe {

using RFun = std::function<MatTensor(Cplx, Cplx)>;
using RFun4 = std::function<MatTensor(Cplx, Cplx, Cplx, Cplx)>;

/// Residual of the AYBE
///   r12(u,x) r23(u+v,y) - r13(u+v,x+y) r12(-v,x) - r23(v,y) r13(u,x+y)
/// in the operator norm of the triple tensor product.
double aybe_residual(const RFun& r, Cplx u, Cplx v, Cplx x, Cplx y);

/// Residual of the dual equation
///   r23(v,y) r12(u+v,x) - r12(u,x) r13(v,x+y) - r13(u+v,x+y) r23(-u,y).
double dual_residual(const RFun& r, Cplx u, Cplx v, Cplx x, Cplx y);

/// Max-norm of r(-u,-x) + flip(r(u,x)).
double unitarity_residual(const RFun& r, Cplx u, Cplx x);

/// Residual of the four-variable AYBE
///   r(v1,v2;y1,y2)^12 r(v1,v3;y2,y3)^23
///     - r(v1,v3;y1,y3)^13 r(v3,v2;y1,y2)^12 - r(v2,v3;y2,y3)^23 r(v1,v2;y1,y3)^13.
double aybe4_residual(const RFun4& r4, Cplx v1, Cplx v2, Cplx v3, Cplx y1, Cplx y2, Cplx y3);

/// Max-norm difference between the Sol-space solution of S^{-1} A S and the
/// conjugated tensor (S^{-1} (x) S^{-1}) r_A(v,y) (S (x) S).
double gauge_residual(const BSpec& spec, const CMatrix& s, Cplx v, Cplx y, const TorusParam& tp);

/// Deterministic sampling plan; points are drawn uniformly from the
/// rectangle [lo,hi] + [lo,hi] tau and rejected within exclusion_radius of
/// the relevant singular sets.
struct SamplePlan {
    int count = 50;
    std::uint64_t seed = 1;
    double exclusion_radius = 1e-3;
    double box_lo = 0.05;
    double box_hi = 0.95;
};

/// Deterministic uniform sampler over the plan's box.
class Sampler {
public:
    Sampler(const SamplePlan& plan, Cplx tau);

    /// Next point with all of offsets+point at distance >= exclusion_radius
    /// from the given singular set (resampling as needed).
    Cplx admissible(const SigmaLattice& avoid, const std::vector<Cplx>& offsets = {});
    Cplx raw();

private:
    SamplePlan plan_;
    Cplx tau_;
    std::uint64_t state_;
    double next_unit();
};

struct SuiteConfig {
    std::string name;   // e.g. "diagonal-n2"
    BSpec spec;
    Cplx tau{0.0, 1.0};
    double tolerance = 1e-8;
};

/// A default configuration set: diagonal and Jordan families for the given
/// sizes at tau = i, with the tolerance ladder 1e-10 (n=1), 1e-9 (n=2,3),
/// 1e-8 (n >= 4).
std::vector<SuiteConfig> default_configs(const std::vector<int>& sizes);

struct ReportRow {
    std::string identity;
    std::string config;
    std::vector<Cplx> inputs;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct Report {
    std::vector<ReportRow> rows;
    int rejected_samples = 0;

    bool all_passed() const;
    double max_residual(const std::string& identity, const std::string& config) const;
    double mean_residual(const std::string& identity, const std::string& config) const;
    std::string to_json() const;  // aggregates (max/mean per identity x config) + per-sample rows
    std::string to_csv() const;   // per-sample rows
};

/// Run AYBE, dual, unitarity and non-degeneracy checks over seeded samples
/// for every configuration. Failures are recorded in the report, never thrown.
Report run_suite(const SamplePlan& plan, const std::vector<SuiteConfig>& configs);

}  // namespace aybe
