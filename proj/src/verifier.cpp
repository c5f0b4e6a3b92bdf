#include "aybe/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "aybe/solspace.hpp"

namespace aybe {

double aybe_residual(const RFun& r, Cplx u, Cplx v, Cplx x, Cplx y) {
    const TripleTensor lhs = triple_mul(embed(r(u, x), Slot::s12), embed(r(u + v, y), Slot::s23));
    const TripleTensor rhs1 = triple_mul(embed(r(u + v, x + y), Slot::s13), embed(r(-v, x), Slot::s12));
    const TripleTensor rhs2 = triple_mul(embed(r(v, y), Slot::s23), embed(r(u, x + y), Slot::s13));
    return triple_norm(triple_sub(triple_sub(lhs, rhs1), rhs2));
}

double dual_residual(const RFun& r, Cplx u, Cplx v, Cplx x, Cplx y) {
    const TripleTensor lhs = triple_mul(embed(r(v, y), Slot::s23), embed(r(u + v, x), Slot::s12));
    const TripleTensor rhs1 = triple_mul(embed(r(u, x), Slot::s12), embed(r(v, x + y), Slot::s13));
    const TripleTensor rhs2 = triple_mul(embed(r(u + v, x + y), Slot::s13), embed(r(-u, y), Slot::s23));
    return triple_norm(triple_sub(triple_sub(lhs, rhs1), rhs2));
}

double unitarity_residual(const RFun& r, Cplx u, Cplx x) { return (r(-u, -x) + flip(r(u, x))).max_abs(); }

double aybe4_residual(const RFun4& r4, Cplx v1, Cplx v2, Cplx v3, Cplx y1, Cplx y2, Cplx y3) {
    const TripleTensor lhs = triple_mul(embed(r4(v1, v2, y1, y2), Slot::s12), embed(r4(v1, v3, y2, y3), Slot::s23));
    const TripleTensor rhs1 = triple_mul(embed(r4(v1, v3, y1, y3), Slot::s13), embed(r4(v3, v2, y1, y2), Slot::s12));
    const TripleTensor rhs2 = triple_mul(embed(r4(v2, v3, y2, y3), Slot::s23), embed(r4(v1, v2, y1, y3), Slot::s13));
    return triple_norm(triple_sub(triple_sub(lhs, rhs1), rhs2));
}

double gauge_residual(const BSpec& spec, const CMatrix& s, Cplx v, Cplx y, const TorusParam& tp) {
    const MatTensor direct = r_from_solspace(spec.conjugated(s), v, y, tp);
    const CMatrix s_inv = LuFactor(s).inverse();
    const MatTensor conjugated_base = conjugate(r_from_solspace(spec, v, y, tp), s, s_inv);
    return (direct - conjugated_base).max_abs();
}

Sampler::Sampler(const SamplePlan& plan, Cplx tau) : plan_(plan), tau_(tau), state_(plan.seed) {}

// splitmix64; fixed algorithm so reports are byte-identical across platforms.
double Sampler::next_unit() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    z = z ^ (z >> 31);
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

Cplx Sampler::raw() {
    const double a = plan_.box_lo + (plan_.box_hi - plan_.box_lo) * next_unit();
    const double b = plan_.box_lo + (plan_.box_hi - plan_.box_lo) * next_unit();
    return a + b * tau_;
}

Cplx Sampler::admissible(const SigmaLattice& avoid, const std::vector<Cplx>& offsets) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const Cplx p = raw();
        bool ok = avoid.distance(p) >= plan_.exclusion_radius;
        for (Cplx o : offsets)
            if (ok && avoid.distance(p + o) < plan_.exclusion_radius) ok = false;
        if (ok) return p;
    }
    throw singular_error("Sampler: could not find an admissible point (exclusion radius too large?)");
}

std::vector<SuiteConfig> default_configs(const std::vector<int>& sizes) {
    const auto tolerance_for = [](int n) { return n <= 1 ? 1e-10 : (n <= 3 ? 1e-9 : 1e-8); };
    std::vector<SuiteConfig> configs;
    for (int n : sizes) {
        std::vector<Cplx> lambdas;
        for (int k = 0; k < n; ++k) lambdas.push_back(Cplx(0.3 * k, 0.0));
        configs.push_back({"diagonal-n" + std::to_string(n), BSpec::diagonal(lambdas), Cplx(0.0, 1.0), tolerance_for(n)});
        configs.push_back({"jordan-n" + std::to_string(n), BSpec::single_jordan(n), Cplx(0.0, 1.0), tolerance_for(n)});
    }
    return configs;
}

bool Report::all_passed() const {
    return std::all_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.pass; });
}

double Report::max_residual(const std::string& identity, const std::string& config) const {
    double m = 0.0;
    for (const auto& r : rows)
        if (r.identity == identity && (config.empty() || r.config == config)) m = std::max(m, r.residual);
    return m;
}

double Report::mean_residual(const std::string& identity, const std::string& config) const {
    double s = 0.0;
    int count = 0;
    for (const auto& r : rows)
        if (r.identity == identity && (config.empty() || r.config == config)) {
            s += r.residual;
            ++count;
        }
    return count == 0 ? 0.0 : s / count;
}

namespace {

std::string cplx_str(Cplx z) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
    return buf;
}

}  // namespace

std::string Report::to_json() const {
    nlohmann::ordered_json j;
    j["rejected_samples"] = rejected_samples;
    j["all_passed"] = all_passed();
    // aggregates per (config, identity), in first-appearance order
    auto aggregates = nlohmann::ordered_json::array();
    std::vector<std::pair<std::string, std::string>> seen;
    for (const auto& r : rows) {
        const auto key = std::make_pair(r.config, r.identity);
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
        seen.push_back(key);
        aggregates.push_back(nlohmann::ordered_json{{"config", r.config},
                                                    {"identity", r.identity},
                                                    {"max_residual", max_residual(r.identity, r.config)},
                                                    {"mean_residual", mean_residual(r.identity, r.config)}});
    }
    j["aggregates"] = aggregates;
    auto rws = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json row;
        row["identity"] = r.identity;
        row["config"] = r.config;
        auto in = nlohmann::ordered_json::array();
        for (Cplx z : r.inputs) in.push_back({{"re", z.real()}, {"im", z.imag()}});
        row["inputs"] = in;
        row["residual"] = r.residual;
        row["tolerance"] = r.tolerance;
        row["pass"] = r.pass;
        rws.push_back(row);
    }
    j["rows"] = rws;
    return j.dump(2);
}

std::string Report::to_csv() const {
    std::ostringstream os;
    os << "identity,config,inputs,residual,tolerance,pass\n";
    char buf[64];
    for (const auto& r : rows) {
        os << r.identity << "," << r.config << ",\"";
        for (size_t i = 0; i < r.inputs.size(); ++i) {
            if (i) os << ";";
            os << cplx_str(r.inputs[i]);
        }
        std::snprintf(buf, sizeof buf, "%.17g", r.residual);
        os << "\"," << buf;
        std::snprintf(buf, sizeof buf, "%.17g", r.tolerance);
        os << "," << buf << "," << (r.pass ? "1" : "0") << "\n";
    }
    return os.str();
}

Report run_suite(const SamplePlan& plan, const std::vector<SuiteConfig>& configs) {
    Report report;
    for (const auto& cfg : configs) {
        const TorusParam tp(cfg.tau);
        const SigmaLattice sigma = SigmaLattice::of(cfg.spec, cfg.tau);
        const SigmaLattice lambda = SigmaLattice::of_lambdas({Cplx{}}, cfg.tau);
        const RFun r = [&](Cplx u, Cplx x) { return r_general(cfg.spec, u, x, tp); };
        // tuple components come from the half box so every evaluated argument
        // (including u+v and x+y) stays inside the sampling rectangle
        SamplePlan tuple_plan = plan;
        tuple_plan.box_hi = 0.5 * plan.box_hi;
        Sampler sampler(tuple_plan, cfg.tau);
        for (int s = 0; s < plan.count; ++s) {
            try {
                const Cplx u = sampler.admissible(sigma, {});
                const Cplx v = sampler.admissible(sigma, {u});
                const Cplx x = sampler.admissible(lambda, {});
                const Cplx y = sampler.admissible(lambda, {x});
                const auto row = [&](const std::string& identity, std::vector<Cplx> inputs, double residual) {
                    report.rows.push_back({identity, cfg.name, std::move(inputs), residual, cfg.tolerance,
                                           residual < cfg.tolerance});
                };
                row("aybe", {u, v, x, y}, aybe_residual(r, u, v, x, y));
                row("dual", {u, v, x, y}, dual_residual(r, u, v, x, y));
                row("unitarity", {u, x}, unitarity_residual(r, u, x));
                const double det_abs = std::abs(LuFactor(to_linear_map(r(u, x))).det());
                report.rows.push_back({"nondegeneracy", cfg.name, {u, x}, det_abs, 1e-8, det_abs > 1e-8});
                // gauge covariance with a seeded well-conditioned conjugator
                const int n = cfg.spec.n;
                CMatrix gs(n, n);
                do {
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < n; ++j)
                            gs(i, j) = sampler.raw() - (0.25 + 0.25 * cfg.tau) + (i == j ? Cplx(1.0) : Cplx(0.0));
                } while (LuFactor(gs).cond_inf() >= 100.0);
                const double gres = gauge_residual(cfg.spec, gs, u, x, tp);
                report.rows.push_back({"gauge", cfg.name, {u, x}, gres, 1e-8, gres < 1e-8});
            } catch (const singular_error&) {
                ++report.rejected_samples;
            }
        }
    }
    return report;
}

}  // namespace aybe
