// pybind11 bindings for the main operations: special-function evaluation,
// solution construction (closed form and Sol-space), identity residuals and
// the exact coefficient tables.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "aybe/kronecker.hpp"
#include "aybe/nabla.hpp"
#include "aybe/solspace.hpp"
#include "aybe/solution.hpp"
#include "aybe/tensor_io.hpp"
#include "aybe/verifier.hpp"

namespace py = pybind11;
using aybe::Cplx;

namespace {

aybe::TorusParam torus(Cplx tau, double trunc_eps) { return aybe::TorusParam(tau, trunc_eps); }

aybe::KroneckerKind kind_of(const std::string& kind, Cplx tau, double trunc_eps) {
    if (kind == "elliptic") return aybe::KroneckerKind::elliptic(torus(tau, trunc_eps));
    if (kind == "trigonometric" || kind == "trig") return aybe::KroneckerKind::trigonometric();
    if (kind == "rational") return aybe::KroneckerKind::rational();
    throw std::invalid_argument("unknown kind '" + kind + "'");
}

py::dict tensor_dict(const aybe::MatTensor& t) {
    py::dict d;
    const int n = t.n();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int e = 0; e < n; ++e) {
                    const Cplx v = t.coeff(a, b, c, e);
                    if (v != Cplx{}) d[py::make_tuple(a + 1, b + 1, c + 1, e + 1)] = v;
                }
    return d;
}

aybe::CMatrix matrix_from_lists(const std::vector<std::vector<Cplx>>& rows) {
    const int n = static_cast<int>(rows.size());
    aybe::CMatrix m(n, static_cast<int>(rows.at(0).size()));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m.cols(); ++j) m(i, j) = rows.at(static_cast<size_t>(i)).at(static_cast<size_t>(j));
    return m;
}

}  // namespace

PYBIND11_MODULE(pyaybe, m) {
    m.doc() = "elliptic solutions of the associative Yang-Baxter equation";

    m.def(
        "theta1", [](Cplx z, Cplx tau, double eps) { return aybe::theta1(z, torus(tau, eps)); }, py::arg("z"),
        py::arg("tau") = Cplx(0, 1), py::arg("trunc_eps") = 1e-16);
    m.def(
        "theta3", [](Cplx z, Cplx tau, double eps) { return aybe::theta3(z, torus(tau, eps)); }, py::arg("z"),
        py::arg("tau") = Cplx(0, 1), py::arg("trunc_eps") = 1e-16);
    m.def(
        "theta1_jet",
        [](Cplx z, int order, Cplx tau, double eps) {
            const aybe::Jet j = aybe::theta1(aybe::Jet::variable(z, order), torus(tau, eps));
            std::vector<Cplx> c;
            for (int k = 0; k <= order; ++k) c.push_back(j[k]);
            return c;
        },
        py::arg("z"), py::arg("order"), py::arg("tau") = Cplx(0, 1), py::arg("trunc_eps") = 1e-16);
    m.def(
        "theta1_prime0", [](Cplx tau, double eps) { return aybe::theta1_prime0(torus(tau, eps)); },
        py::arg("tau") = Cplx(0, 1), py::arg("trunc_eps") = 1e-16);

    m.def(
        "sigma",
        [](Cplx u, Cplx x, const std::string& kind, Cplx tau, double eps) {
            return aybe::sigma(kind_of(kind, tau, eps), u, x);
        },
        py::arg("u"), py::arg("x"), py::arg("kind") = "elliptic", py::arg("tau") = Cplx(0, 1),
        py::arg("trunc_eps") = 1e-16);
    m.def(
        "sigma_jet",
        [](Cplx u, Cplx x, int order, const std::string& kind, Cplx tau, double eps) {
            const aybe::Jet j = aybe::sigma_jet(kind_of(kind, tau, eps), u, x, order);
            std::vector<Cplx> c;
            for (int k = 0; k <= order; ++k) c.push_back(j[k]);
            return c;
        },
        py::arg("u"), py::arg("x"), py::arg("order"), py::arg("kind") = "elliptic", py::arg("tau") = Cplx(0, 1),
        py::arg("trunc_eps") = 1e-16);
    m.def(
        "fay_residual",
        [](Cplx u, Cplx v, Cplx x, Cplx y, const std::string& kind, Cplx tau, double eps) {
            return aybe::fay_residual(kind_of(kind, tau, eps), u, v, x, y);
        },
        py::arg("u"), py::arg("v"), py::arg("x"), py::arg("y"), py::arg("kind") = "elliptic",
        py::arg("tau") = Cplx(0, 1), py::arg("trunc_eps") = 1e-16);

    m.def(
        "nabla_table",
        [](int n, bool latex) {
            const aybe::SymbolicTable t = aybe::symbolic_table(n);
            return latex ? t.render_latex() : t.render_text();
        },
        py::arg("n"), py::arg("latex") = false);
    m.def(
        "nabla_kl",
        [](int n, int k, int l) { return aybe::nabla_kl(n, k, l).render("nabla", false); }, py::arg("n"), py::arg("k"),
        py::arg("l"));

    m.def(
        "r_diagonal",
        [](const std::vector<Cplx>& lambdas, Cplx v, Cplx y, Cplx tau, double eps) {
            return tensor_dict(aybe::r_diagonal(lambdas, v, y, torus(tau, eps)));
        },
        py::arg("lambdas"), py::arg("v"), py::arg("y"), py::arg("tau") = Cplx(0, 1), py::arg("trunc_eps") = 1e-16);
    m.def(
        "r_jordan",
        [](int n, Cplx v, Cplx y, Cplx tau, double eps) { return tensor_dict(aybe::r_jordan(n, v, y, torus(tau, eps))); },
        py::arg("n"), py::arg("v"), py::arg("y"), py::arg("tau") = Cplx(0, 1), py::arg("trunc_eps") = 1e-16);
    m.def(
        "r_general",
        [](const std::string& bspec_json, Cplx v, Cplx y, Cplx tau, double eps) {
            return tensor_dict(aybe::r_general(aybe::BSpec::from_json(bspec_json), v, y, torus(tau, eps)));
        },
        py::arg("bspec_json"), py::arg("v"), py::arg("y"), py::arg("tau") = Cplx(0, 1), py::arg("trunc_eps") = 1e-16);
    m.def(
        "r_solspace",
        [](const std::string& bspec_json, Cplx v, Cplx y, Cplx tau, double eps) {
            return tensor_dict(aybe::r_from_solspace(aybe::BSpec::from_json(bspec_json), v, y, torus(tau, eps)));
        },
        py::arg("bspec_json"), py::arg("v"), py::arg("y"), py::arg("tau") = Cplx(0, 1), py::arg("trunc_eps") = 1e-16);

    m.def(
        "aybe_residual",
        [](const std::string& bspec_json, Cplx u, Cplx v, Cplx x, Cplx y, Cplx tau, double eps) {
            const aybe::BSpec spec = aybe::BSpec::from_json(bspec_json);
            const aybe::TorusParam tp = torus(tau, eps);
            return aybe::aybe_residual([&](Cplx a, Cplx b) { return aybe::r_general(spec, a, b, tp); }, u, v, x, y);
        },
        py::arg("bspec_json"), py::arg("u"), py::arg("v"), py::arg("x"), py::arg("y"), py::arg("tau") = Cplx(0, 1),
        py::arg("trunc_eps") = 1e-16);
    m.def(
        "dual_residual",
        [](const std::string& bspec_json, Cplx u, Cplx v, Cplx x, Cplx y, Cplx tau, double eps) {
            const aybe::BSpec spec = aybe::BSpec::from_json(bspec_json);
            const aybe::TorusParam tp = torus(tau, eps);
            return aybe::dual_residual([&](Cplx a, Cplx b) { return aybe::r_general(spec, a, b, tp); }, u, v, x, y);
        },
        py::arg("bspec_json"), py::arg("u"), py::arg("v"), py::arg("x"), py::arg("y"), py::arg("tau") = Cplx(0, 1),
        py::arg("trunc_eps") = 1e-16);
    m.def(
        "unitarity_residual",
        [](const std::string& bspec_json, Cplx u, Cplx x, Cplx tau, double eps) {
            const aybe::BSpec spec = aybe::BSpec::from_json(bspec_json);
            const aybe::TorusParam tp = torus(tau, eps);
            return aybe::unitarity_residual([&](Cplx a, Cplx b) { return aybe::r_general(spec, a, b, tp); }, u, x);
        },
        py::arg("bspec_json"), py::arg("u"), py::arg("x"), py::arg("tau") = Cplx(0, 1), py::arg("trunc_eps") = 1e-16);
    m.def(
        "gauge_residual",
        [](const std::string& bspec_json, const std::vector<std::vector<Cplx>>& s, Cplx v, Cplx y, Cplx tau,
           double eps) {
            return aybe::gauge_residual(aybe::BSpec::from_json(bspec_json), matrix_from_lists(s), v, y,
                                        torus(tau, eps));
        },
        py::arg("bspec_json"), py::arg("S"), py::arg("v"), py::arg("y"), py::arg("tau") = Cplx(0, 1),
        py::arg("trunc_eps") = 1e-16);

    m.def(
        "run_suite",
        [](const std::vector<int>& sizes, int count, std::uint64_t seed) {
            aybe::SamplePlan plan;
            plan.count = count;
            plan.seed = seed;
            const aybe::Report report = aybe::run_suite(plan, aybe::default_configs(sizes));
            py::dict summary;
            for (const auto& row : report.rows) {
                const py::tuple key = py::make_tuple(row.config, row.identity);
                if (!summary.contains(key) || summary[key].cast<double>() < row.residual) summary[key] = row.residual;
            }
            py::dict out;
            out["max_residuals"] = summary;
            out["all_passed"] = report.all_passed();
            out["rejected_samples"] = report.rejected_samples;
            return out;
        },
        py::arg("sizes"), py::arg("count") = 20, py::arg("seed") = 1);

    m.def("tensor_json", [](const std::string& bspec_json, Cplx v, Cplx y, Cplx tau) {
        return aybe::tensor_to_json(aybe::r_general(aybe::BSpec::from_json(bspec_json), v, y, torus(tau, 1e-16)));
    });

    m.def(
        "bspec_from_matrix",
        [](const std::vector<std::vector<Cplx>>& rows) { return aybe::BSpec::from_matrix(matrix_from_lists(rows)).to_json(); },
        py::arg("matrix"), "Decompose a raw matrix into a BSpec (eigenvalue gaps must exceed 1e-6)");
}
