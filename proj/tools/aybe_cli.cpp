// Command-line front end: evaluate the special functions, build solution
// tensors from BSpec files, run the verification suite, and print the exact
// nabla coefficient tables.
//
// Exit codes: 0 success / all residuals pass, 1 residual failure, 2 usage or
// input error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "aybe/kronecker.hpp"
#include "aybe/nabla.hpp"
#include "aybe/solspace.hpp"
#include "aybe/solution.hpp"
#include "aybe/tensor_io.hpp"
#include "aybe/verifier.hpp"

namespace {

using aybe::Cplx;

// Accepts "1.5", "i", "-i", "2i", "1+2i", "0.3-1.7i", "1+i".
Cplx parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty complex literal");
    if (s.back() != 'i' && s.back() != 'I') {
        size_t pos = 0;
        const double re = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters in '" + text + "'");
        return {re, 0.0};
    }
    s.pop_back();  // drop the i
    // split at the last +/- that is not part of an exponent and not leading
    size_t split = std::string::npos;
    for (size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    const auto im_part = [&](std::string t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        size_t pos = 0;
        const double v = std::stod(t, &pos);
        if (pos != t.size()) throw std::invalid_argument("bad imaginary part in '" + text + "'");
        return v;
    };
    if (split == std::string::npos) return {0.0, im_part(s)};
    size_t pos = 0;
    const double re = std::stod(s.substr(0, split), &pos);
    if (pos != split) throw std::invalid_argument("bad real part in '" + text + "'");
    return {re, im_part(s.substr(split))};
}

std::string format_complex(Cplx z) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "%.17g %+.17gi", z.real(), z.imag());
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write '" + out_path + "'");
    out << content;
}

struct GlobalOpts {
    std::string tau = "i";
    double trunc_eps = 1e-16;
    std::uint64_t seed = 1;
    std::string format = "text";
    std::string out;

    aybe::TorusParam torus() const { return aybe::TorusParam(parse_complex(tau), trunc_eps); }
};

int run_eval(const GlobalOpts& g, const std::string& function, const std::string& z_s, const std::string& u_s,
             const std::string& x_s, const std::string& kind_s, int order) {
    nlohmann::ordered_json j;
    std::ostringstream text;
    if (function == "theta1" || function == "theta3") {
        const Cplx z = parse_complex(z_s);
        const aybe::TorusParam tp = g.torus();
        const aybe::Jet jet = function == "theta1" ? aybe::theta1(aybe::Jet::variable(z, order), tp)
                                                   : aybe::theta3(aybe::Jet::variable(z, order), tp);
        j["function"] = function;
        j["value"] = {{"re", jet.value().real()}, {"im", jet.value().imag()}};
        text << function << "(" << format_complex(z) << ") = " << format_complex(jet.value()) << "\n";
        if (order > 0) {
            auto coeffs = nlohmann::ordered_json::array();
            for (int k = 0; k <= order; ++k) coeffs.push_back({{"re", jet[k].real()}, {"im", jet[k].imag()}});
            j["jet"] = coeffs;
            for (int k = 0; k <= order; ++k) text << "  c_" << k << " = " << format_complex(jet[k]) << "\n";
        }
    } else if (function == "sigma") {
        aybe::KroneckerKind kind = aybe::KroneckerKind::rational();
        if (kind_s == "elliptic")
            kind = aybe::KroneckerKind::elliptic(g.torus());
        else if (kind_s == "trigonometric" || kind_s == "trig")
            kind = aybe::KroneckerKind::trigonometric();
        else if (kind_s != "rational")
            throw std::invalid_argument("unknown kind '" + kind_s + "'");
        const Cplx u = parse_complex(u_s), x = parse_complex(x_s);
        const aybe::Jet jet = aybe::sigma_jet(kind, u, x, order);
        j["function"] = "sigma";
        j["kind"] = kind_s;
        j["value"] = {{"re", jet.value().real()}, {"im", jet.value().imag()}};
        text << "sigma(" << format_complex(u) << ", " << format_complex(x) << ") = " << format_complex(jet.value())
             << "\n";
        if (order > 0) {
            auto coeffs = nlohmann::ordered_json::array();
            for (int k = 0; k <= order; ++k) coeffs.push_back({{"re", jet[k].real()}, {"im", jet[k].imag()}});
            j["jet"] = coeffs;
            for (int k = 0; k <= order; ++k) text << "  c_" << k << " = " << format_complex(jet[k]) << "\n";
        }
    } else {
        throw std::invalid_argument("unknown function '" + function + "'");
    }
    write_output(g.out, g.format == "json" ? j.dump(2) : text.str());
    return 0;
}

aybe::CMatrix matrix_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    if (j.is_object() && j.contains("matrix")) j = j.at("matrix");
    const int n = static_cast<int>(j.size());
    aybe::CMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        const auto& row = j.at(static_cast<size_t>(i));
        if (static_cast<int>(row.size()) != n) throw std::invalid_argument("matrix must be square");
        for (int k = 0; k < n; ++k)
            m(i, k) = Cplx(row.at(static_cast<size_t>(k)).at("re").get<double>(),
                           row.at(static_cast<size_t>(k)).at("im").get<double>());
    }
    return m;
}

int run_build(const GlobalOpts& g, const std::string& bspec_path, const std::string& matrix_path,
              const std::string& v_s, const std::string& y_s, bool oracle) {
    if (bspec_path.empty() == matrix_path.empty())
        throw std::invalid_argument("exactly one of --bspec / --matrix is required");
    const aybe::BSpec spec = bspec_path.empty() ? aybe::BSpec::from_matrix(matrix_from_json(read_file(matrix_path)))
                                                : aybe::BSpec::from_json(read_file(bspec_path));
    const aybe::TorusParam tp = g.torus();
    const Cplx v = parse_complex(v_s), y = parse_complex(y_s);
    const aybe::MatTensor r = aybe::r_general(spec, v, y, tp);
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(aybe::tensor_to_json(r));
    if (oracle) {
        const aybe::MatTensor s = aybe::r_from_solspace(spec, v, y, tp);
        j["oracle"] = nlohmann::ordered_json::parse(aybe::tensor_to_json(s));
        j["oracle_max_diff"] = (r - s).max_abs();
    }
    write_output(g.out, j.dump(2));
    return 0;
}

std::vector<aybe::SuiteConfig> configs_from_json(const std::string& text) {
    std::vector<aybe::SuiteConfig> configs;
    const auto j = nlohmann::json::parse(text);
    for (const auto& c : j) {
        aybe::SuiteConfig cfg;
        const std::string type = c.at("type").get<std::string>();
        const int n = c.at("n").get<int>();
        if (type == "diagonal") {
            std::vector<Cplx> lambdas;
            if (c.contains("lambdas"))
                for (const auto& l : c.at("lambdas")) lambdas.emplace_back(l.at("re").get<double>(), l.at("im").get<double>());
            else
                for (int k = 0; k < n; ++k) lambdas.emplace_back(0.3 * k, 0.0);
            cfg.spec = aybe::BSpec::diagonal(lambdas);
        } else if (type == "jordan") {
            cfg.spec = aybe::BSpec::single_jordan(n);
        } else if (type == "bspec") {
            cfg.spec = aybe::BSpec::from_json(c.at("spec").dump());
        } else {
            throw std::invalid_argument("unknown config type '" + type + "'");
        }
        cfg.name = c.contains("name") ? c.at("name").get<std::string>() : type + "-n" + std::to_string(n);
        if (c.contains("tau")) cfg.tau = Cplx(c.at("tau").at("re").get<double>(), c.at("tau").at("im").get<double>());
        cfg.tolerance = c.contains("tolerance") ? c.at("tolerance").get<double>() : (n <= 1 ? 1e-10 : n <= 3 ? 1e-9 : 1e-8);
        configs.push_back(std::move(cfg));
    }
    return configs;
}

int run_verify(const GlobalOpts& g, const std::string& configs_path, int count, double exclusion_radius,
               double tolerance_override, bool corrupt) {
    aybe::SamplePlan plan;
    plan.count = count;
    plan.seed = g.seed;
    plan.exclusion_radius = exclusion_radius;
    std::vector<aybe::SuiteConfig> configs =
        configs_path.empty() ? aybe::default_configs({1, 2, 3}) : configs_from_json(read_file(configs_path));
    if (tolerance_override > 0.0)
        for (auto& cfg : configs) cfg.tolerance = tolerance_override;

    aybe::Report report;
    if (!corrupt) {
        report = aybe::run_suite(plan, configs);
    } else {
        // Sensitivity self-check: perturb one tensor coefficient by 1e-3 and
        // confirm the residuals notice.
        for (auto& cfg : configs) {
            const aybe::TorusParam tp(cfg.tau);
            const aybe::RFun r = [&](Cplx u, Cplx x) {
                aybe::MatTensor t = aybe::r_general(cfg.spec, u, x, tp);
                t.coeff(0, 0, 0, 0) += 1e-3;
                return t;
            };
            aybe::Sampler sampler(plan, cfg.tau);
            const aybe::SigmaLattice sigma = aybe::SigmaLattice::of(cfg.spec, cfg.tau);
            const aybe::SigmaLattice lambda = aybe::SigmaLattice::of_lambdas({Cplx{}}, cfg.tau);
            for (int s = 0; s < plan.count; ++s) {
                const Cplx u = sampler.admissible(sigma, {});
                const Cplx v = sampler.admissible(sigma, {u});
                const Cplx x = sampler.admissible(lambda, {});
                const Cplx y = sampler.admissible(lambda, {x});
                const double res = aybe::aybe_residual(r, u, v, x, y);
                report.rows.push_back({"aybe", cfg.name, {u, v, x, y}, res, cfg.tolerance, res < cfg.tolerance});
            }
        }
    }

    write_output(g.out, g.format == "csv" ? report.to_csv() : report.to_json());
    if (!report.all_passed()) {
        for (const auto& row : report.rows)
            if (!row.pass) {
                std::cerr << "FAIL: " << row.identity << " on " << row.config << " residual " << row.residual
                          << " tolerance " << row.tolerance << "\n";
                break;
            }
        return 1;
    }
    return 0;
}

int run_table(const GlobalOpts& g, int n) {
    const aybe::SymbolicTable t = aybe::symbolic_table(n);
    if (g.format == "latex") {
        write_output(g.out, t.render_latex());
    } else if (g.format == "json") {
        nlohmann::ordered_json j;
        j["n"] = n;
        auto entries = nlohmann::ordered_json::array();
        for (const auto& [kl, poly] : t.entries)
            entries.push_back(nlohmann::ordered_json{
                {"k", kl.first}, {"l", kl.second}, {"poly", poly.render("nabla", false)}});
        j["entries"] = entries;
        write_output(g.out, j.dump(2));
    } else {
        write_output(g.out, t.render_text());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"elliptic solutions of the associative Yang-Baxter equation"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--tau", g.tau, "modular parameter, e.g. 'i' or '0.3+1.7i'")->capture_default_str();
    app.add_option("--trunc-eps", g.trunc_eps, "theta series tail bound")->capture_default_str();
    app.add_option("--seed", g.seed, "sampling seed")->capture_default_str();
    app.add_option("--format", g.format, "text | json | csv | latex")->capture_default_str();
    app.add_option("--out", g.out, "output file (stdout when omitted)");

    auto* eval = app.add_subcommand("eval", "evaluate theta1, theta3 or sigma");
    eval->fallthrough();
    std::string function, z_s, u_s = "0", x_s = "0", kind_s = "elliptic";
    int order = 0;
    eval->add_option("function", function, "theta1 | theta3 | sigma")->required();
    eval->add_option("--z", z_s, "argument for theta functions");
    eval->add_option("--u", u_s, "first sigma argument");
    eval->add_option("--x", x_s, "second sigma argument");
    eval->add_option("--kind", kind_s, "elliptic | trigonometric | rational")->capture_default_str();
    eval->add_option("--order", order, "jet order to print")->capture_default_str();

    auto* build = app.add_subcommand("build", "build the solution tensor for a BSpec file");
    build->fallthrough();
    std::string bspec_path, matrix_path, v_s, y_s;
    bool oracle = false;
    build->add_option("--bspec", bspec_path, "BSpec JSON file");
    build->add_option("--matrix", matrix_path,
                      "raw matrix JSON (diagonalized automatically; eigenvalue gaps must exceed 1e-6)");
    build->add_option("--v", v_s, "first spectral parameter")->required();
    build->add_option("--y", y_s, "second spectral parameter")->required();
    build->add_flag("--oracle", oracle, "also emit the Sol-space tensor and the entrywise max difference");

    auto* verify = app.add_subcommand("verify", "run the identity verification suite");
    verify->fallthrough();
    std::string configs_path;
    int count = 50;
    double exclusion_radius = 1e-3;
    bool corrupt = false;
    verify->add_option("--configs", configs_path, "JSON list of configurations (defaults to n=1..3 diagonal+jordan)");
    verify->add_option("--count", count, "samples per configuration")->capture_default_str();
    verify->add_option("--exclusion-radius", exclusion_radius, "singular-set exclusion radius")->capture_default_str();
    double tolerance_override = 0.0;
    verify->add_option("--tolerance", tolerance_override,
                       "override the per-configuration tolerance ladder (0 keeps the defaults)");
    verify->add_flag("--corrupt", corrupt, "sensitivity self-check: perturb a coefficient and expect failure");

    auto* table = app.add_subcommand("table", "print the exact nabla_{k,l} coefficient table");
    table->fallthrough();
    int table_n = 2;
    table->add_option("--n", table_n, "matrix size")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (eval->parsed()) return run_eval(g, function, z_s, u_s, x_s, kind_s, order);
        if (build->parsed()) return run_build(g, bspec_path, matrix_path, v_s, y_s, oracle);
        if (verify->parsed()) return run_verify(g, configs_path, count, exclusion_radius, tolerance_override, corrupt);
        if (table->parsed()) return run_table(g, table_n);
    } catch (const aybe::singular_error& e) {
        std::cerr << "singular input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
