#include "aybe/tensor_io.hpp"

#include <json.hpp>

namespace aybe {

std::string tensor_to_json(const MatTensor& t) {
    nlohmann::ordered_json j;
    j["n"] = t.n();
    auto records = nlohmann::ordered_json::array();
    const int n = t.n();
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b)
            for (int c = 1; c <= n; ++c)
                for (int d = 1; d <= n; ++d) {
                    const Cplx v = t.coeff(a - 1, b - 1, c - 1, d - 1);
                    records.push_back(nlohmann::ordered_json{
                        {"a", a}, {"b", b}, {"c", c}, {"d", d}, {"re", v.real()}, {"im", v.imag()}});
                }
    j["records"] = records;
    return j.dump(2);
}

MatTensor tensor_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    const int n = j.at("n").get<int>();
    MatTensor t(n);
    for (const auto& r : j.at("records")) {
        const int a = r.at("a").get<int>(), b = r.at("b").get<int>(), c = r.at("c").get<int>(), d = r.at("d").get<int>();
        t.coeff(a - 1, b - 1, c - 1, d - 1) = Cplx(r.at("re").get<double>(), r.at("im").get<double>());
    }
    return t;
}

}  // namespace aybe
