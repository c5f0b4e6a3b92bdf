#pragma once

#include <string>

#include "aybe/tensor.hpp"

namespace aybe {

/// Serialize as {"n": n, "records": [{a,b,c,d,re,im}, ...]} with 1-based
/// indices sorted lexicographically; every coefficient appears, zeros
/// included, so output is a stable golden-file format.
std::string tensor_to_json(const MatTensor& t);

MatTensor tensor_from_json(const std::string& text);

}  // namespace aybe
