#pragma once

#include "reparam/model.hpp"

#include <map>
#include <string>
#include <string_view>

namespace reparam {

// Line-oriented model text:
//   states: x1, x2        params: a, b        inputs: u        outputs: y
//   x1' = a*x1 - b*x1*x2
//   y = x1
// `#` starts a comment. An optional `defs: h = c^3, k = a + b` line attaches
// meanings to parameters in terms of other symbols (used by `verify`).
struct ModelFile {
    OdeModel model;
    std::map<Var, RatFunc> defs;
};

ModelFile parse_model_file(std::string_view text);
OdeModel parse_model(std::string_view text);
ModelFile load_model_file(const std::string& path);

}  // namespace reparam
