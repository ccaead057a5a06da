#include "mir/errors.hpp"
#include "mir/spec.hpp"

namespace mir {

namespace {

// Noise regularities follow the usual pattern: alpha = nominal - k,
// reg = nominal - 2k, regsol = nominal - 3k.

const char* kGkpz = R"js({
  "name": "gkpz",
  "d": 2,
  "scaling": ["2", "1"],
  "eta": "2",
  "noises": [
    {"name": "xi", "alpha": "-3/2-k", "reg": "-3/2-2k",
     "nonlinearity": [{"fn": "sigma"}]},
    {"name": "0", "unit": true, "alpha": "0", "reg": "-2k",
     "nonlinearity": [{"fn": "f"},
                      {"fn": "g", "derivs": [[[0, 1], 1]]},
                      {"fn": "h", "derivs": [[[0, 1], 2]]}]}
  ],
  "regsol": "1/2-3k",
  "restrict_low_poly": true,
  "render": {"solution": "u", "operator": "(\\partial_t - \\partial_x^2)", "axes": ["t", "x"]}
})js";

const char* kPhi43 = R"js({
  "name": "phi4_3",
  "d": 4,
  "scaling": ["2", "1", "1", "1"],
  "eta": "2",
  "noises": [
    {"name": "xi", "alpha": "-5/2-k", "reg": "-5/2-2k",
     "nonlinearity": [{"param": "lambda_xi"}]},
    {"name": "0", "unit": true, "alpha": "0", "reg": "-2k",
     "nonlinearity": [{"param": "lambda_0"},
                      {"param": "lambda_1", "u_power": 1},
                      {"param": "lambda_2", "u_power": 2},
                      {"param": "lambda_3", "u_power": 3}]}
  ],
  "regsol": "-1/2-3k",
  "restrict_low_poly": false,
  "render": {"solution": "\\Phi", "operator": "(\\partial_t - \\Delta)", "axes": ["t", "1", "2", "3"]}
})js";

const char* kShe = R"js({
  "name": "she_mult_1d",
  "d": 2,
  "scaling": ["2", "1"],
  "eta": "2",
  "noises": [
    {"name": "xi", "alpha": "-3/2-k", "reg": "-3/2-2k",
     "nonlinearity": [{"fn": "sigma"}]},
    {"name": "0", "unit": true, "alpha": "0", "reg": "-2k", "nonlinearity": []}
  ],
  "regsol": "1/2-3k",
  "restrict_low_poly": true,
  "render": {"solution": "u", "operator": "(\\partial_t - \\partial_x^2)", "axes": ["t", "x"]}
})js";

}  // namespace

std::vector<std::string> builtin_names() { return {"gkpz", "phi4_3", "she_mult_1d"}; }

EquationSpec builtin_spec(const std::string& name) {
  const char* doc = name == "gkpz" ? kGkpz : name == "phi4_3" ? kPhi43 : name == "she_mult_1d" ? kShe : nullptr;
  if (!doc) throw UnknownSpec("unknown builtin '" + name + "'");
  return parse_spec(nlohmann::json::parse(doc));
}

}  // namespace mir
