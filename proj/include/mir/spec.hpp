#pragma once
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mir/homogeneity.hpp"
#include "mir/multiindex.hpp"

namespace mir {

// One summand  coef * F(u) * prod_n (d^n u)^p(n)  of a nonlinearity a^l,
// where F is either a generic smooth function `fn` or `param * u^u_power`.
struct NonlinTerm {
  Rational coef = 1;
  std::string fn;
  std::string param;
  int u_power = 0;
  std::vector<std::pair<Word, int>> derivs;  // n != 0, p > 0

  bool generic() const { return !fn.empty(); }
  int power_of(const Word& n) const;
};

struct Noise {
  std::string name;
  LabelId id = -1;
  bool unit = false;
  Hom alpha, reg;
  // absent: every subcritical (l,k) is admitted
  std::optional<std::vector<NonlinTerm>> nonlinearity;
};

struct Symmetry {
  bool noise_parity_even = false;
  std::vector<int> reflect_axes;  // 0-based internally, 1-based in documents
};

struct Rendering {
  std::string solution = "u";
  std::string op;                 // e.g. "(\\partial_t - \\partial_x^2)"
  std::vector<std::string> axes;  // e.g. {"t", "x"}
};

struct EquationSpec {
  std::string name;
  int d = 0;
  std::vector<Rational> scaling;
  Hom eta;
  std::vector<Noise> noises;  // sorted by name
  Hom regsol;
  bool restrict_low_poly = false;
  Symmetry symmetry;
  Rendering render;

  Hom alphamax() const;
  Hom scaled_degree(const Word& n) const;
  const Noise& noise(LabelId id) const;
  const Noise* find_noise(const std::string& name) const;
  const Noise& unit_noise() const;
  std::string axis_name(int axis) const;
  // spatial axes = all axes but the first (time)
  std::vector<int> spatial_axes() const;
  std::string fingerprint() const;
};

// Validates every structural invariant; throws ValidationError.
void validate(const EquationSpec& s);

EquationSpec parse_spec(const nlohmann::json& doc);
nlohmann::json render_spec(const EquationSpec& s);
EquationSpec load_spec_file(const std::string& path);

EquationSpec builtin_spec(const std::string& name);
std::vector<std::string> builtin_names();

}  // namespace mir
