#include "mir/spec.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "mir/errors.hpp"
#include "mir/json_io.hpp"

namespace mir {

using nlohmann::json;

int NonlinTerm::power_of(const Word& n) const {
  if (word_length(n) == 0) return generic() ? -1 : u_power;  // -1: unbounded
  for (auto& [w, p] : derivs)
    if (w == n) return p;
  return 0;
}

Hom EquationSpec::alphamax() const {
  Hom m = noises.at(0).alpha;
  for (auto& z : noises) m = max(m, z.alpha);
  return m;
}

Hom EquationSpec::scaled_degree(const Word& n) const {
  Rational s = 0;
  for (int i = 0; i < d; ++i) s += scaling[i] * n[i];
  return Hom(s);
}

const Noise& EquationSpec::noise(LabelId id) const {
  for (auto& z : noises)
    if (z.id == id) return z;
  throw Error("label '" + label_name(id) + "' is not a noise of spec '" + name + "'");
}

const Noise* EquationSpec::find_noise(const std::string& nm) const {
  for (auto& z : noises)
    if (z.name == nm) return &z;
  return nullptr;
}

const Noise& EquationSpec::unit_noise() const {
  for (auto& z : noises)
    if (z.unit) return z;
  throw ValidationError("unit", "no unit noise");
}

std::string EquationSpec::axis_name(int axis) const {
  if (axis < (int)render.axes.size()) return render.axes[axis];
  return std::to_string(axis + 1);
}

std::vector<int> EquationSpec::spatial_axes() const {
  std::vector<int> v;
  for (int i = 1; i < d; ++i) v.push_back(i);
  return v;
}

std::string EquationSpec::fingerprint() const { return render_spec(*this).dump(); }

void validate(const EquationSpec& s) {
  if (s.d < 1) throw ValidationError("dimension", "d must be positive");
  if ((int)s.scaling.size() != s.d)
    throw ValidationError("scaling", "scaling must have d entries");
  for (auto& x : s.scaling)
    if (x < 1) throw ValidationError("scaling", "scaling entries must be >= 1");
  if (!(s.eta > Hom(0))) throw ValidationError("eta", "operator order must be positive");
  if (s.noises.empty()) throw ValidationError("unit", "no noises");
  std::set<std::string> names;
  int units = 0;
  for (auto& z : s.noises) {
    if (z.name.empty()) throw ValidationError("names", "empty noise name");
    if (!names.insert(z.name).second)
      throw ValidationError("names", "duplicate noise name '" + z.name + "'");
    if (z.unit) {
      ++units;
      if (!z.alpha.is_zero()) throw ValidationError("unit", "unit noise must have alpha = 0");
      if (!(z.reg < Hom(0))) throw ValidationError("unit", "unit noise needs reg < 0");
    }
    if (!(z.reg < z.alpha))
      throw ValidationError("sub01", "reg(" + z.name + ") = " + z.reg.str() +
                                         " must be strictly below alpha = " + z.alpha.str());
    if (!(s.regsol < s.eta + z.reg))
      throw ValidationError("sub10", "regsol = " + s.regsol.str() + " must be below eta + reg(" +
                                         z.name + ") = " + (s.eta + z.reg).str());
    if (z.nonlinearity)
      for (auto& t : *z.nonlinearity) {
        if (t.fn.empty() == t.param.empty())
          throw ValidationError("nonlinearity", "each term needs exactly one of fn/param");
        if (t.u_power < 0 || (t.generic() && t.u_power != 0))
          throw ValidationError("nonlinearity", "u_power only applies to parameter terms");
        for (auto& [w, p] : t.derivs) {
          if ((int)w.size() != s.d || word_length(w) == 0 || p <= 0)
            throw ValidationError("nonlinearity", "derivative factors need nonzero words and positive powers");
        }
      }
  }
  if (units != 1) throw ValidationError("unit", "exactly one unit noise is required");
  for (int a : s.symmetry.reflect_axes)
    if (a < 0 || a >= s.d) throw ValidationError("symmetry", "reflect axis out of range");
  if (!std::is_sorted(s.noises.begin(), s.noises.end(),
                      [](const Noise& a, const Noise& b) { return a.name < b.name; }))
    throw ValidationError("names", "noises must be sorted by name");
}

// ------------------------------------------------------------ parsing

namespace {

void only_keys(const json& j, std::initializer_list<const char*> keys, const char* where) {
  if (!j.is_object()) throw SchemaError(std::string(where) + " must be an object");
  for (auto& [k, v] : j.items()) {
    bool ok = false;
    for (auto* a : keys) ok |= k == a;
    if (!ok) throw SchemaError(std::string("unknown key '") + k + "' in " + where);
  }
}

Rational rat(const json& v) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (!v.is_string()) throw SchemaError("rationals are written as strings");
  return parse_rational(v.get<std::string>());
}

NonlinTerm parse_term(const json& j, int d) {
  only_keys(j, {"coef", "fn", "param", "u_power", "derivs"}, "nonlinearity term");
  NonlinTerm t;
  if (j.contains("coef")) t.coef = rat(j["coef"]);
  if (j.contains("fn")) t.fn = j["fn"].get<std::string>();
  if (j.contains("param")) t.param = j["param"].get<std::string>();
  if (j.contains("u_power")) t.u_power = j["u_power"].get<int>();
  if (j.contains("derivs"))
    for (auto& f : j["derivs"]) {
      if (!f.is_array() || f.size() != 2) throw SchemaError("derivative factor is [word, power]");
      t.derivs.emplace_back(word_from_json(f[0], d), f[1].get<int>());
    }
  std::sort(t.derivs.begin(), t.derivs.end());
  return t;
}

json term_json(const NonlinTerm& t) {
  json j;
  if (t.coef != 1) j["coef"] = t.coef.get_str();
  if (!t.fn.empty()) j["fn"] = t.fn;
  if (!t.param.empty()) j["param"] = t.param;
  if (t.u_power) j["u_power"] = t.u_power;
  if (!t.derivs.empty()) {
    json a = json::array();
    for (auto& [w, p] : t.derivs) a.push_back({w, p});
    j["derivs"] = a;
  }
  return j;
}

}  // namespace

EquationSpec parse_spec(const json& doc) {
  try {
    only_keys(doc, {"name", "d", "scaling", "eta", "noises", "regsol", "restrict_low_poly",
                    "symmetry", "render", "alphamax"},
              "spec");
    for (auto* k : {"d", "scaling", "eta", "noises", "regsol"})
      if (!doc.contains(k)) throw SchemaError(std::string("spec needs '") + k + "'");
    EquationSpec s;
    s.name = doc.value("name", "custom");
    s.d = doc["d"].get<int>();
    if (s.d < 1 || s.d > 16) throw SchemaError("d out of range");
    for (auto& x : doc["scaling"]) s.scaling.push_back(rat(x));
    s.eta = hom_from_json(doc["eta"]);
    for (auto& nj : doc["noises"]) {
      only_keys(nj, {"name", "unit", "alpha", "reg", "nonlinearity"}, "noise");
      Noise z;
      z.name = nj.at("name").get<std::string>();
      z.id = intern_label(z.name);
      z.unit = nj.value("unit", false);
      z.alpha = nj.contains("alpha") ? hom_from_json(nj["alpha"]) : Hom(0);
      if (!nj.contains("reg")) throw SchemaError("noise '" + z.name + "' needs 'reg'");
      z.reg = hom_from_json(nj["reg"]);
      if (nj.contains("nonlinearity")) {
        std::vector<NonlinTerm> terms;
        for (auto& tj : nj["nonlinearity"]) terms.push_back(parse_term(tj, s.d));
        z.nonlinearity = terms;
      }
      s.noises.push_back(z);
    }
    std::sort(s.noises.begin(), s.noises.end(),
              [](const Noise& a, const Noise& b) { return a.name < b.name; });
    s.regsol = hom_from_json(doc["regsol"]);
    s.restrict_low_poly = doc.value("restrict_low_poly", false);
    if (doc.contains("symmetry")) {
      auto& sj = doc["symmetry"];
      only_keys(sj, {"noise_parity_even", "reflect_axes"}, "symmetry");
      s.symmetry.noise_parity_even = sj.value("noise_parity_even", false);
      if (sj.contains("reflect_axes"))
        for (auto& a : sj["reflect_axes"]) s.symmetry.reflect_axes.push_back(a.get<int>() - 1);
    }
    if (doc.contains("render")) {
      auto& rj = doc["render"];
      only_keys(rj, {"solution", "operator", "axes"}, "render");
      s.render.solution = rj.value("solution", "u");
      s.render.op = rj.value("operator", "");
      if (rj.contains("axes")) s.render.axes = rj["axes"].get<std::vector<std::string>>();
    }
    validate(s);
    if (doc.contains("alphamax") && !(hom_from_json(doc["alphamax"]) == s.alphamax()))
      throw ValidationError("alphamax", "alphamax does not match the noise table");
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(e.what());
  }
}

json render_spec(const EquationSpec& s) {
  json doc;
  doc["name"] = s.name;
  doc["d"] = s.d;
  json sc = json::array();
  for (auto& x : s.scaling) sc.push_back(x.get_str());
  doc["scaling"] = sc;
  doc["eta"] = to_json(s.eta);
  json ns = json::array();
  for (auto& z : s.noises) {
    json nj = {{"name", z.name}, {"unit", z.unit}, {"alpha", to_json(z.alpha)}, {"reg", to_json(z.reg)}};
    if (z.nonlinearity) {
      json a = json::array();
      for (auto& t : *z.nonlinearity) a.push_back(term_json(t));
      nj["nonlinearity"] = a;
    }
    ns.push_back(nj);
  }
  doc["noises"] = ns;
  doc["regsol"] = to_json(s.regsol);
  doc["restrict_low_poly"] = s.restrict_low_poly;
  json ax = json::array();
  for (int a : s.symmetry.reflect_axes) ax.push_back(a + 1);
  doc["symmetry"] = {{"noise_parity_even", s.symmetry.noise_parity_even}, {"reflect_axes", ax}};
  doc["render"] = {{"solution", s.render.solution}, {"operator", s.render.op}, {"axes", s.render.axes}};
  return doc;
}

EquationSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  return parse_spec(doc);
}

}  // namespace mir
