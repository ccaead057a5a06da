#include "mir/render.hpp"

#include <fmt/format.h>

#include "mir/errors.hpp"
#include "mir/json_io.hpp"

namespace mir {

using nlohmann::json;

Format parse_format(const std::string& s) {
  if (s == "text") return Format::Text;
  if (s == "latex") return Format::Latex;
  if (s == "json") return Format::Json;
  throw Error("unknown format '" + s + "' (text|latex|json)");
}

namespace {

const char* kGreek[] = {"alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta", "iota", "kappa",
                        "lambda", "mu", "nu", "xi", "pi", "rho", "sigma", "tau", "phi", "chi", "psi", "omega",
                        "Gamma", "Delta", "Theta", "Lambda", "Xi", "Pi", "Sigma", "Phi", "Psi", "Omega"};

std::string latex_name(const std::string& s) {
  for (auto g : kGreek)
    if (s == g) return std::string("\\") + g;
  if (s.size() == 1 || s.find_first_not_of("0123456789") == std::string::npos) return s;
  return "\\mathrm{" + s + "}";
}

// "lambda_xi" -> \lambda_{\xi}
std::string latex_param(const std::string& s) {
  auto u = s.find('_');
  if (u == std::string::npos) return latex_name(s);
  return latex_name(s.substr(0, u)) + "_{" + latex_name(s.substr(u + 1)) + "}";
}

std::string latex_word(const Word& n) {
  if (word_length(n) == 0) return "\\mathbf{0}";
  std::string s = "(";
  for (size_t i = 0; i < n.size(); ++i) s += (i ? "," : "") + std::to_string(n[i]);
  return s + ")";
}

std::string latex_kword(const KWord& k) {
  if (k.empty()) return "0";
  std::string s;
  for (auto& [w, c] : k.terms()) {
    if (!s.empty()) s += "+";
    if (c != 1) s += std::to_string(c);
    s += "e_{" + latex_word(w) + "}";
  }
  return s;
}

std::string deriv_prefix(const Structure& S, const Word& n, bool tex) {
  std::string s;
  for (int i = 0; i < (int)n.size(); ++i) {
    if (!n[i]) continue;
    std::string ax = S.spec().axis_name(i);
    if (tex) {
      s += "\\partial_{" + ax + "}";
      if (n[i] > 1) s += "^{" + std::to_string(n[i]) + "}";
      s += " ";
    } else {
      s += "d_" + ax;
      if (n[i] > 1) s += "^" + std::to_string(n[i]);
      s += " ";
    }
  }
  return s;
}

std::string primes(int k, bool tex) {
  if (k <= 3) return std::string(k, '\'');
  return tex ? "^{(" + std::to_string(k) + ")}" : "^(" + std::to_string(k) + ")";
}

std::string solution(const Structure& S, bool tex) {
  const std::string& u = S.spec().render.solution;
  if (u.empty()) return "u";
  if (tex) return u;
  return u[0] == '\\' ? u.substr(1) : u;
}

// atom and whether it needs parentheses before a power
std::pair<std::string, bool> atom_str(const Structure& S, const Atom& a, bool tex) {
  switch (a.kind) {
    case AtomKind::Noise: {
      std::string n = label_name(a.label);
      return {tex ? latex_name(n) : n, false};
    }
    case AtomKind::ModelDeriv: {
      std::string p = deriv_prefix(S, a.n, tex);
      std::string pi = tex ? "\\Pi_{" + latex(S, a.g) + "}" : "Pi[" + a.g.str() + "]";
      return {p + pi, !p.empty()};
    }
    case AtomKind::PolyBase: {
      std::string ax = S.spec().axis_name(a.axis);
      return {tex ? "{\\rm X}_{" + ax + "}" : "X_" + ax, false};
    }
    case AtomKind::Constant:
      return {tex ? "c_{" + latex(S, a.g) + "}" : "c[" + a.g.str() + "]", false};
    case AtomKind::NonlinDeriv: {
      std::string n = label_name(a.label);
      if (tex) return {"z_{(" + latex_name(n) + "," + latex_kword(a.k) + ")}", false};
      return {"z[" + n + "," + a.k.str() + "]", false};
    }
    case AtomKind::Func: {
      std::string u = solution(S, tex);
      return {(tex ? latex_name(a.name) : a.name) + primes(a.order, tex) + "(" + u + ")", false};
    }
    case AtomKind::Param:
      return {tex ? latex_param(a.name) : a.name, false};
    case AtomKind::Sol: {
      std::string p = deriv_prefix(S, a.n, tex);
      return {p + solution(S, tex), !p.empty()};
    }
  }
  return {"?", false};
}

std::string coef_str(const Rational& q, bool tex) {
  if (!tex || q.get_den() == 1) return to_string(q);
  return fmt::format("\\tfrac{{{}}}{{{}}}", q.get_num().get_str(), q.get_den().get_str());
}

std::string mono_str(const Structure& S, const SymExpr::Mono& m, bool tex) {
  std::string s;
  for (auto& [id, p] : m) {
    auto [a, paren] = atom_str(S, atom(id), tex);
    if (!s.empty()) s += tex ? " " : "*";
    if (p > 1) {
      if (paren) a = (tex ? "\\big(" : "(") + a + (tex ? "\\big)" : ")");
      a += tex ? "^{" + std::to_string(p) + "}" : "^" + std::to_string(p);
    }
    s += a;
  }
  return s;
}

std::string expr_str(const Structure& S, const SymExpr& e, bool tex) {
  if (e.is_zero()) return "0";
  std::string s;
  for (auto& [m, q] : presentation(e)) {
    Rational a = abs(q);
    bool neg = sgn(q) < 0;
    if (s.empty())
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    if (m.empty()) {
      s += coef_str(a, tex);
      continue;
    }
    if (a != 1) s += coef_str(a, tex) + (tex ? " " : "*");
    s += mono_str(S, m, tex);
  }
  return s;
}

}  // namespace

std::string latex(const Structure& S, const MultiIndex& b) {
  if (b.empty()) return "0";
  std::string s;
  auto terms = b.canonical_terms();
  // noise pairs before the unit label, then polynomials
  std::stable_sort(terms.begin(), terms.end(), [&](auto& x, auto& y) {
    auto rank = [&](CoordId c) {
      const Coord& k = coord(c);
      if (k.poly) return 2;
      return S.spec().noise(k.label).unit ? 1 : 0;
    };
    return rank(x.first) < rank(y.first);
  });
  for (auto& [c, n] : terms) {
    if (!s.empty()) s += " + ";
    if (n != 1) s += std::to_string(n);
    const Coord& k = coord(c);
    if (k.poly)
      s += "e_{" + latex_word(k.n) + "}";
    else
      s += "e_{(" + latex_name(label_name(k.label)) + "," + latex_kword(k.k) + ")}";
  }
  return s;
}

std::string latex(const Structure& S, const SymExpr& e, bool factor) {
  if (!factor || e.terms().size() < 2) return expr_str(S, e, true);
  // pull out the common monomial
  SymExpr::Mono common = e.terms().begin()->first;
  for (auto& [m, q] : e.terms()) {
    SymExpr::Mono keep;
    for (auto& [id, p] : common)
      for (auto& [id2, p2] : m)
        if (id == id2) keep.push_back({id, std::min(p, p2)});
    common = keep;
  }
  if (common.empty()) return "\\big(" + expr_str(S, e, true) + "\\big)";
  SymExpr rest;
  for (auto& [m, q] : e.terms()) {
    SymExpr::Mono r;
    for (auto& [id, p] : m) {
      unsigned c = 0;
      for (auto& [id2, p2] : common)
        if (id == id2) c = p2;
      if (p > c) r.push_back({id, p - c});
    }
    rest.add_term(r, q);
  }
  SymExpr head;
  head.add_term(common, 1);
  return expr_str(S, head, true) + "\\big(" + expr_str(S, rest, true) + "\\big)";
}

std::string text(const Structure& S, const SymExpr& e) { return expr_str(S, e, false); }

json record(const Structure& S, const MultiIndex& b) {
  return json{{"multiindex", to_json(b)},
              {"text", b.str()},
              {"homogeneity", to_json(S.homogeneity(b))},
              {"bracket", bracket(b)},
              {"noise_hom", S.noise_homogeneity(b)},
              {"class", to_string(S.classify(b))}};
}

std::string render_list(const Structure& S, const std::vector<MultiIndex>& v, Format f) {
  if (f == Format::Json) {
    json arr = json::array();
    for (auto& b : v) arr.push_back(record(S, b));
    return arr.dump(2) + "\n";
  }
  std::string s;
  if (f == Format::Latex) {
    for (auto& b : v) s += fmt::format("{} & {} \\\\\n", S.homogeneity(b).str(), latex(S, b));
    return s;
  }
  size_t w = 0;
  for (auto& b : v) w = std::max(w, S.homogeneity(b).str().size());
  for (auto& b : v) s += fmt::format("{:>{}}  {}\n", S.homogeneity(b).str(), w, b.str());
  return s;
}

namespace {
std::string lhs_latex(const Structure& S, const std::string& what) {
  const std::string& op = S.spec().render.op;
  return (op.empty() ? std::string("\\mathcal{L}") : op) + what;
}
std::string lhs_text(const Structure& S, const std::string& what) {
  std::string op = S.spec().render.op.empty() ? "L" : S.spec().render.op;
  return op + " " + what;
}
}  // namespace

std::string render_model_equations(const Structure& S, const std::vector<std::pair<MultiIndex, SymExpr>>& eqs,
                                   Format f) {
  if (f == Format::Json) {
    json arr = json::array();
    for (auto& [b, e] : eqs)
      arr.push_back({{"beta", b.str()}, {"multiindex", to_json(b)}, {"rhs", text(S, e)}, {"rhs_latex", latex(S, e)}});
    return arr.dump(2) + "\n";
  }
  std::string s;
  if (f == Format::Latex) {
    s += "\\begin{align*}\n";
    for (size_t i = 0; i < eqs.size(); ++i) {
      auto& [b, e] = eqs[i];
      s += "  " + lhs_latex(S, "\\Pi_{" + latex(S, b) + "}") + " &= ";
      bool first = true;
      for (auto& [m, q] : presentation(e)) {
        SymExpr one;
        one.add_term(m, q);
        std::string t = latex(S, one);
        if (!first) s += "\\\\\n  &\\quad " + std::string(t[0] == '-' ? "" : "+ ");
        s += t;
        first = false;
      }
      if (first) s += "0";
      s += i + 1 < eqs.size() ? ",\\\\\n" : "\n";
    }
    s += "\\end{align*}\n";
    s += "% model equations hold modulo polynomials\n";
    return s;
  }
  for (auto& [b, e] : eqs) s += lhs_text(S, "Pi[" + b.str() + "]") + " = " + text(S, e) + "\n";
  s += "(modulo polynomials)\n";
  return s;
}

std::string render_renormalized(const Structure& S, const RenormalizedEquation& eq, Format f) {
  const std::string u = S.spec().render.solution.empty() ? "u" : S.spec().render.solution;
  if (f == Format::Json) {
    json j;
    j["counterterms"] = json::array();
    for (auto& b : eq.counterterms) j["counterterms"].push_back(record(S, b));
    j["merged"] = json::array();
    for (auto& i : eq.merged)
      j["merged"].push_back({{"beta", i.beta.str()}, {"ratio", to_string(i.ratio)}, {"target", i.target.str()}});
    j["constants"] = json::array();
    for (auto& b : eq.constants) j["constants"].push_back(b.str());
    j["base"] = text(S, eq.base);
    j["terms"] = json::array();
    for (auto& [b, t] : eq.terms)
      j["terms"].push_back({{"constant", b.str()}, {"coefficient", text(S, t)}, {"latex", latex(S, t, true)}});
    j["model_equations"] = json::parse(render_model_equations(S, eq.model_equations, Format::Json));
    return j.dump(2) + "\n";
  }
  std::string s;
  if (f == Format::Latex) {
    s += "\\begin{align*}\n  " + lhs_latex(S, u) + " &= " + latex(S, eq.base);
    for (auto& [b, t] : eq.terms) s += "\\\\\n  &\\quad + c_{" + latex(S, b) + "}\\, " + latex(S, t, true);
    s += "\n\\end{align*}\n";
    for (auto& i : eq.merged)
      s += "% c_{" + latex(S, i.beta) + "} = " + to_string(i.ratio) + " c_{" + latex(S, i.target) + "}\n";
    s += fmt::format("% {} renormalization constants\n", eq.constants.size());
    s += render_model_equations(S, eq.model_equations, Format::Latex);
    return s;
  }
  s += lhs_text(S, solution(S, false)) + " = " + text(S, eq.base) + "\n";
  for (auto& [b, t] : eq.terms) s += "    + c[" + b.str() + "] * (" + text(S, t) + ")\n";
  for (auto& i : eq.merged)
    s += fmt::format("merged: c[{}] = {} c[{}]\n", i.beta.str(), to_string(i.ratio), i.target.str());
  s += fmt::format("{} renormalization constants\n", eq.constants.size());
  s += render_model_equations(S, eq.model_equations, Format::Text);
  return s;
}

}  // namespace mir
