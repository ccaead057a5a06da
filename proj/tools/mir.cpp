// mir -- command line front end
//
//   mir validate     --builtin gkpz | --spec FILE
//   mir enumerate    --class N --cap 0
//   mir counterterms [--spatial] [--noise-even]
//   mir model-eqs    [--with-constants] [--beta TEXT]
//   mir renormalized [--spatial] [--noise-even] [--merge-redundant]
//   mir tree psi|up|graft --tree EXPR ...
//   mir check        [--suite NAME] [--seed N]
//
// exit status: 0 ok, 1 invalid input / spec, 2 property check failed

#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "mir/checks.hpp"
#include "mir/enumerate.hpp"
#include "mir/errors.hpp"
#include "mir/json_io.hpp"
#include "mir/render.hpp"
#include "mir/spec.hpp"
#include "mir/trees.hpp"

using namespace mir;
using nlohmann::json;

namespace {

struct Source {
  std::string builtin, file;
  EquationSpec load() const {
    if (!builtin.empty() && !file.empty()) throw Error("give either --builtin or --spec, not both");
    if (!file.empty()) return load_spec_file(file);
    if (!builtin.empty()) return builtin_spec(builtin);
    throw Error("no equation given (use --builtin NAME or --spec FILE)");
  }
};

void add_source(CLI::App* c, Source& s) {
  c->add_option("--builtin", s.builtin, "built-in equation (gkpz, phi4_3, she_mult_1d)");
  c->add_option("--spec", s.file, "equation spec (JSON)");
}

Hom parse_cap(const std::string& s) {
  // "a" or "a,kappa"
  auto comma = s.find(',');
  if (comma == std::string::npos) return parse_hom(s);
  return Hom(parse_rational(s.substr(0, comma)), parse_rational(s.substr(comma + 1)));
}

void print(const std::string& s) {
  std::cout << s;
  if (!s.empty() && s.back() != '\n') std::cout << '\n';
}

json tree_json(const DecTree& t) {
  auto [c, b] = psi(t);
  return {{"tree", t.str()}, {"coefficient", to_string(c)}, {"multiindex", b.str()}};
}

json combo_json(const TreeCombo& c) {
  json arr = json::array();
  for (auto& [t, q] : c) {
    json r = tree_json(t);
    r["weight"] = to_string(q);
    arr.push_back(r);
  }
  return arr;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact multi-index algebra for singular SPDEs"};
  app.require_subcommand(1);

  Source src;
  std::string fmt_s = "json", cap_s = "0", class_s = "N";
  size_t budget = EnumOptions{}.node_budget;
  RenormFlags flags;
  bool with_constants = false, timing = false;
  std::string beta_s, tree_s, sigma_s, edge_s, suite;
  int axis = 0, dim = 0;
  CheckOptions co;
  std::uint64_t seed = 7;

  auto* validate = app.add_subcommand("validate", "check a spec against the structural inequalities");
  add_source(validate, src);
  validate->add_option("--format", fmt_s, "json|text");

  auto* enumerate = app.add_subcommand("enumerate", "list multi-indices of a class below a homogeneity cap");
  add_source(enumerate, src);
  enumerate->add_option("--class", class_s, "N|Nbar|P");
  enumerate->add_option("--cap", cap_s, "homogeneity cap, RATIONAL[,KAPPA]");
  enumerate->add_option("--format", fmt_s, "json|text|latex");
  enumerate->add_option("--node-budget", budget, "search budget");

  auto* counter = app.add_subcommand("counterterms", "admissible renormalization constants");
  add_source(counter, src);
  counter->add_flag("--spatial", flags.spatial, "drop multi-indices odd under the spatial reflections");
  counter->add_flag("--noise-even", flags.noise_even, "drop odd noise homogeneity");
  counter->add_option("--format", fmt_s, "json|text|latex");

  auto* model = app.add_subcommand("model-eqs", "model equations below the cap");
  add_source(model, src);
  model->add_flag("--with-constants", with_constants, "insert the counterterm shift");
  model->add_option("--beta", beta_s, "a single multi-index, e.g. 2e_(xi,0)+e_(0,2e_[0,1])");
  model->add_option("--cap", cap_s, "homogeneity cap, RATIONAL[,KAPPA]");
  model->add_option("--format", fmt_s, "json|text|latex");

  auto* renorm = app.add_subcommand("renormalized", "the renormalized equation");
  add_source(renorm, src);
  renorm->add_flag("--spatial", flags.spatial, "spatial reflection symmetry");
  renorm->add_flag("--noise-even", flags.noise_even, "noise parity");
  renorm->add_flag("--merge-redundant", flags.merge, "merge proportional model components");
  std::string renorm_fmt = "latex";
  renorm->add_option("--format", renorm_fmt, "json|text|latex");

  auto* tree = app.add_subcommand("tree", "decorated trees and their multi-index images");
  tree->require_subcommand(1);
  add_source(tree, src);
  tree->add_option("--dim", dim, "space-time dimension when no spec is given");
  auto* t_psi = tree->add_subcommand("psi", "image of a tree");
  t_psi->add_option("--tree", tree_s, "Xi(l; I[m](subtree), ...) | X[n]")->required();
  auto* t_up = tree->add_subcommand("up", "node derivative");
  t_up->add_option("--tree", tree_s)->required();
  t_up->add_option("--axis", axis, "0-based axis");
  auto* t_graft = tree->add_subcommand("graft", "graft sigma onto tau");
  t_graft->add_option("--sigma", sigma_s)->required();
  t_graft->add_option("--tree", tree_s, "tau")->required();
  t_graft->add_option("--edge", edge_s, "edge decoration, comma list or 0");

  for (auto* c : {t_psi, t_up, t_graft}) c->fallthrough();

  auto* check = app.add_subcommand("check", "run the algebraic property suites");
  add_source(check, src);
  check->add_option("--suite", suite, "run only this suite");
  check->add_option("--cap", cap_s, "truncation cap");
  check->add_option("--max-length", co.max_length, "truncation length bound");
  check->add_option("--seed", seed, "random seed");
  check->add_option("--characters", co.characters, "random characters per suite");
  check->add_option("--triples", co.triples, "random triples per suite");
  check->add_flag("--timing", timing, "print timings (breaks byte-stability)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) {
      EquationSpec s;
      try {
        s = src.load();
        mir::validate(s);
      } catch (const ValidationError& e) {
        if (fmt_s == "json")
          print(json{{"valid", false}, {"rule", e.rule}, {"message", e.what()}}.dump(2));
        else
          print(std::string("invalid: ") + e.what());
        return 1;
      }
      if (fmt_s == "json")
        print(json{{"valid", true}, {"name", s.name}, {"spec", render_spec(s)}}.dump(2));
      else
        print("valid: " + s.name);
      return 0;
    }

    if (*tree) {
      std::unique_ptr<Structure> S;
      int d = dim;
      if (!src.builtin.empty() || !src.file.empty()) {
        S = std::make_unique<Structure>(src.load());
        d = S->d();
      }
      if (d <= 0) d = 2;
      DecTree t = parse_tree(tree_s, d);
      if (*t_psi) {
        print(tree_json(t).dump(2));
      } else if (*t_up) {
        if (!S) throw Error("tree up needs a spec (--builtin or --spec)");
        print(combo_json(up(*S, axis, t)).dump(2));
      } else {
        Word n = zero_word(d);
        if (!edge_s.empty() && edge_s != "0") {
          n.clear();
          std::stringstream ss(edge_s);
          for (std::string p; std::getline(ss, p, ',');) n.push_back(std::stoi(p));
          if ((int)n.size() != d) throw ParseError("edge decoration needs " + std::to_string(d) + " entries");
        }
        print(combo_json(graft(parse_tree(sigma_s, d), n, t)).dump(2));
      }
      return 0;
    }

    Structure S(src.load());

    if (*enumerate) {
      EnumOptions o;
      o.node_budget = budget;
      print(render_list(S, enumerate_below(S, parse_cap(cap_s), parse_class(class_s), o), parse_format(fmt_s)));
      return 0;
    }
    if (*counter) {
      auto C = filter_symmetric(S, counterterm_set(S), symmetry_for(S, flags));
      print(render_list(S, C, parse_format(fmt_s)));
      return 0;
    }
    if (*model) {
      ModelContext M(S);
      auto C = counterterm_set(S);
      std::vector<MultiIndex> set;
      if (!beta_s.empty()) {
        MultiIndex b = parse_multiindex(beta_s, S.d());
        if (!S.in_N(b)) throw NotInN(b.str() + " is not in N");
        set.push_back(b);
      } else {
        set = enumerate_below(S, parse_cap(cap_s), PopClass::N);
      }
      std::vector<std::pair<MultiIndex, SymExpr>> eqs;
      for (auto& b : set) eqs.emplace_back(b, model_rhs(M, b, with_constants ? &C : nullptr));
      print(render_model_equations(S, eqs, parse_format(fmt_s)));
      return 0;
    }
    if (*renorm) {
      ModelContext M(S);
      print(render_renormalized(S, renormalized_equation(M, flags), parse_format(renorm_fmt)));
      return 0;
    }
    if (*check) {
      co.cap = parse_cap(cap_s);
      co.seed = seed;
      bool ok = true, any = false;
      for (auto& st : all_suites()) {
        if (!suite.empty() && st.name != suite) continue;
        any = true;
        CheckResult r = st.run(S, co);
        ok &= r.ok;
        std::cout << (r.ok ? "PASS " : "FAIL ") << st.name << " (" << r.name << "): " << r.cases << " cases";
        if (timing) std::cout << ", " << r.seconds << " s";
        if (!r.detail.empty()) std::cout << "; " << r.detail;
        std::cout << '\n';
      }
      if (!any) throw Error("unknown suite '" + suite + "'");
      return ok ? 0 : 2;
    }
  } catch (const Error& e) {
    std::cerr << "mir: " << e.what() << '\n';
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "mir: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
