#include "doctest.h"
#include "mir/enumerate.hpp"
#include "mir/render.hpp"
#include "mir/renorm.hpp"
#include "mir/spec.hpp"
#include "oracle.hpp"

using namespace mir;

TEST_CASE("model equations agree with the partition sum") {
  for (auto name : {"gkpz", "phi4_3", "she_mult_1d"}) {
    CAPTURE(name);
    Structure S(builtin_spec(name));
    ModelContext M(S);
    for (auto& b : enumerate_below(S, Hom(0), PopClass::N)) {
      CAPTURE(b.str());
      CHECK(model_rhs(M, b) == model_rhs_partitions(S, b));
    }
  }
}

TEST_CASE("oracle notation reads back debug output") {
  Structure S(builtin_spec("gkpz"));
  ModelContext M(S);
  auto C = counterterm_set(S);
  for (auto& b : C) {
    SymExpr e = model_rhs(M, b, &C);
    CHECK(oracle::expr(debug_str(e), 2) == e);
  }
}

TEST_CASE("small SHE model equations") {
  Structure S(builtin_spec("she_mult_1d"));
  ModelContext M(S);
  auto C = counterterm_set(S);
  auto b = oracle::mi("e_(xi,0)+e_(xi,e_[0,0])", 2);
  CHECK(model_rhs(M, b) == oracle::expr("Pi[e_(xi,0)]*xi", 2));
  CHECK(model_rhs(M, b, &C) == oracle::expr("Pi[e_(xi,0)]*xi + c[e_(xi,0)+e_(xi,e_[0,0])]", 2));
  // the x-shifted tree sees the polynomial X_1
  auto p = oracle::mi("e_(xi,0)+e_(xi,2e_[0,0])+e_[0,1]", 2);
  CHECK(model_rhs(M, p) == oracle::expr("2*Pi[e_(xi,0)]*X1*xi", 2));
}

TEST_CASE("nonlinearity coefficients") {
  Structure S(builtin_spec("she_mult_1d"));
  LabelId xi = intern_label("xi");
  // z_(xi,2e0) = sigma''/2
  CHECK(nonlinearity_expr(S, xi, KWord().plus(Word{0, 0}, 2)) == oracle::expr("1/2*sigma^(2)(u)", 2));
  CHECK(monomial_expr(S, oracle::mi("e_(xi,0)+e_(xi,e_[0,0])", 2)) == oracle::expr("sigma(u)*sigma^(1)(u)", 2));
}

TEST_CASE("Phi4 redundancies have ratio 3") {
  Structure S(builtin_spec("phi4_3"));
  ModelContext M(S);
  auto ids = detect_redundancies(M, counterterm_set(S));
  REQUIRE(ids.size() == 2);
  for (auto& i : ids) CHECK(i.ratio == 3);
}

TEST_CASE("renormalized equation: constants and rendering") {
  Structure S(builtin_spec("she_mult_1d"));
  ModelContext M(S);
  auto E = renormalized_equation(M, {});
  CHECK(E.constants.size() == 8);
  CHECK(E.terms.size() == 8);
  SymExpr sum = E.base;
  for (auto& [b, t] : E.terms) sum += SymExpr::of(Atom::constant(b)) * t;
  CHECK(sum == E.full());
  // output is byte-stable
  for (auto f : {"json", "text", "latex"})
    CHECK(render_renormalized(S, E, parse_format(f)) ==
          render_renormalized(S, renormalized_equation(M, {}), parse_format(f)));
}

TEST_CASE("grading of model equations") {
  Structure S(builtin_spec("gkpz"));
  ModelContext M(S);
  auto C = counterterm_set(S);
  for (auto& b : C) {
    SymExpr e = model_rhs(M, b, &C);
    for (auto& [m, q] : e.terms()) {
      auto h = atom_homogeneity(S, m);
      REQUIRE(h);
      CHECK(*h == S.homogeneity(b));
    }
  }
}
