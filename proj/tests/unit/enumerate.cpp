#include "doctest.h"
#include "mir/checks.hpp"
#include "mir/enumerate.hpp"
#include "mir/errors.hpp"
#include "mir/json_io.hpp"
#include "mir/renorm.hpp"
#include "mir/spec.hpp"

using namespace mir;

// counts below are cross-checked by the exhaustive search in check_enumerator
TEST_CASE("sizes of N below 0 and of the counterterm sets") {
  struct Row {
    const char* name;
    size_t n_below_zero, counterterms;
  };
  for (auto r : {Row{"gkpz", 29, 25}, Row{"phi4_3", 13, 9}, Row{"she_mult_1d", 10, 8}}) {
    CAPTURE(r.name);
    Structure S(builtin_spec(r.name));
    CHECK(enumerate_below(S, Hom(0), PopClass::N).size() == r.n_below_zero);
    CHECK(counterterm_set(S).size() == r.counterterms);
  }
}

TEST_CASE("enumerator agrees with exhaustive search") {
  for (auto name : {"gkpz", "phi4_3", "she_mult_1d"}) {
    CAPTURE(name);
    Structure S(builtin_spec(name));
    CheckResult r = check_enumerator(S, Hom(0), 6);
    CHECK_MESSAGE(r.ok, r.detail);
  }
}

TEST_CASE("output is sorted by homogeneity") {
  Structure S(builtin_spec("gkpz"));
  auto v = enumerate_below(S, Hom(0), PopClass::N);
  for (size_t i = 1; i < v.size(); ++i) CHECK(S.homogeneity(v[i - 1]) <= S.homogeneity(v[i]));
  CHECK(v.front() == parse_multiindex("e_(xi,0)", 2));
}

TEST_CASE("gKPZ symmetry filters") {
  Structure S(builtin_spec("gkpz"));
  auto C = counterterm_set(S);
  CHECK(filter_symmetric(S, C, symmetry_for(S, {true, false, false})).size() == 17);
  CHECK(filter_symmetric(S, C, symmetry_for(S, {true, true, false})).size() == 12);
  CHECK(spatial_parity(parse_multiindex("2e_(xi,0)+e_(0,e_[0,1])+e_(0,2e_[0,1])", 2), 1) == 1);
  CHECK(spatial_parity(parse_multiindex("2e_(xi,0)+e_(0,2e_[0,1])", 2), 1) == 0);
}

TEST_CASE("node budget") {
  Structure S(builtin_spec("gkpz"));
  EnumOptions o;
  o.node_budget = 1000;
  CHECK_THROWS_AS(enumerate_below(S, Hom(3), PopClass::N, o), CapTooLarge);
}

TEST_CASE("precedence weights") {
  EquationSpec s = builtin_spec("gkpz");
  auto w = default_weights(s);
  CHECK(w.l1 == Rational(2, 7));
  CHECK(w.l2 == Rational(4, 7));
  CHECK(w.l3 == Rational(1, 7));
  CHECK_THROWS_AS(check_weights(s, {Rational(1), Rational(0), Rational(0)}), WeightError);
}
