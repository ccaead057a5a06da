#include "doctest.h"
#include "mir/enumerate.hpp"
#include "mir/errors.hpp"
#include "mir/json_io.hpp"
#include "mir/spec.hpp"
#include "mir/structure.hpp"

using namespace mir;

TEST_CASE("hom ordering is the kappa -> 0+ limit") {
  CHECK(Hom(0, -1) < Hom(0));
  CHECK(Hom(-1, 5) < Hom(0, -100));
  CHECK(Hom(Rational(-1, 2), -3) < Hom(Rational(-1, 2), -2));
  Hom h = parse_hom("-3/2-2k");
  CHECK(h.base == Rational(-3, 2));
  CHECK(h.kappa == -2);
  CHECK(h.str() == "-3/2-2k");
  CHECK(parse_hom("0").is_zero());
  CHECK((Hom(1, 2) + Hom(Rational(1, 2), -3)) == Hom(Rational(3, 2), -1));
}

TEST_CASE("rational helpers") {
  CHECK(factorial(5) == 120);
  CHECK(binomial(6, 2) == 15);
  CHECK(binomial(3, 5) == 0);
  CHECK(to_string(parse_rational("4/6")) == "2/3");
}

TEST_CASE("multi-index text form round-trips") {
  for (auto s : {"e_(xi,0)", "2e_(xi,0)+e_(0,2e_[0,1])", "e_(0,e_[0,0]+2e_[0,1])+3e_(xi,0)",
                 "2e_(xi,e_[0,0])+e_[0,1]"}) {
    MultiIndex b = parse_multiindex(s, 2);
    CHECK(parse_multiindex(b.str(), 2) == b);
  }
  // storage order does not depend on how the sum was written
  CHECK(parse_multiindex("e_(0,2e_[0,1])+2e_(xi,0)", 2) == parse_multiindex("2e_(xi,0)+e_(0,2e_[0,1])", 2));
  CHECK_THROWS_AS(parse_multiindex("2e_(xi,0", 2), ParseError);
  CHECK_THROWS(parse_multiindex("e_[0,1,0]", 2));
}

TEST_CASE("bracket, length and noise count") {
  Structure S(builtin_spec("gkpz"));
  auto b = [](const char* s) { return parse_multiindex(s, 2); };
  CHECK(bracket(b("e_(xi,0)")) == 1);
  CHECK(bracket(b("e_(xi,0)+e_(xi,e_[0,0])")) == 1);
  CHECK(bracket(b("2e_(xi,0)+e_(0,2e_[0,1])")) == 1);
  CHECK(bracket(b("2e_(xi,0)+e_[0,1]")) == 3);
  CHECK(bracket(b("2e_(xi,e_[0,0])+e_[0,1]")) == 1);
  CHECK(length(b("3e_(xi,0)+e_(0,2e_[0,1])")) == 4);
  CHECK(S.noise_homogeneity(b("3e_(xi,0)+e_(0,2e_[0,1])")) == 3);
  CHECK(S.noise_homogeneity(b("e_(0,2e_[0,1])")) == 0);
}

TEST_CASE("homogeneity on gKPZ") {
  Structure S(builtin_spec("gkpz"));
  auto h = [&](const char* s) { return S.homogeneity(parse_multiindex(s, 2)); };
  CHECK(h("e_(xi,0)") == Hom(Rational(-3, 2), -1));
  CHECK(h("e_(xi,0)+e_(xi,e_[0,0])") == Hom(-1, -2));
  CHECK(h("2e_(xi,0)+e_(0,2e_[0,1])") == Hom(-1, -2));
  CHECK(h("3e_(xi,0)+2e_(0,2e_[0,1])") == Hom(Rational(-1, 2), -3));
  CHECK(h("4e_(xi,0)+e_(0,2e_[0,0]+2e_[0,1])") == Hom(0, -4));
}

TEST_CASE("population classes") {
  Structure S(builtin_spec("she_mult_1d"));
  auto c = [&](const char* s) { return S.classify(parse_multiindex(s, 2)); };
  CHECK(c("e_(xi,0)+e_(xi,e_[0,0])") == PopClass::N);
  CHECK(c("e_[0,1]") == PopClass::P);
  CHECK(c("2e_(xi,0)") == PopClass::Outside);
}

TEST_CASE("builtins validate and round-trip through JSON") {
  for (auto name : {"gkpz", "phi4_3", "she_mult_1d"}) {
    EquationSpec s = builtin_spec(name);
    CHECK_NOTHROW(validate(s));
    EquationSpec t = parse_spec(render_spec(s));
    CHECK(t.fingerprint() == s.fingerprint());
  }
  CHECK_THROWS_AS(builtin_spec("kpz_unknown"), UnknownSpec);
}

TEST_CASE("spec files") {
  EquationSpec s = load_spec_file(MIR_TEST_DATA "/she.json");
  CHECK(s.fingerprint() == builtin_spec("she_mult_1d").fingerprint());
  try {
    load_spec_file(MIR_TEST_DATA "/bad_regsol.json");
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(e.rule == "sub10");
  }
}

TEST_CASE("admissible pairs of gKPZ") {
  Structure S(builtin_spec("gkpz"));
  LabelId xi = intern_label("xi");
  Word t = {0, 0}, x = {0, 1};
  CHECK(S.is_admissible_pair(xi, KWord().plus(t, 7)));
  CHECK_FALSE(S.is_admissible_pair(xi, KWord().plus(x)));
  CHECK(S.is_admissible_pair(S.unit_label(), KWord().plus(t, 4).plus(x, 2)));
  CHECK_FALSE(S.is_admissible_pair(S.unit_label(), KWord().plus(x, 3)));
  // pairs below weight 3
  CHECK(admissible_pairs(S, xi, 3).size() == 4);
}
