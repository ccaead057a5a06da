#include "doctest.h"
#include "mir/errors.hpp"
#include "mir/json_io.hpp"
#include "mir/spec.hpp"
#include "mir/structure.hpp"
#include "mir/trees.hpp"

using namespace mir;

namespace {
std::pair<Rational, std::string> image(const char* t) {
  auto [q, b] = psi(parse_tree(t, 2));
  return {q, b.str()};
}
}  // namespace

TEST_CASE("psi of small trees") {
  CHECK(image("Xi(xi)") == std::pair<Rational, std::string>{1, "e_(xi,0)"});
  CHECK(image("Xi(xi; I[0,0](Xi(xi)), I[0,0](Xi(xi)))") ==
        std::pair<Rational, std::string>{2, "2e_(xi,0)+e_(xi,2e_[0,0])"});
  CHECK(image("Xi(0; I[0,1](Xi(xi)), I[0,1](Xi(xi)))") ==
        std::pair<Rational, std::string>{2, "e_(0,2e_[0,1])+2e_(xi,0)"});
  // children with different edge types: k! = 1
  CHECK(image("Xi(0; I[0,0](Xi(xi)), I[0,1](Xi(xi)))").first == 1);
}

TEST_CASE("trees are unordered") {
  DecTree a = parse_tree("Xi(0; I[0,0](Xi(xi)), I[0,1](Xi(a)))", 2);
  DecTree b = parse_tree("Xi(0; I[0,1](Xi(a)), I[0,0](Xi(xi)))", 2);
  CHECK(a == b);
  CHECK(a.size() == 3);
  CHECK(parse_tree(a.str(), 2) == a);
  CHECK_THROWS_AS(parse_tree("Xi(0; I[0,1,0](Xi(xi)))", 2), ParseError);
}

TEST_CASE("grafting onto every vertex") {
  DecTree s = parse_tree("Xi(c)", 2);
  DecTree t = parse_tree("Xi(a; I[0,0](Xi(b)))", 2);
  TreeCombo g = graft(s, Word{0, 0}, t);
  REQUIRE(g.size() == 2);
  CHECK(g.count(parse_tree("Xi(a; I[0,0](Xi(b)), I[0,0](Xi(c)))", 2)) == 1);
  CHECK(g.count(parse_tree("Xi(a; I[0,0](Xi(b; I[0,0](Xi(c)))))", 2)) == 1);
  for (auto& [tree, q] : g) CHECK(q == 1);
}

TEST_CASE("distinct trees, same image") {
  DecTree l = parse_tree("Xi(a; I[0,0](Xi(b; I[0,0](Xi(c)))), I[0,0](Xi(c)))", 2);
  DecTree r = parse_tree("Xi(b; I[0,0](Xi(a; I[0,0](Xi(c)), I[0,0](Xi(c)))))", 2);
  CHECK_FALSE(l == r);
  CHECK(psi(l) == psi(r));
  CHECK(psi(l).first == 2);
}

TEST_CASE("node derivative attaches one polynomial leaf") {
  Structure S(builtin_spec("gkpz"));
  DecTree t = parse_tree("Xi(0; I[0,1](Xi(xi)))", 2);
  TreeCombo u = up(S, 1, t);
  CHECK_FALSE(u.empty());
  for (auto& [r, q] : u) {
    CHECK(tree_admissible(S, r));
    CHECK(r.size() == t.size() + 1);
  }
}
