#pragma once
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mir/homogeneity.hpp"
#include "mir/multiindex.hpp"

namespace mir {

class Structure;

// Decorated rooted tree: a leaf X^n or a node Xi_l with planted children
// I_m(tau).  Children are kept sorted so that isomorphic trees compare equal.
struct DecTree {
  bool leaf = true;
  Word n;  // leaf
  LabelId label = -1;
  std::vector<std::pair<Word, DecTree>> children;

  static DecTree X(Word n);
  static DecTree node(LabelId l, std::vector<std::pair<Word, DecTree>> children = {});
  void normalize();
  unsigned size() const;  // number of vertices, leaves included
  KWord fertility() const;  // sum of e_m over children
  std::string str() const;

  friend bool operator==(const DecTree&, const DecTree&) = default;
};
bool operator<(const DecTree& a, const DecTree& b);

using TreeCombo = std::map<DecTree, Rational>;
void accumulate(TreeCombo& c, const DecTree& t, const Rational& q);

// sigma grafted onto tau with edge decoration n
TreeCombo graft(const DecTree& sigma, const Word& n, const DecTree& tau);
TreeCombo graft(const DecTree& sigma, const Word& n, const TreeCombo& tau);
// node derivative; n ranges over the words an admissible node can carry
TreeCombo up(const Structure& S, int axis, const DecTree& tau);
TreeCombo up(const Structure& S, int axis, const TreeCombo& tau);
bool tree_admissible(const Structure& S, const DecTree& t);

// fold onto multi-index monomials: Psi[tau] = coefficient * z^beta
std::pair<Rational, MultiIndex> psi(const DecTree& t);

// "Xi(l; I[m](subtree), ...)" / "X[n]"; words as comma lists, "0" = zero
DecTree parse_tree(const std::string& text, int d);

}  // namespace mir
