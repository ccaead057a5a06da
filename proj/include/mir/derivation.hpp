#pragma once
#include <map>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "mir/series.hpp"
#include "mir/structure.hpp"

namespace mir {

using Column = std::vector<std::pair<MultiIndex, Rational>>;

// D^(n) applied to z^gamma as a plain derivation:
//   D^(n) z_(l,k) = (k(n)+1) z_(l,k+e_n),  D^(n) z_m = delta_{m,n}.
// With S given, non-admissible pairs are set to zero; with S == nullptr the
// derivation is the free one (used for trees).
void apply_D(const Structure* S, const Word& n, const MultiIndex& g, const Rational& scale,
             Series<Rational>& out);

// Coefficients of the generators on the populated sector P u Nbar, with
// the projection applied to both rows and columns.
class Derivations {
 public:
  explicit Derivations(const Structure& S) : S_(S) {}
  const Structure& structure() const { return S_; }

  // column of z^{g'} D^{(n')}:  z^gamma -> sum_beta coeff z^beta
  const Column& deriv_column(const MultiIndex& gp, const Word& np, const MultiIndex& g) const;
  // column of bd_i
  const Column& dpartial_column(int axis, const MultiIndex& g) const;

  Rational deriv_coeff(const MultiIndex& gp, const Word& np, const MultiIndex& b,
                       const MultiIndex& g) const;
  Rational dpartial_coeff(int axis, const MultiIndex& b, const MultiIndex& g) const;

 private:
  const Structure& S_;
  struct Key {
    MultiIndex gp;
    Word n;
    MultiIndex g;
    int axis;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    size_t operator()(const Key& k) const {
      return hash_combine(hash_combine(k.gp.hash(), word_hash(k.n)), hash_combine(k.g.hash(), k.axis));
    }
  };
  mutable std::mutex mu_;
  mutable std::unordered_map<Key, Column, KeyHash> cache_;
  const Column& cached(Key key) const;
};

// Elements of the generating set: z^gamma D^(n) (gamma in N) or bd_i.
struct Generator {
  bool poly = false;
  int axis = -1;
  MultiIndex gamma;
  Word n;

  static Generator deriv(MultiIndex g, Word n) { return Generator{false, -1, std::move(g), std::move(n)}; }
  static Generator dpartial(int i) { return Generator{true, i, {}, {}}; }
  bool operator==(const Generator&) const = default;
  std::string str() const;
};
bool operator<(const Generator& a, const Generator& b);

using GenCombo = std::map<Generator, Rational>;
void accumulate(GenCombo& c, const Generator& g, const Rational& v);
GenCombo& operator+=(GenCombo& a, const GenCombo& b);
GenCombo scaled(const GenCombo& a, const Rational& q);

bool in_minus(const Structure& S, const Generator& g);  // |n| < eta
bool in_plus(const Structure& S, const Generator& g);   // |n| < eta + |gamma|

GenCombo prelie(const Derivations& D, const Generator& a, const Generator& b);
GenCombo lie_bracket(const Derivations& D, const Generator& a, const Generator& b);
GenCombo prelie(const Derivations& D, const GenCombo& a, const GenCombo& b);
GenCombo lie_bracket(const Derivations& D, const GenCombo& a, const GenCombo& b);

// the column of a generator acting on z^gamma
Column generator_column(const Derivations& D, const Generator& g, const MultiIndex& gamma);

}  // namespace mir
