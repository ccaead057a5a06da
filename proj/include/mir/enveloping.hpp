#pragma once
#include <map>
#include <mutex>
#include <unordered_map>

#include "mir/derivation.hpp"

namespace mir {

enum class Flavor { Minus, Plus };

// Label (J, m) of the order-independent basis element D_(J,m): J is a
// multiset of pairs (gamma in N, n), m a word of bd exponents.
struct GLIndex {
  using Gen = std::pair<MultiIndex, Word>;
  std::vector<std::pair<Gen, unsigned>> J;  // sorted by Gen (storage order)
  Word m;

  static GLIndex unit(int d) { return GLIndex{{}, Word(d, 0)}; }
  static GLIndex single(const MultiIndex& g, const Word& n, int d);
  static GLIndex axes(const Word& m) { return GLIndex{{}, m}; }

  unsigned count(const Gen& e) const;
  GLIndex plus(const Gen& e, unsigned c = 1) const;
  GLIndex minus(const Gen& e) const;  // requires count(e) > 0
  bool J_empty() const { return J.empty(); }
  bool is_unit() const { return J.empty() && word_length(m) == 0; }
  unsigned length() const;  // |J| + |m|
  Rational factorial() const;  // J! m!
  // canonically smallest generator of J
  const Gen& smallest() const;

  bool operator==(const GLIndex&) const = default;
  size_t hash() const;
  std::string str() const;
};
bool operator<(const GLIndex& a, const GLIndex& b);
struct GLIndexHash {
  size_t operator()(const GLIndex& x) const { return x.hash(); }
};

using GLCombo = std::map<GLIndex, Rational>;
void accumulate(GLCombo& c, const GLIndex& x, const Rational& v);

class Envelope {
 public:
  Envelope(const Derivations& D, Flavor f);
  const Derivations& derivations() const { return D_; }
  const Structure& structure() const { return D_.structure(); }
  Flavor flavor() const { return flavor_; }

  bool valid_gen(const MultiIndex& g, const Word& n) const;
  bool valid(const GLIndex& x) const;
  Hom degree(const GLIndex& x) const;  // |(J,m)|

  // rho(D_x) z^gamma, by peeling generators (memoized)
  const Series<Rational>& column(const GLIndex& x, const MultiIndex& gamma) const;
  // independent closed form: (1/(J! m!)) z^{sum J gamma} bd^m prod D^(n)^J z^gamma
  Series<Rational> column_closed(const GLIndex& x, const MultiIndex& gamma) const;
  Rational action_coeff(const GLIndex& x, const MultiIndex& beta, const MultiIndex& gamma) const;

  std::vector<std::pair<GLIndex, GLIndex>> coproduct(const GLIndex& x) const;
  Rational rank_one_product_coeff(const GLIndex& xp, const GLIndex& xpp, const MultiIndex& g,
                                  const Word& n) const;

  // basis expansion of D_{x'} D_{x''}; labels longer than max_length throw
  GLCombo product(const GLIndex& xp, const GLIndex& xpp, unsigned max_length = 8) const;
  GLCombo right_mul(const GLCombo& u, const Generator& g, unsigned max_length = 8) const;
  // rho of a combination applied to z^gamma
  Series<Rational> apply(const GLCombo& u, const MultiIndex& gamma) const;

 private:
  const Derivations& D_;
  Flavor flavor_;
  int d_;

  Series<Rational> apply_gen(const Generator& g, const Series<Rational>& v) const;
  GLCombo right_mul_basis(const GLIndex& x, const Generator& g, unsigned max_length) const;

  struct ColKey {
    GLIndex x;
    MultiIndex g;
    bool operator==(const ColKey&) const = default;
  };
  struct ColHash {
    size_t operator()(const ColKey& k) const { return hash_combine(k.x.hash(), k.g.hash()); }
  };
  mutable std::recursive_mutex mu_;
  mutable std::unordered_map<ColKey, Series<Rational>, ColHash> cols_;
  struct PairKey {
    GLIndex a, b;
    bool operator==(const PairKey&) const = default;
  };
  struct PairHash {
    size_t operator()(const PairKey& k) const { return hash_combine(k.a.hash(), k.b.hash()); }
  };
  mutable std::unordered_map<PairKey, GLCombo, PairHash> prods_;
};

// all GLIndex x of the flavor with rho(D_x) possibly nonzero from gamma to
// beta: J supported on N-elements below beta, m fixed by the grading
std::vector<GLIndex> candidate_labels(const Envelope& E, const MultiIndex& beta, const MultiIndex& gamma);

}  // namespace mir
