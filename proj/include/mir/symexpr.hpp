#pragma once
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mir/homogeneity.hpp"
#include "mir/multiindex.hpp"

namespace mir {

// Atoms of the symbolic coefficient ring.  Interned; ids are stable within
// a process, atom_less gives the presentation order.
enum class AtomKind {
  Constant,     // c_gamma
  Param,        // named scalar, e.g. lambda_2
  Func,         // name^(order)(u)
  Sol,          // d^n u
  ModelDeriv,   // d^n Pi_gamma
  PolyBase,     // X_i
  NonlinDeriv,  // z_(l,k) as a functional
  Noise,        // xi_l
};

struct Atom {
  AtomKind kind = AtomKind::Constant;
  LabelId label = 0;
  Word n;
  MultiIndex g;
  KWord k;
  int axis = -1;
  std::string name;
  int order = 0;

  static Atom noise(LabelId l);
  static Atom model(const Word& n, const MultiIndex& g);
  static Atom poly(int axis);
  static Atom constant(const MultiIndex& g);
  static Atom nonlin(LabelId l, const KWord& k);
  static Atom func(const std::string& name, int order);
  static Atom param(const std::string& name);
  static Atom sol(const Word& n);
  std::string key() const;
};

using AtomId = std::uint32_t;
AtomId intern_atom(const Atom& a);
const Atom& atom(AtomId id);
bool atom_less(const Atom& a, const Atom& b);

// Polynomial in atoms with rational coefficients.
class SymExpr {
 public:
  using Mono = std::vector<std::pair<AtomId, unsigned>>;  // sorted by id
  using Terms = std::map<Mono, Rational>;

  SymExpr() = default;
  SymExpr(const Rational& q);
  SymExpr(long q) : SymExpr(Rational(q)) {}
  static SymExpr of(const Atom& a, unsigned power = 1);
  static SymExpr of(AtomId a, unsigned power = 1);

  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  // constant part if the expression has no atoms
  std::optional<Rational> as_rational() const;

  SymExpr& operator+=(const SymExpr& o);
  SymExpr& operator-=(const SymExpr& o);
  SymExpr& operator*=(const SymExpr& o);
  SymExpr& operator*=(const Rational& q);
  friend SymExpr operator+(SymExpr a, const SymExpr& b) { return a += b; }
  friend SymExpr operator-(SymExpr a, const SymExpr& b) { return a -= b; }
  friend SymExpr operator-(SymExpr a) { return a *= Rational(-1); }
  friend SymExpr operator*(const SymExpr& a, const SymExpr& b);
  friend SymExpr operator*(SymExpr a, const Rational& q) { return a *= q; }
  friend SymExpr operator*(const Rational& q, SymExpr a) { return a *= q; }
  friend bool operator==(const SymExpr&, const SymExpr&) = default;

  // substitute atom -> expression
  SymExpr substitute(AtomId a, const SymExpr& by) const;
  // degree in atoms of a given kind
  bool contains(AtomKind k) const;

  void add_term(const Mono& m, const Rational& q);

 private:
  Terms t_;
};

inline bool is_zero(const SymExpr& e) { return e.is_zero(); }
SymExpr pow(const SymExpr& a, unsigned k);
std::optional<Rational> ratio(const SymExpr& a, const SymExpr& b);  // a == q b
SymExpr::Mono mono_mul(const SymExpr::Mono& a, const SymExpr::Mono& b);
// monomials in presentation order (atoms sorted by atom_less inside)
std::vector<std::pair<std::vector<std::pair<AtomId, unsigned>>, Rational>> presentation(const SymExpr& e);

// plain debugging form using raw label names / axis indices
std::string debug_str(const SymExpr& e);

}  // namespace mir
