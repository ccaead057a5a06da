#pragma once
#include <optional>
#include <string>
#include <vector>

#include "mir/characters.hpp"
#include "mir/symexpr.hpp"

namespace mir {

// Everything needed to write down model equations for one spec.
class ModelContext {
 public:
  explicit ModelContext(const Structure& S);
  const Structure& structure() const { return S_; }
  const Derivations& derivations() const { return D_; }
  const Envelope& minus() const { return Em_; }
  const Envelope& plus() const { return Ep_; }
  // f_gamma^(n) = (1/n!) d^n Pi_gamma, f_i = X_i
  const Character<SymExpr>& model_character() const { return pi_; }

 private:
  const Structure& S_;
  Derivations D_;
  Envelope Em_, Ep_;
  Character<SymExpr> pi_;
};

// r.h.s. of the model equation for beta in N; with constants, the shift
// sum_gamma c_gamma z^gamma enters through the same Gamma map
SymExpr model_rhs(const ModelContext& M, const MultiIndex& beta,
                  const std::vector<MultiIndex>* constants = nullptr);
// the same r.h.s. (without constants) as a direct sum over partitions of beta
SymExpr model_rhs_partitions(const Structure& S, const MultiIndex& beta);

// z_(l,k)[a,u] = (1/k!) d^k a^l, in terms of Func / Param / Sol atoms;
// with drop_odd, summands odd under the spatial reflections are removed
SymExpr nonlinearity_expr(const Structure& S, LabelId l, const KWord& k, bool drop_odd = false);
SymExpr monomial_expr(const Structure& S, const MultiIndex& beta, bool drop_odd = false);
// the equation's own r.h.s.  sum_l a^l xi_l
SymExpr equation_rhs(const Structure& S, bool drop_odd = false);

struct Identification {
  MultiIndex beta;
  Rational ratio;
  MultiIndex target;  // Pi_beta = ratio * Pi_target
};
std::vector<Identification> detect_redundancies(const ModelContext& M, const std::vector<MultiIndex>& set);

struct RenormFlags {
  bool spatial = false;
  bool noise_even = false;
  bool merge = false;
};

struct RenormalizedEquation {
  std::vector<MultiIndex> counterterms;  // after the symmetry filter
  std::vector<Identification> merged;    // constants expressed through others
  std::vector<MultiIndex> constants;     // surviving constants
  SymExpr base;                          // sum_l a^l xi_l
  // per surviving constant: coefficient functional multiplying c_beta
  std::vector<std::pair<MultiIndex, SymExpr>> terms;
  // model equations fixing the surviving constants
  std::vector<std::pair<MultiIndex, SymExpr>> model_equations;
  SymExpr full() const;  // base + sum c_beta * term
};

Symmetry symmetry_for(const Structure& S, const RenormFlags& f);
RenormalizedEquation renormalized_equation(const ModelContext& M, const RenormFlags& f);

// homogeneity of a monomial of model atoms (grading check)
std::optional<Hom> atom_homogeneity(const Structure& S, const SymExpr::Mono& m);

}  // namespace mir
