#include "mir/renorm.hpp"

#include <algorithm>
#include <functional>

#include "mir/errors.hpp"

namespace mir {

ModelContext::ModelContext(const Structure& S)
    : S_(S), D_(S), Em_(D_, Flavor::Minus), Ep_(D_, Flavor::Plus) {
  pi_.flavor = Flavor::Minus;
  for (int i = 0; i < S.d(); ++i) pi_.axis.push_back(SymExpr::of(Atom::poly(i)));
  const Structure* sp = &S_;
  pi_.pair = [sp](const MultiIndex& g, const Word& n) -> SymExpr {
    if (!sp->in_N(g) || !(sp->scaled_degree(n) < sp->spec().eta)) return SymExpr();
    Rational nf = 1;
    for (int c : n) nf *= factorial(c);
    return SymExpr::of(Atom::model(n, g)) * Rational(1 / nf);
  };
}

SymExpr model_rhs(const ModelContext& M, const MultiIndex& beta, const std::vector<MultiIndex>* constants) {
  const Structure& S = M.structure();
  if (!S.in_N(beta)) throw NotInN(beta.str() + " is not in N");
  SymExpr out;
  // Poly pieces e_n sitting directly in a slot of word n contribute the
  // constant (1/n!) d^n (y-x)^n = 1.  The increment character leaves them
  // out, so they are put back at the root:
  //   sum_k z_(l,k) (f + z)^k = sum_j z^j Gamma*(z_(l,j)).
  std::vector<std::pair<CoordId, unsigned>> diag;
  for (auto& [c, cnt] : beta.entries()) {
    const Coord& x = coord(c);
    if (!x.poly) continue;
    const auto& lw = S.low_words();
    if (std::find(lw.begin(), lw.end(), x.n) != lw.end()) diag.emplace_back(c, cnt);
  }
  for (auto& nz : S.spec().noises) {
    bool below = false;
    for (auto& [c, cnt] : beta.entries())
      if (!coord(c).poly && coord(c).label == nz.id) below = true;
    if (!below) continue;
    SymExpr v;
    std::function<void(size_t, const KWord&, const MultiIndex&)> rec = [&](size_t i, const KWord& j,
                                                                             const MultiIndex& rest) {
      if (i == diag.size()) {
        MultiIndex col = MultiIndex::unit(S.pair_coord(nz.id, j));
        if (j.length() == 0)  // Gamma never removes pair symbols of a label
          v += gamma_entry(M.minus(), M.model_character(), rest, col);
        else
          v += gamma_via_exponential(S, M.model_character(), rest, col, rest.length() + 1, true);
        return;
      }
      const Word& n = coord(diag[i].first).n;
      KWord j2 = j;
      MultiIndex r2 = rest;
      for (unsigned t = 0; t <= diag[i].second; ++t) {
        if (!S.is_admissible_pair(nz.id, j2)) break;
        rec(i + 1, j2, r2);
        j2 = j2.plus(n);
        r2.remove(diag[i].first, 1);
      }
    };
    if (S.is_admissible_pair(nz.id, KWord())) rec(0, KWord(), beta);
    if (v.is_zero()) continue;
    if (!nz.unit) v *= SymExpr::of(Atom::noise(nz.id));
    out += v;
  }
  // The polynomial coordinates of a counterterm stay at the base point:
  // only its pair part is recentered.
  if (constants)
    for (auto& g : *constants) {
      MultiIndex pairs, polys;
      for (auto& [c, cnt] : g.entries()) (coord(c).poly ? polys : pairs).add(c, cnt);
      SymExpr v;
      if (polys.empty()) {
        v = gamma_entry(M.minus(), M.model_character(), beta, g);
      } else {
        MultiIndex rest;
        if (!beta.minus(polys, rest)) continue;
        v = gamma_via_exponential(S, M.model_character(), rest, pairs, rest.length() + 1, true);
      }
      if (!v.is_zero()) out += v * SymExpr::of(Atom::constant(g));
    }
  return out;
}

SymExpr model_rhs_partitions(const Structure& S, const MultiIndex& beta) {
  if (!S.in_N(beta)) throw NotInN(beta.str() + " is not in N");
  SymExpr out;
  const Hom eta = S.spec().eta;
  for (auto& [c, cnt] : beta.entries()) {
    const Coord& x = coord(c);
    if (x.poly || !S.is_admissible_pair(x.label, x.k)) continue;
    MultiIndex rest;
    beta.minus(MultiIndex::unit(c), rest);
    // slots: one per unit of k(n)
    std::vector<Word> slots;
    for (auto& [n, p] : x.k.terms())
      for (int j = 0; j < p; ++j) slots.push_back(n);
    SymExpr acc;
    std::function<void(size_t, const MultiIndex&, SymExpr)> rec = [&](size_t i, const MultiIndex& left, SymExpr v) {
      if (i == slots.size()) {
        if (left.empty()) acc += v;
        return;
      }
      const Word& n = slots[i];
      // candidate pieces: nonzero sub-multi-indices of `left`
      auto ent = left.entries();
      MultiIndex cur;
      std::function<void(size_t)> pick = [&](size_t a) {
        if (a == ent.size()) {
          if (cur.empty()) return;
          SymExpr piece;
          CoordId pc;
          if (cur.is_unit(&pc) && coord(pc).poly) {
            const Word& m = coord(pc).n;
            if (!word_le(n, m)) return;
            Rational b = 1;
            for (size_t t = 0; t < n.size(); ++t) b *= binomial(m[t], n[t]);
            piece = SymExpr(b);
            for (int t = 0; t < S.d(); ++t)
              if (m[t] - n[t]) piece *= SymExpr::of(Atom::poly(t), m[t] - n[t]);
          } else {
            if (!S.in_N(cur) || !(S.scaled_degree(n) < eta)) return;
            Rational nf = 1;
            for (int q : n) nf *= factorial(q);
            piece = SymExpr::of(Atom::model(n, cur)) * Rational(1 / nf);
          }
          MultiIndex l2;
          left.minus(cur, l2);
          rec(i + 1, l2, v * piece);
          return;
        }
        for (unsigned k = 0; k <= ent[a].second; ++k) {
          pick(a + 1);
          cur.add(ent[a].first);
        }
        cur.remove(ent[a].first, ent[a].second + 1);
      };
      pick(0);
    };
    rec(0, rest, SymExpr(1));
    if (acc.is_zero()) continue;
    const Noise& nz = S.spec().noise(x.label);
    if (!nz.unit) acc *= SymExpr::of(Atom::noise(x.label));
    out += acc;
  }
  return out;
}

namespace {
bool odd_term(const Structure& S, const NonlinTerm& t) {
  for (int ax : S.spec().spatial_axes()) {
    int par = 0;
    for (auto& [n, p] : t.derivs) par += n[ax] * p;
    if (par % 2) return true;
  }
  return false;
}
}  // namespace

SymExpr nonlinearity_expr(const Structure& S, LabelId l, const KWord& k, bool drop_odd) {
  const Noise& nz = S.spec().noise(l);
  if (!nz.nonlinearity) return SymExpr::of(Atom::nonlin(l, k));
  const Word zero = zero_word(S.d());
  SymExpr out;
  for (auto& t : *nz.nonlinearity) {
    if (drop_odd && odd_term(S, t)) continue;
    SymExpr v(t.coef);
    int ku = k[zero];
    if (t.generic()) {
      v *= SymExpr::of(Atom::func(t.fn, ku));
    } else {
      if (ku > t.u_power) continue;
      v *= Rational(factorial(t.u_power) / factorial(t.u_power - ku));
      if (!t.param.empty()) v *= SymExpr::of(Atom::param(t.param));
      if (t.u_power - ku) v *= SymExpr::of(Atom::sol(zero), t.u_power - ku);
    }
    bool dead = false;
    for (auto& [n, c] : k.terms())
      if (n != zero && t.power_of(n) < c) dead = true;
    if (dead) continue;
    for (auto& [n, p] : t.derivs) {
      int c = k[n];
      v *= Rational(factorial(p) / factorial(p - c));
      if (p - c) v *= SymExpr::of(Atom::sol(n), p - c);
    }
    out += v;
  }
  Rational kf = 1;
  for (auto& [n, c] : k.terms()) kf *= factorial(c);
  return out * Rational(1 / kf);
}

SymExpr monomial_expr(const Structure& S, const MultiIndex& beta, bool drop_odd) {
  SymExpr out(1);
  for (auto& [c, cnt] : beta.entries()) {
    const Coord& x = coord(c);
    SymExpr v;
    if (x.poly) {
      Rational nf = 1;
      for (int q : x.n) nf *= factorial(q);
      v = SymExpr::of(Atom::sol(x.n)) * Rational(1 / nf);
    } else {
      v = nonlinearity_expr(S, x.label, x.k, drop_odd);
    }
    out *= pow(v, cnt);
  }
  return out;
}

SymExpr equation_rhs(const Structure& S, bool drop_odd) {
  SymExpr out;
  for (auto& nz : S.spec().noises) {
    SymExpr a = nonlinearity_expr(S, nz.id, KWord(), drop_odd);
    if (!nz.unit) a *= SymExpr::of(Atom::noise(nz.id));
    out += a;
  }
  return out;
}

namespace {
// replace d^n Pi_beta by ratio * d^n Pi_target for every identification
SymExpr apply_identifications(const SymExpr& e, const std::map<MultiIndex, std::pair<Rational, MultiIndex>>& ids) {
  if (ids.empty()) return e;
  SymExpr out;
  for (auto& [m, q] : e.terms()) {
    SymExpr term(q);
    for (auto& [id, p] : m) {
      const Atom& a = atom(id);
      auto it = a.kind == AtomKind::ModelDeriv ? ids.find(a.g) : ids.end();
      if (it == ids.end())
        term *= SymExpr::of(id, p);
      else
        term *= pow(SymExpr::of(Atom::model(a.n, it->second.second)) * it->second.first, p);
    }
    out += term;
  }
  return out;
}
}  // namespace

std::vector<Identification> detect_redundancies(const ModelContext& M, const std::vector<MultiIndex>& set) {
  const Structure& S = M.structure();
  auto w = default_weights(S.spec());
  std::vector<MultiIndex> order(set);
  std::stable_sort(order.begin(), order.end(), [&](const MultiIndex& a, const MultiIndex& b) {
    Rational pa = precedence(S, a, w), pb = precedence(S, b, w);
    if (pa != pb) return pa < pb;
    return canonical_less(a, b);
  });
  std::map<MultiIndex, std::pair<Rational, MultiIndex>> ids;
  std::vector<std::pair<MultiIndex, SymExpr>> kept;
  std::vector<Identification> out;
  for (auto& b : order) {
    SymExpr r = apply_identifications(model_rhs(M, b), ids);
    bool found = false;
    for (auto& [bp, rp] : kept) {
      auto q = ratio(r, rp);
      if (!q) continue;
      ids.emplace(b, std::pair{*q, bp});
      out.push_back({b, *q, bp});
      found = true;
      break;
    }
    if (!found) kept.push_back({b, std::move(r)});
  }
  return out;
}

Symmetry symmetry_for(const Structure& S, const RenormFlags& f) {
  Symmetry s = S.spec().symmetry;
  if (f.spatial)
    for (int ax : S.spec().spatial_axes())
      if (std::find(s.reflect_axes.begin(), s.reflect_axes.end(), ax) == s.reflect_axes.end())
        s.reflect_axes.push_back(ax);
  if (f.noise_even) s.noise_parity_even = true;
  return s;
}

SymExpr RenormalizedEquation::full() const {
  SymExpr e = base;
  for (auto& [b, t] : terms) e += SymExpr::of(Atom::constant(b)) * t;
  return e;
}

RenormalizedEquation renormalized_equation(const ModelContext& M, const RenormFlags& f) {
  const Structure& S = M.structure();
  Symmetry sym = symmetry_for(S, f);
  bool drop_odd = !sym.reflect_axes.empty();
  RenormalizedEquation eq;
  eq.counterterms = filter_symmetric(S, counterterm_set(S), sym);
  if (f.merge) eq.merged = detect_redundancies(M, eq.counterterms);
  for (auto& b : eq.counterterms) {
    bool gone = std::any_of(eq.merged.begin(), eq.merged.end(), [&](auto& i) { return i.beta == b; });
    if (!gone) eq.constants.push_back(b);
  }
  eq.base = equation_rhs(S, drop_odd);
  for (auto& b : eq.constants) {
    SymExpr t = monomial_expr(S, b, drop_odd);
    for (auto& i : eq.merged)
      if (i.target == b) t += monomial_expr(S, i.beta, drop_odd) * i.ratio;
    eq.terms.push_back({b, t});
  }
  for (auto& b : eq.constants) eq.model_equations.push_back({b, model_rhs(M, b, &eq.constants)});
  return eq;
}

std::optional<Hom> atom_homogeneity(const Structure& S, const SymExpr::Mono& m) {
  Hom h(0);
  for (auto& [id, p] : m) {
    const Atom& a = atom(id);
    Hom x;
    switch (a.kind) {
      case AtomKind::Noise: x = S.spec().noise(a.label).alpha; break;
      case AtomKind::ModelDeriv: x = S.homogeneity(a.g) + S.spec().eta - S.scaled_degree(a.n); break;
      case AtomKind::PolyBase: x = Hom(S.spec().scaling[a.axis]); break;
      case AtomKind::Constant: x = S.homogeneity(a.g); break;
      default: return std::nullopt;
    }
    h += (long)p * x;
  }
  return h;
}

}  // namespace mir
