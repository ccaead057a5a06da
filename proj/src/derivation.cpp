#include "mir/derivation.hpp"

#include <set>

#include "mir/errors.hpp"

namespace mir {

void apply_D(const Structure* S, const Word& n, const MultiIndex& g, const Rational& scale,
             Series<Rational>& out) {
  for (auto& [c, cnt] : g.entries()) {
    const Coord& x = coord(c);
    if (x.poly) {
      if (x.n != n) continue;
      MultiIndex r = g;
      r.remove(c);
      accumulate(out, r, Rational(scale * cnt));
      continue;
    }
    CoordId y;
    if (S) {
      auto s = S->shift_pair(c, n);
      if (!s) continue;
      y = *s;
    } else {
      y = intern(Coord::pair(x.label, x.k.plus(n)));
    }
    MultiIndex r = g;
    r.remove(c);
    r.add(y);
    accumulate(out, r, Rational(scale * cnt * (x.k[n] + 1)));
  }
}

const Column& Derivations::cached(Key key) const {
  {
    std::lock_guard lk(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  Column col;
  if (S_.in_PNbar(key.g)) {
    Series<Rational> acc;
    if (key.axis < 0) {
      Series<Rational> raw;
      apply_D(&S_, key.n, key.g, 1, raw);
      for (auto& [m, v] : raw) accumulate(acc, m.plus(key.gp), v);
    } else {
      // bd_i = sum_n (n(i)+1) z_{n+e_i} D^(n); only |n| < eta can hit a pair,
      // and a polynomial z_n of gamma is hit by its own n
      std::set<Word> ns(S_.low_words().begin(), S_.low_words().end());
      for (auto& [c, cnt] : key.g.entries())
        if (coord(c).poly) ns.insert(coord(c).n);
      for (auto& n : ns) {
        Series<Rational> raw;
        apply_D(&S_, n, key.g, n[key.axis] + 1, raw);
        CoordId z = S_.poly_coord(word_add(n, unit_word(S_.d(), key.axis)));
        for (auto& [m, v] : raw) {
          MultiIndex r = m;
          r.add(z);
          accumulate(acc, r, v);
        }
      }
    }
    for (auto& [m, v] : acc)
      if (S_.in_PNbar(m)) col.emplace_back(m, v);
    std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  }
  std::lock_guard lk(mu_);
  return cache_.emplace(std::move(key), std::move(col)).first->second;
}

const Column& Derivations::deriv_column(const MultiIndex& gp, const Word& np, const MultiIndex& g) const {
  return cached(Key{gp, np, g, -1});
}

const Column& Derivations::dpartial_column(int axis, const MultiIndex& g) const {
  if (axis < 0 || axis >= S_.d()) throw Error("axis out of range");
  return cached(Key{{}, {}, g, axis});
}

static Rational lookup(const Column& c, const MultiIndex& b) {
  auto it = std::lower_bound(c.begin(), c.end(), b, [](const auto& e, const MultiIndex& x) { return e.first < x; });
  return it != c.end() && it->first == b ? it->second : Rational(0);
}

Rational Derivations::deriv_coeff(const MultiIndex& gp, const Word& np, const MultiIndex& b,
                                  const MultiIndex& g) const {
  if (!S_.in_PNbar(b)) return 0;
  return lookup(deriv_column(gp, np, g), b);
}

Rational Derivations::dpartial_coeff(int axis, const MultiIndex& b, const MultiIndex& g) const {
  if (!S_.in_PNbar(b)) return 0;
  return lookup(dpartial_column(axis, g), b);
}

// ------------------------------------------------------------ generators

std::string Generator::str() const {
  if (poly) return "bd_" + std::to_string(axis + 1);
  return "z^{" + gamma.str() + "}D^" + word_str(n);
}

bool operator<(const Generator& a, const Generator& b) {
  if (a.poly != b.poly) return a.poly;  // bd's first
  if (a.poly) return a.axis < b.axis;
  if (a.gamma != b.gamma) return canonical_less(a.gamma, b.gamma);
  return a.n < b.n;
}

void accumulate(GenCombo& c, const Generator& g, const Rational& v) {
  if (is_zero(v)) return;
  auto [it, fresh] = c.try_emplace(g, v);
  if (!fresh) {
    it->second += v;
    if (is_zero(it->second)) c.erase(it);
  }
}

GenCombo& operator+=(GenCombo& a, const GenCombo& b) {
  for (auto& [g, v] : b) accumulate(a, g, v);
  return a;
}

GenCombo scaled(const GenCombo& a, const Rational& q) {
  GenCombo r;
  for (auto& [g, v] : a) accumulate(r, g, v * q);
  return r;
}

bool in_minus(const Structure& S, const Generator& g) {
  return !g.poly && S.scaled_degree(g.n) < S.spec().eta;
}
bool in_plus(const Structure& S, const Generator& g) {
  return !g.poly && S.scaled_degree(g.n) < S.spec().eta + S.homogeneity(g.gamma);
}

Column generator_column(const Derivations& D, const Generator& g, const MultiIndex& gamma) {
  return g.poly ? D.dpartial_column(g.axis, gamma) : D.deriv_column(g.gamma, g.n, gamma);
}

GenCombo prelie(const Derivations& D, const Generator& a, const Generator& b) {
  const Structure& S = D.structure();
  GenCombo r;
  if (a.poly && b.poly) throw UndefinedPreLie("bd_i |> bd_j is not in the span of the generators");
  if (b.poly) {
    // z^g D^(n) |> bd_i = n(i) z^g D^(n - e_i)
    if (a.n[b.axis] > 0) {
      Word m = a.n;
      --m[b.axis];
      accumulate(r, Generator::deriv(a.gamma, m), Rational(a.n[b.axis]));
    }
    return r;
  }
  // a acts on the coefficient z^gamma of b
  for (auto& [beta, v] : generator_column(D, a, b.gamma))
    if (S.in_N(beta)) accumulate(r, Generator::deriv(beta, b.n), v);
  return r;
}

GenCombo lie_bracket(const Derivations& D, const Generator& a, const Generator& b) {
  if (a.poly && b.poly) return {};
  GenCombo r = prelie(D, a, b);
  r += scaled(prelie(D, b, a), -1);
  return r;
}

GenCombo prelie(const Derivations& D, const GenCombo& a, const GenCombo& b) {
  GenCombo r;
  for (auto& [ga, va] : a)
    for (auto& [gb, vb] : b) r += scaled(prelie(D, ga, gb), va * vb);
  return r;
}

GenCombo lie_bracket(const Derivations& D, const GenCombo& a, const GenCombo& b) {
  GenCombo r;
  for (auto& [ga, va] : a)
    for (auto& [gb, vb] : b) r += scaled(lie_bracket(D, ga, gb), va * vb);
  return r;
}

}  // namespace mir
