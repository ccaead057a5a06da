#include "mir/enveloping.hpp"

#include <algorithm>
#include <functional>

#include "mir/errors.hpp"

namespace mir {

// ------------------------------------------------------------ GLIndex

GLIndex GLIndex::single(const MultiIndex& g, const Word& n, int d) {
  GLIndex x = unit(d);
  x.J.push_back({{g, n}, 1});
  return x;
}

unsigned GLIndex::count(const Gen& e) const {
  auto it = std::lower_bound(J.begin(), J.end(), e, [](const auto& t, const Gen& x) { return t.first < x; });
  return it != J.end() && it->first == e ? it->second : 0;
}

GLIndex GLIndex::plus(const Gen& e, unsigned c) const {
  GLIndex r(*this);
  auto it = std::lower_bound(r.J.begin(), r.J.end(), e, [](const auto& t, const Gen& x) { return t.first < x; });
  if (it != r.J.end() && it->first == e)
    it->second += c;
  else
    r.J.insert(it, {e, c});
  return r;
}

GLIndex GLIndex::minus(const Gen& e) const {
  GLIndex r(*this);
  auto it = std::lower_bound(r.J.begin(), r.J.end(), e, [](const auto& t, const Gen& x) { return t.first < x; });
  if (it == r.J.end() || it->first != e) throw Error("GLIndex::minus: generator not present");
  if (--it->second == 0) r.J.erase(it);
  return r;
}

unsigned GLIndex::length() const {
  unsigned s = word_length(m);
  for (auto& t : J) s += t.second;
  return s;
}

Rational GLIndex::factorial() const {
  Rational f = 1;
  for (auto& t : J) f *= mir::factorial(t.second);
  for (int c : m) f *= mir::factorial(c);
  return f;
}

const GLIndex::Gen& GLIndex::smallest() const {
  const Gen* best = &J.at(0).first;
  for (auto& t : J) {
    const Gen& e = t.first;
    if (canonical_less(e.first, best->first) || (e.first == best->first && e.second < best->second)) best = &e;
  }
  return *best;
}

size_t GLIndex::hash() const {
  size_t h = word_hash(m);
  for (auto& [e, c] : J) h = hash_combine(hash_combine(hash_combine(h, e.first.hash()), word_hash(e.second)), c);
  return h;
}

std::string GLIndex::str() const {
  std::string s = "(";
  bool first = true;
  auto v = J;
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    if (a.first.first != b.first.first) return canonical_less(a.first.first, b.first.first);
    return a.first.second < b.first.second;
  });
  for (auto& [e, c] : v) {
    if (!first) s += " + ";
    first = false;
    if (c != 1) s += std::to_string(c);
    s += "e_{" + e.first.str() + ";" + word_str(e.second) + "}";
  }
  if (first) s += "0";
  return s + ", " + word_str(m) + ")";
}

bool operator<(const GLIndex& a, const GLIndex& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  if (a.m != b.m) return a.m < b.m;
  return a.J < b.J;
}

void accumulate(GLCombo& c, const GLIndex& x, const Rational& v) {
  if (is_zero(v)) return;
  auto [it, fresh] = c.try_emplace(x, v);
  if (!fresh) {
    it->second += v;
    if (is_zero(it->second)) c.erase(it);
  }
}

// ------------------------------------------------------------ Envelope

Envelope::Envelope(const Derivations& D, Flavor f) : D_(D), flavor_(f), d_(D.structure().d()) {}

bool Envelope::valid_gen(const MultiIndex& g, const Word& n) const {
  const Structure& S = structure();
  if (!S.in_N(g)) return false;
  Hom bound = S.spec().eta;
  if (flavor_ == Flavor::Plus) bound += S.homogeneity(g);
  return S.scaled_degree(n) < bound;
}

bool Envelope::valid(const GLIndex& x) const {
  if ((int)x.m.size() != d_) return false;
  for (auto& [e, c] : x.J)
    if (!c || !valid_gen(e.first, e.second)) return false;
  return true;
}

Hom Envelope::degree(const GLIndex& x) const {
  const Structure& S = structure();
  Hom h = S.scaled_degree(x.m);
  for (auto& [e, c] : x.J)
    h += (long)c * (S.homogeneity(e.first) + S.spec().eta - S.scaled_degree(e.second));
  return h;
}

Series<Rational> Envelope::apply_gen(const Generator& g, const Series<Rational>& v) const {
  Series<Rational> out;
  for (auto& [m, c] : v)
    for (auto& [b, w] : generator_column(D_, g, m)) accumulate(out, b, Rational(c * w));
  return out;
}

const Series<Rational>& Envelope::column(const GLIndex& x, const MultiIndex& gamma) const {
  std::lock_guard lk(mu_);
  ColKey key{x, gamma};
  auto it = cols_.find(key);
  if (it != cols_.end()) return it->second;

  Series<Rational> out;
  if (!structure().in_PNbar(gamma)) {
    // outside the populated sector everything vanishes
  } else if (x.is_unit()) {
    out.emplace(gamma, 1);
  } else if (x.J_empty()) {
    // D_(0,m) = (1/m!) bd^m: peel one bd
    int i = 0;
    while (x.m[i] == 0) ++i;
    GLIndex y = x;
    --y.m[i];
    Series<Rational> prev = column(y, gamma);
    out = apply_gen(Generator::dpartial(i), prev);
    Rational s = Rational(1, x.m[i]);
    for (auto& [b, c] : out) c *= s;
  } else {
    const GLIndex::Gen e = x.smallest();
    const unsigned j = x.count(e);
    const GLIndex rest = x.minus(e);
    // first term: (1/j) rho(D_rest) (z^g D^(n)) z^gamma
    for (auto& [dlt, c] : D_.deriv_column(e.first, e.second, gamma))
      for (auto& [b, w] : column(rest, dlt)) accumulate(out, b, Rational(c * w / j));
    // correction: split rest = x' + x'' with x' != 0
    for (auto& [xp, xpp] : coproduct(rest)) {
      if (xp.is_unit()) continue;
      for (auto& [bt, a] : column(xp, e.first)) {
        if (!structure().in_N(bt)) continue;
        GLIndex::Gen ebt{bt, e.second};
        GLIndex y = xpp.plus(ebt);
        Rational f = a * (Rational(xpp.count(ebt) + 1) / j);
        for (auto& [b, w] : column(y, gamma)) accumulate(out, b, Rational(-f * w));
      }
    }
  }
  return cols_.emplace(std::move(key), std::move(out)).first->second;
}

namespace {
// bd_i as a plain operator on monomials, without projection
void raw_dpartial(const Structure& S, int axis, const MultiIndex& g, const Rational& c, Series<Rational>& out) {
  std::vector<Word> ns(S.low_words());
  for (auto& [id, cnt] : g.entries())
    if (coord(id).poly && std::find(ns.begin(), ns.end(), coord(id).n) == ns.end()) ns.push_back(coord(id).n);
  for (auto& n : ns) {
    Series<Rational> tmp;
    apply_D(&S, n, g, Rational(c * (n[axis] + 1)), tmp);
    CoordId z = S.poly_coord(word_add(n, unit_word(S.d(), axis)));
    for (auto& [m, v] : tmp) {
      MultiIndex r = m;
      r.add(z);
      accumulate(out, r, v);
    }
  }
}
}  // namespace

Series<Rational> Envelope::column_closed(const GLIndex& x, const MultiIndex& gamma) const {
  const Structure& S = structure();
  Series<Rational> cur;
  if (!S.in_PNbar(gamma)) return cur;
  cur.emplace(gamma, 1);
  MultiIndex prefactor;
  for (auto& [e, c] : x.J)
    for (unsigned r = 0; r < c; ++r) {
      Series<Rational> nxt;
      for (auto& [m, v] : cur) apply_D(&S, e.second, m, v, nxt);
      cur.swap(nxt);
      prefactor = prefactor.plus(e.first);
    }
  for (int i = 0; i < d_; ++i)
    for (int r = 0; r < x.m[i]; ++r) {
      Series<Rational> nxt;
      for (auto& [m, v] : cur) raw_dpartial(S, i, m, v, nxt);
      cur.swap(nxt);
    }
  Series<Rational> out;
  Rational f = 1 / x.factorial();
  for (auto& [m, v] : cur) {
    MultiIndex b = m.plus(prefactor);
    if (S.in_PNbar(b)) accumulate(out, b, Rational(v * f));
  }
  return out;
}

Rational Envelope::action_coeff(const GLIndex& x, const MultiIndex& beta, const MultiIndex& gamma) const {
  if (!structure().in_PNbar(beta)) return 0;
  return coefficient(column(x, gamma), beta);
}

std::vector<std::pair<GLIndex, GLIndex>> Envelope::coproduct(const GLIndex& x) const {
  std::vector<std::pair<GLIndex, GLIndex>> out;
  GLIndex a = GLIndex::unit(d_), b = GLIndex::unit(d_);
  std::function<void(size_t)> rec_m;
  std::function<void(size_t)> rec_j = [&](size_t i) {
    if (i == x.J.size()) return rec_m(0);
    auto& [e, c] = x.J[i];
    for (unsigned k = 0; k <= c; ++k) {
      GLIndex a0 = a, b0 = b;
      if (k) a.J.push_back({e, k});
      if (c - k) b.J.push_back({e, c - k});
      rec_j(i + 1);
      a = a0, b = b0;
    }
  };
  rec_m = [&](size_t i) {
    if ((int)i == d_) return out.emplace_back(a, b), void();
    for (int k = 0; k <= x.m[i]; ++k) {
      a.m[i] = k;
      b.m[i] = x.m[i] - k;
      rec_m(i + 1);
    }
    a.m[i] = b.m[i] = 0;
  };
  rec_j(0);
  return out;
}

Rational Envelope::rank_one_product_coeff(const GLIndex& xp, const GLIndex& xpp, const MultiIndex& g,
                                          const Word& n) const {
  Rational r = 0;
  // x'' = (e_(g',n), 0): coefficient (D_{x'})_g^{g'}
  if (word_length(xpp.m) == 0 && xpp.J.size() == 1 && xpp.J[0].second == 1 && xpp.J[0].first.second == n)
    r += action_coeff(xp, g, xpp.J[0].first.first);
  // J'' = 0 and x' = (e_(g, n+m''), 0)
  if (xpp.J_empty() && word_length(xp.m) == 0 && xp.J.size() == 1 && xp.J[0].second == 1 &&
      xp.J[0].first.first == g && xp.J[0].first.second == word_add(n, xpp.m)) {
    Rational b = 1;
    for (int i = 0; i < d_; ++i) b *= binomial(n[i] + xpp.m[i], xpp.m[i]);
    r += b;
  }
  return r;
}

GLCombo Envelope::right_mul_basis(const GLIndex& x, const Generator& g, unsigned max_length) const {
  GLCombo out;
  if (x.length() + 1 > max_length) throw TruncationExceeded("product label longer than " + std::to_string(max_length));
  if (!g.poly) {
    // D_x z^g D^(n) = sum_{x'+x''=x} sum_b (D_{x'})_b^g (J''(b,n)+1) D_{x''+e_(b,n)}
    for (auto& [xp, xpp] : coproduct(x))
      for (auto& [b, a] : column(xp, g.gamma)) {
        if (!structure().in_N(b)) continue;
        GLIndex::Gen e{b, g.n};
        accumulate(out, xpp.plus(e), Rational(a * (xpp.count(e) + 1)));
      }
    return out;
  }
  const int i = g.axis;
  if (x.J_empty()) {
    GLIndex y = x;
    ++y.m[i];
    accumulate(out, y, Rational(y.m[i]));
    return out;
  }
  // D_x = (1/j) z^g D_rest D^(n); push bd_i through D^(n)
  const GLIndex::Gen e = x.smallest();
  const unsigned j = x.count(e);
  const GLIndex rest = x.minus(e);
  for (auto& [y, c] : right_mul_basis(rest, g, max_length))
    accumulate(out, y.plus(e), Rational(c * (y.count(e) + 1) / j));
  if (e.first.length() && e.second[i] > 0) {
    Word n2 = e.second;
    --n2[i];
    GLIndex::Gen e2{e.first, n2};
    accumulate(out, rest.plus(e2), Rational(Rational(e.second[i]) * (rest.count(e2) + 1) / j));
  }
  return out;
}

GLCombo Envelope::right_mul(const GLCombo& u, const Generator& g, unsigned max_length) const {
  GLCombo out;
  for (auto& [x, c] : u)
    for (auto& [y, v] : right_mul_basis(x, g, max_length)) accumulate(out, y, Rational(c * v));
  return out;
}

GLCombo Envelope::product(const GLIndex& xp, const GLIndex& xpp, unsigned max_length) const {
  {
    std::lock_guard lk(mu_);
    auto it = prods_.find(PairKey{xp, xpp});
    if (it != prods_.end()) return it->second;
  }
  GLCombo out;
  if (xpp.is_unit()) {
    out.emplace(xp, 1);
  } else if (xpp.J_empty()) {
    int i = 0;
    while (xpp.m[i] == 0) ++i;
    GLIndex y = xpp;
    --y.m[i];
    for (auto& [z, c] : right_mul(product(xp, y, max_length), Generator::dpartial(i), max_length))
      accumulate(out, z, Rational(c / xpp.m[i]));
  } else {
    // D_x'' = (1/j) [ D_rest (z^g D^(n)) - sum_{y'+y''=rest, y' != 0} sum_b (D_y')_b^g (J_y''(b,n)+1) D_{y''+e_(b,n)} ]
    const GLIndex::Gen e = xpp.smallest();
    const unsigned j = xpp.count(e);
    const GLIndex rest = xpp.minus(e);
    for (auto& [z, c] : right_mul(product(xp, rest, max_length), Generator::deriv(e.first, e.second), max_length))
      accumulate(out, z, Rational(c / j));
    for (auto& [yp, ypp] : coproduct(rest)) {
      if (yp.is_unit()) continue;
      for (auto& [b, a] : column(yp, e.first)) {
        if (!structure().in_N(b)) continue;
        GLIndex::Gen eb{b, e.second};
        Rational f = a * (ypp.count(eb) + 1) / j;
        for (auto& [z, c] : product(xp, ypp.plus(eb), max_length)) accumulate(out, z, Rational(-f * c));
      }
    }
  }
  std::lock_guard lk(mu_);
  prods_.emplace(PairKey{xp, xpp}, out);
  return out;
}

Series<Rational> Envelope::apply(const GLCombo& u, const MultiIndex& gamma) const {
  Series<Rational> out;
  for (auto& [x, c] : u) accumulate(out, column(x, gamma), c);
  return out;
}

// ------------------------------------------------------------ candidates

std::vector<GLIndex> candidate_labels(const Envelope& E, const MultiIndex& beta, const MultiIndex& gamma) {
  const Structure& S = E.structure();
  const EquationSpec& sp = S.spec();
  std::vector<GLIndex> out;
  const int d = S.d();
  // N-elements below beta
  std::vector<MultiIndex> subs;
  {
    auto ent = beta.entries();
    MultiIndex cur;
    std::function<void(size_t)> rec = [&](size_t i) {
      if (i == ent.size()) {
        if (S.in_N(cur)) subs.push_back(cur);
        return;
      }
      for (unsigned k = 0; k <= ent[i].second; ++k) {
        rec(i + 1);
        cur.add(ent[i].first);
      }
      cur.remove(ent[i].first, ent[i].second + 1);
    };
    rec(0);
  }
  // generators (gt, n) of the flavor
  struct G {
    MultiIndex g;
    Word n;
    Hom deg;
  };
  std::vector<G> gens;
  for (auto& g : subs) {
    Hom bound = sp.eta;
    if (E.flavor() == Flavor::Plus) bound += S.homogeneity(g);
    Word w(d, 0);
    std::function<void(int)> rec = [&](int a) {
      if (a == d) {
        gens.push_back({g, w, S.homogeneity(g) + sp.eta - S.scaled_degree(w)});
        return;
      }
      for (w[a] = 0; S.scaled_degree(w) < bound; ++w[a]) rec(a + 1);
      w[a] = 0;
    };
    rec(0);
  }
  const Hom target = S.homogeneity(beta) - S.homogeneity(gamma);
  GLIndex x = GLIndex::unit(d);
  MultiIndex used;
  std::function<void(size_t, Hom)> rec = [&](size_t i, Hom deg) {
    if (i == gens.size()) {
      Hom rest = target - deg;
      if (sgn(rest.kappa) != 0 || sgn(rest.base) < 0) return;
      // enumerate m with sum m_i s_i = rest
      Word m(d, 0);
      std::function<void(int, Rational)> recm = [&](int a, Rational left) {
        if (a == d) {
          if (sgn(left) == 0) {
            GLIndex y = x;
            y.m = m;
            out.push_back(y);
          }
          return;
        }
        for (m[a] = 0; sp.scaling[a] * m[a] <= left; ++m[a]) recm(a + 1, left - sp.scaling[a] * m[a]);
        m[a] = 0;
      };
      recm(0, rest.base);
      return;
    }
    rec(i + 1, deg);
    const G& g = gens[i];
    const GLIndex save = x;
    const MultiIndex saveu = used;
    for (unsigned k = 1;; ++k) {
      MultiIndex u2 = used.plus(g.g);
      if (!u2.le(beta)) break;
      used = u2;
      x = x.plus({g.g, g.n});
      rec(i + 1, deg + (long)k * g.deg);
    }
    x = save;
    used = saveu;
  };
  rec(0, Hom(0));
  return out;
}

}  // namespace mir
