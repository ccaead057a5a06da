#pragma once
#include <functional>
#include <memory>
#include <mutex>
#include <random>

#include "mir/enumerate.hpp"
#include "mir/enveloping.hpp"
#include "mir/errors.hpp"

namespace mir {

// Multiplicative functional on the envelope, given by its values on the
// generators z^gamma D^(n) (gamma in N) and bd_i.  Values are produced on
// demand so that characters built from others stay lazy.
template <class R>
struct Character {
  Flavor flavor = Flavor::Minus;
  std::function<R(const MultiIndex&, const Word&)> pair;
  std::vector<R> axis;

  R at(const MultiIndex& g, const Word& n) const { return pair ? pair(g, n) : R(0); }
  R axis_value(int i) const { return i < (int)axis.size() ? axis[i] : R(0); }

  // f^(J,m) = prod f_i^m(i) prod f_(g,n)^J(g,n)
  R power(const GLIndex& x) const {
    R r(1);
    for (int i = 0; i < (int)x.m.size(); ++i)
      for (int k = 0; k < x.m[i]; ++k) r = r * axis_value(i);
    for (auto& [e, c] : x.J) {
      R v = at(e.first, e.second);
      for (unsigned k = 0; k < c; ++k) r = r * v;
    }
    return r;
  }
  // f^(0,m)
  R axis_power(const Word& m) const { return power(GLIndex::axes(m)); }
};

template <class R>
Character<R> counit(Flavor f, int d) {
  Character<R> c;
  c.flavor = f;
  c.axis.assign(d, R(0));
  return c;
}

// Pseudo-random rational character, reproducible from the seed; values
// depend only on (gamma, n, seed).
inline Character<Rational> random_character(const Structure& S, Flavor f, std::uint64_t seed, int range = 3) {
  Character<Rational> c;
  c.flavor = f;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-range, range), den(1, range);
  for (int i = 0; i < S.d(); ++i) c.axis.push_back(Rational(num(rng), den(rng)));
  c.pair = [seed, range](const MultiIndex& g, const Word& n) {
    std::mt19937_64 r(hash_combine(hash_combine(seed, g.hash()), word_hash(n)));
    std::uniform_int_distribution<int> a(-range, range), b(1, range);
    Rational q(a(r), b(r));
    q.canonicalize();
    return q;
  };
  for (auto& q : c.axis) q.canonicalize();
  return c;
}

// (Gamma_f^*)_beta^gamma = sum_x f^x (D_x)_beta^gamma over the finitely
// many labels x that can connect gamma to beta.
template <class R>
R gamma_entry(const Envelope& E, const Character<R>& f, const MultiIndex& beta, const MultiIndex& gamma) {
  const Structure& S = E.structure();
  if (!S.in_PNbar(beta) || !S.in_PNbar(gamma)) return R(0);
  R acc(0);
  for (auto& x : candidate_labels(E, beta, gamma)) {
    Rational a = E.action_coeff(x, beta, gamma);
    if (is_zero(a)) continue;
    R p = f.power(x);
    if (is_zero(p)) continue;
    acc = acc + p * R(a);
  }
  return acc;
}

// f^(n) as a series, restricted to monomials below `bound`
template <class R>
Series<R> f_series(const Structure& S, const Character<R>& f, const Word& n, const MultiIndex& bound) {
  Series<R> out;
  const Hom eta = S.spec().eta;
  // sub-multi-indices of bound in N
  auto ent = bound.entries();
  MultiIndex cur;
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == ent.size()) {
      if (cur.empty() || !S.in_N(cur)) return;
      Hom lim = eta;
      if (f.flavor == Flavor::Plus) lim += S.homogeneity(cur);
      if (!(S.scaled_degree(n) < lim)) return;
      accumulate(out, cur, f.at(cur, n));
      return;
    }
    for (unsigned k = 0; k <= ent[i].second; ++k) {
      rec(i + 1);
      cur.add(ent[i].first);
    }
    cur.remove(ent[i].first, ent[i].second + 1);
  };
  rec(0);
  for (auto& [c, cnt] : ent) {
    const Coord& x = coord(c);
    if (!x.poly || !word_le(n, x.n) || x.n == n) continue;
    Word diff = word_sub(x.n, n);
    Rational b = 1;
    for (size_t i = 0; i < n.size(); ++i) b *= binomial(x.n[i], n[i]);
    accumulate(out, MultiIndex::unit(c), R(f.axis_power(diff) * R(b)));
  }
  return out;
}

// Independent evaluation through sum_K (1/K!) f^K D^K z^gamma.  With
// any_column the column may be an arbitrary monomial (e.g. a bare z_(l,k))
// and the row is not required to be populated either.
template <class R>
R gamma_via_exponential(const Structure& S, const Character<R>& f, const MultiIndex& beta, const MultiIndex& gamma,
                        unsigned order = 12, bool any_column = false) {
  if (!any_column && (!S.in_PNbar(beta) || !S.in_PNbar(gamma))) return R(0);
  unsigned polys = 0;
  std::vector<Word> words(S.low_words());
  for (auto& [c, cnt] : gamma.entries())
    if (coord(c).poly) {
      polys += cnt;
      if (std::find(words.begin(), words.end(), coord(c).n) == words.end()) words.push_back(coord(c).n);
    }
  long L = (long)beta.length() - (long)gamma.length() + (long)polys;
  if (L < 0) return R(0);
  if ((unsigned long)L > order) throw OrderTooSmall("exponential formula needs order " + std::to_string(L));

  std::vector<Series<R>> fs;
  for (auto& n : words) fs.push_back(f_series(S, f, n, beta));

  R acc(0);
  // multisets K over words with |K| <= L
  std::vector<unsigned> K(words.size(), 0);
  std::function<void(size_t, unsigned, const Series<Rational>&, Series<R>, Rational)> rec =
      [&](size_t i, unsigned used, const Series<Rational>& dz, Series<R> fk, Rational kfact) {
        if (i == words.size()) {
          Series<R> dzr;
          for (auto& [m, v] : dz) dzr.emplace(m, R(v));
          auto prod = multiply_below(fk, dzr, beta);
          R c = coefficient(prod, beta);
          if (!is_zero(c)) acc = acc + c * R(Rational(1) / kfact);
          return;
        }
        Series<Rational> cur = dz;
        Series<R> fcur = fk;
        for (unsigned k = 0;; ++k) {
          rec(i + 1, used + k, cur, fcur, kfact * factorial(k));
          if (used + k + 1 > (unsigned)L || cur.empty()) break;
          Series<Rational> nxt;
          for (auto& [m, v] : cur) apply_D(&S, words[i], m, v, nxt);
          cur.swap(nxt);
          fcur = multiply_below(fcur, fs[i], beta);
          if (fcur.empty()) break;
        }
      };
  Series<Rational> z;
  z.emplace(gamma, Rational(1));
  Series<R> one;
  one.emplace(MultiIndex(), R(1));
  rec(0, 0, z, one, Rational(1));
  return acc;
}

// Homogeneity-sorted N-elements with |.| up to and including h.
class NCatalog {
 public:
  explicit NCatalog(const Structure& S) : S_(S) {}
  const std::vector<MultiIndex>& upto(const Hom& h) const {
    std::lock_guard lk(mu_);
    auto key = h.str();
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Hom cap(h.base, h.kappa + 1);
    auto v = enumerate_below(S_, cap, PopClass::N);
    std::vector<MultiIndex> keep;
    for (auto& b : v)
      if (S_.homogeneity(b) <= h) keep.push_back(b);
    return cache_.emplace(key, std::move(keep)).first->second;
  }

 private:
  const Structure& S_;
  mutable std::mutex mu_;
  mutable std::map<std::string, std::vector<MultiIndex>> cache_;
};

namespace detail {
template <class R>
struct Memo {
  std::mutex mu;
  std::map<std::pair<MultiIndex, Word>, R> vals;
};
}  // namespace detail

// (p*s)_gamma^(n) = sum_{g'} (Gamma_p)_gamma^{g'} s_{g'}^(n) + sum_m binom(n+m,n) p_gamma^(n+m) s^(0,m)
template <class R>
Character<R> convolve_plus(const Envelope& Eplus, const NCatalog& cat, const Character<R>& p, const Character<R>& s) {
  const Structure& S = Eplus.structure();
  Character<R> out;
  out.flavor = Flavor::Plus;
  for (int i = 0; i < S.d(); ++i) out.axis.push_back(p.axis_value(i) + s.axis_value(i));
  auto memo = std::make_shared<detail::Memo<R>>();
  out.pair = [&Eplus, &cat, &S, p, s, memo](const MultiIndex& g, const Word& n) -> R {
    {
      std::lock_guard lk(memo->mu);
      auto it = memo->vals.find({g, n});
      if (it != memo->vals.end()) return it->second;
    }
    R acc(0);
    const Hom hg = S.homogeneity(g);
    for (auto& gp : cat.upto(hg)) {
      if (!(S.scaled_degree(n) < S.spec().eta + S.homogeneity(gp))) continue;
      R a = gamma_entry(Eplus, p, g, gp);
      if (!is_zero(a)) acc = acc + a * s.at(gp, n);
    }
    // polynomial re-expansion part
    const Hom lim = S.spec().eta + hg;
    Word m(S.d(), 0);
    std::function<void(int)> rec = [&](int a) {
      if (a == S.d()) {
        Word nm = word_add(n, m);
        if (!(S.scaled_degree(nm) < lim)) return;
        Rational b = 1;
        for (int i = 0; i < S.d(); ++i) b *= binomial(nm[i], n[i]);
        acc = acc + R(b) * p.at(g, nm) * s.axis_power(m);
        return;
      }
      for (m[a] = 0; S.scaled_degree(word_add(n, m)) < lim; ++m[a]) rec(a + 1);
      m[a] = 0;
    };
    rec(0);
    std::lock_guard lk(memo->mu);
    memo->vals.emplace(std::pair{g, n}, acc);
    return acc;
  };
  return out;
}

// plus acting on minus: (p*f)_gamma^(n) = sum_{g'} (Gamma_p)_gamma^{g'} f_{g'}^(n) + sum_{m>n} binom(m,n) p_gamma^(m) f^(0,m-n)
template <class R>
Character<R> convolve_mixed(const Envelope& Eplus, const NCatalog& cat, const Character<R>& p, const Character<R>& f) {
  const Structure& S = Eplus.structure();
  Character<R> out;
  out.flavor = Flavor::Minus;
  for (int i = 0; i < S.d(); ++i) out.axis.push_back(p.axis_value(i) + f.axis_value(i));
  auto memo = std::make_shared<detail::Memo<R>>();
  out.pair = [&Eplus, &cat, &S, p, f, memo](const MultiIndex& g, const Word& n) -> R {
    {
      std::lock_guard lk(memo->mu);
      auto it = memo->vals.find({g, n});
      if (it != memo->vals.end()) return it->second;
    }
    R acc(0);
    const Hom hg = S.homogeneity(g);
    if (S.scaled_degree(n) < S.spec().eta) {
      for (auto& gp : cat.upto(hg)) {
        R a = gamma_entry(Eplus, p, g, gp);
        if (!is_zero(a)) acc = acc + a * f.at(gp, n);
      }
    }
    const Hom lim = S.spec().eta + hg;
    Word m(S.d(), 0);
    std::function<void(int)> rec = [&](int a) {
      if (a == S.d()) {
        if (!word_le(n, m)) return;
        Word diff = word_sub(m, n);
        Rational b = 1;
        for (int i = 0; i < S.d(); ++i) b *= binomial(m[i], n[i]);
        acc = acc + R(b) * p.at(g, m) * f.axis_power(diff);
        return;
      }
      for (m[a] = 0; S.scaled_degree(m) < lim; ++m[a]) rec(a + 1);
      m[a] = 0;
    };
    rec(0);
    std::lock_guard lk(memo->mu);
    memo->vals.emplace(std::pair{g, n}, acc);
    return acc;
  };
  return out;
}

// q with p*q = counit, solved level by level in the homogeneity grading
template <class R>
Character<R> invert_plus(const Envelope& Eplus, const NCatalog& cat, const Character<R>& p) {
  const Structure& S = Eplus.structure();
  auto self = std::make_shared<Character<R>>();
  self->flavor = Flavor::Plus;
  for (int i = 0; i < S.d(); ++i) self->axis.push_back(R(0) - p.axis_value(i));
  auto memo = std::make_shared<detail::Memo<R>>();
  std::weak_ptr<Character<R>> weak = self;
  self->pair = [&Eplus, &cat, &S, p, memo, weak](const MultiIndex& g, const Word& n) -> R {
    {
      std::lock_guard lk(memo->mu);
      auto it = memo->vals.find({g, n});
      if (it != memo->vals.end()) return it->second;
    }
    auto q = weak.lock();
    R acc(0);
    const Hom hg = S.homogeneity(g);
    for (auto& gp : cat.upto(hg)) {
      if (gp == g) continue;
      if (!(S.scaled_degree(n) < S.spec().eta + S.homogeneity(gp))) continue;
      R a = gamma_entry(Eplus, p, g, gp);
      if (!is_zero(a)) acc = acc + a * q->at(gp, n);
    }
    const Hom lim = S.spec().eta + hg;
    Word m(S.d(), 0);
    std::function<void(int)> rec = [&](int a) {
      if (a == S.d()) {
        if (word_length(m) == 0) return;
        Word nm = word_add(n, m);
        if (!(S.scaled_degree(nm) < lim)) return;
        Rational b = 1;
        for (int i = 0; i < S.d(); ++i) b *= binomial(nm[i], n[i]);
        acc = acc + R(b) * p.at(g, nm) * q->axis_power(m);
        return;
      }
      for (m[a] = 0; S.scaled_degree(word_add(n, m)) < lim; ++m[a]) rec(a + 1);
      m[a] = 0;
    };
    rec(0);
    acc = acc + p.at(g, n);
    R v = R(0) - acc;
    std::lock_guard lk(memo->mu);
    memo->vals.emplace(std::pair{g, n}, v);
    return v;
  };
  // the closure only holds a weak reference; keep the object alive via a
  // copy that owns the shared state
  Character<R> out = *self;
  auto keep = self;
  auto inner = out.pair;
  out.pair = [keep, inner](const MultiIndex& g, const Word& n) { return inner(g, n); };
  return out;
}

// Truncated matrix of Gamma_f^* on rows/cols from `set`
template <class R>
std::map<std::pair<MultiIndex, MultiIndex>, R> gamma_matrix(const Envelope& E, const Character<R>& f,
                                                            const std::vector<MultiIndex>& set) {
  std::map<std::pair<MultiIndex, MultiIndex>, R> M;
  for (auto& b : set)
    for (auto& g : set) {
      R v = gamma_entry(E, f, b, g);
      if (!is_zero(v)) M.emplace(std::pair{b, g}, v);
    }
  return M;
}

}  // namespace mir
