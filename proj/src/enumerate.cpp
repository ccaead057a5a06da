#include "mir/enumerate.hpp"

#include <algorithm>
#include <functional>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <set>

#include "mir/errors.hpp"

namespace mir {

std::vector<CoordId> admissible_pairs(const Structure& S, LabelId l, unsigned max_k_length) {
  // admissibility is downward closed in k, so grow k one word at a time
  std::vector<CoordId> out;
  const auto& words = S.low_words();
  std::function<void(KWord, size_t, unsigned)> rec = [&](KWord k, size_t from, unsigned len) {
    out.push_back(S.pair_coord(l, k));
    if (len == max_k_length) return;
    for (size_t i = from; i < words.size(); ++i) {
      KWord k2 = k.plus(words[i]);
      if (S.is_admissible_pair(l, k2)) rec(k2, i, len + 1);
    }
  };
  KWord k0;
  if (S.is_admissible_pair(l, k0)) rec(k0, 0, 0);
  return out;
}

void sort_by_homogeneity(const Structure& S, std::vector<MultiIndex>& v) {
  std::vector<std::pair<Hom, MultiIndex>> t;
  for (auto& b : v) t.emplace_back(S.homogeneity(b), b);
  std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return canonical_less(a.second, b.second);
  });
  for (size_t i = 0; i < v.size(); ++i) v[i] = t[i].second;
}

namespace {

struct Sym {
  CoordId id;
  Hom w;  // bracket-adjusted weight, strictly positive
  int b;  // bracket contribution
};

}  // namespace

std::vector<MultiIndex> enumerate_below(const Structure& S, const Hom& cap, PopClass cls,
                                        const EnumOptions& opt) {
  const EquationSpec& sp = S.spec();
  std::vector<MultiIndex> result;

  if (cls == PopClass::P) {
    // e_n with |n| - eta < cap
    Word w(sp.d, 0);
    std::function<void(int)> rec = [&](int axis) {
      if (axis == sp.d) {
        result.push_back(MultiIndex::unit(S.poly_coord(w)));
        return;
      }
      for (w[axis] = 0; sp.scaled_degree(w) - sp.eta < cap; ++w[axis]) rec(axis + 1);
      w[axis] = 0;
    };
    rec(0);
    sort_by_homogeneity(S, result);
    return result;
  }
  if (cls == PopClass::Outside) throw Error("cannot enumerate the complement class");

  // With [beta] = 1 we have |beta| = c + sum_s w'(s) beta(s), c = regsol - eta,
  // where every w' is positive by subcriticality (pairs) or by |n| > regsol
  // (polynomials in the restricted sector) -- see the notes in the README.
  const Hom c = sp.regsol - sp.eta;
  const Hom room = cap - c;
  std::vector<Sym> syms;
  size_t budget = opt.node_budget;
  auto spend = [&]() {
    if (budget-- == 0) throw CapTooLarge("enumeration exceeded the node budget of " +
                                         std::to_string(opt.node_budget));
  };

  for (auto& z : sp.noises) {
    // pairs of this label with w' below the room; weights grow with k up to
    // the subcriticality cut, so a DFS with downward closure terminates
    // w'(l,k) = alpha - regsol + eta + sum_n (regsol - |n|) k(n).  Words with
    // |n| > regsol lower w' but their total effect is bounded below by
    // regsol - eta - reg(l) (subcriticality), so once
    // (alpha - reg) + (growth so far) reaches the room no extension fits.
    const auto& words = S.low_words();
    std::function<void(KWord, size_t, Hom)> rec = [&](KWord k, size_t from, Hom grow) {
      spend();
      if (!(z.alpha - z.reg + grow < room)) return;
      CoordId id = S.pair_coord(z.id, k);
      Hom w = S.coord_homogeneity(id) - (long)(1 - k.length()) * c;
      if (w < room) syms.push_back({id, w, 1 - k.length()});
      for (size_t i = from; i < words.size(); ++i) {
        KWord k2 = k.plus(words[i]);
        if (!S.is_admissible_pair(z.id, k2)) continue;
        Hom step = sp.regsol - sp.scaled_degree(words[i]);
        rec(k2, i, step > Hom(0) ? grow + step : grow);
      }
    };
    if (S.is_admissible_pair(z.id, KWord{})) rec(KWord{}, 0, Hom(0));
  }
  {
    Word w(sp.d, 0);
    std::function<void(int)> rec = [&](int axis) {
      if (axis == sp.d) {
        CoordId id = S.poly_coord(w);
        if (S.info(id).admissible) {
          Hom ww = S.coord_homogeneity(id) - c;
          if (ww < room) syms.push_back({id, ww, 1});
        }
        return;
      }
      for (w[axis] = 0; sp.scaled_degree(w) - sp.regsol < room; ++w[axis]) rec(axis + 1);
      w[axis] = 0;
    };
    rec(0);
  }
  for (auto& s : syms)
    if (!(s.w > Hom(0)))
      throw Error("enumeration: non-positive reduced weight for " + coord(s.id).str());

  if (std::getenv("MIR_ENUM_DEBUG"))
    for (auto& s : syms)
      fprintf(stderr, "sym %s w'=%s b=%d\n", coord(s.id).str().c_str(), s.w.str().c_str(), s.b);
  // order: positive-bracket symbols last so partial brackets are informative
  std::sort(syms.begin(), syms.end(), [](const Sym& a, const Sym& b) {
    if (a.b != b.b) return a.b < b.b;
    return coord_id_less(a.id, b.id);
  });
  // cheapest cost per unit of negative / positive bracket
  std::optional<Hom> rho_neg, rho_pos;
  for (auto& s : syms) {
    if (s.b < 0) {
      Hom r = Rational(1, -s.b) * s.w;
      if (!rho_neg || r < *rho_neg) rho_neg = r;
    } else if (s.b > 0) {
      Hom r = Rational(1, s.b) * s.w;
      if (!rho_pos || r < *rho_pos) rho_pos = r;
    }
  }
  // suffix availability of bracket signs
  std::vector<char> neg_after(syms.size() + 1, 0), pos_after(syms.size() + 1, 0);
  for (size_t i = syms.size(); i-- > 0;) {
    neg_after[i] = neg_after[i + 1] || syms[i].b < 0;
    pos_after[i] = pos_after[i + 1] || syms[i].b > 0;
  }

  // Lower bound on |completion| - c from position i, or nothing when the
  // bracket can no longer be brought back to 1.  Nondecreasing in the
  // multiplicity of any single symbol, since rho_* never exceed w/|b|.
  auto bound = [&](size_t i, const Hom& W, long br) -> std::optional<Hom> {
    Hom lb = W;
    if (br > 1) {
      if (!neg_after[i]) return std::nullopt;
      lb += (br - 1) * *rho_neg;
    } else if (br < 1) {
      if (!pos_after[i]) return std::nullopt;
      lb += (1 - br) * *rho_pos;
    }
    return lb;
  };

  MultiIndex cur;
  std::function<void(size_t, Hom, long)> dfs = [&](size_t i, Hom W, long br) {
    spend();
    auto lb = bound(i, W, br);
    if (!lb || !(*lb < room)) return;
    if (i == syms.size()) {
      if (br == 1 && !cur.empty()) {
        unsigned nh = S.noise_homogeneity(cur);
        if (cls == PopClass::Nbar || nh > 0) result.push_back(cur);
      }
      return;
    }
    const Sym& s = syms[i];
    dfs(i + 1, W, br);
    unsigned k = 0;
    for (;;) {
      ++k;
      Hom W2 = W + (long)k * s.w;
      long br2 = br + (long)k * s.b;
      if (!(W2 < room)) break;
      auto lb2 = bound(i + 1, W2, br2);
      if (lb2 && !(*lb2 < room)) break;
      // an unreachable bracket only gets worse once it moves away from 1
      if (!lb2 && ((s.b > 0 && br2 > 1) || (s.b < 0 && br2 < 1) || s.b == 0)) break;
      cur.add(s.id, 1);
      if (lb2) dfs(i + 1, W2, br2);
    }
    cur.remove(s.id, k - 1);
  };
  dfs(0, Hom(0), 0);

  // the reduced form is exact only for [beta] = 1, which every result has
  std::vector<MultiIndex> out;
  for (auto& b : result) {
    PopClass pc = S.classify(b);
    if ((cls == PopClass::N && pc == PopClass::N) ||
        (cls == PopClass::Nbar && (pc == PopClass::N || pc == PopClass::Nbar)))
      if (S.homogeneity(b) < cap) out.push_back(b);
  }
  sort_by_homogeneity(S, out);
  return out;
}

std::vector<MultiIndex> counterterm_set(const Structure& S) {
  std::vector<MultiIndex> out;
  for (auto& b : enumerate_below(S, Hom(0), PopClass::N))
    if (S.noise_homogeneity(b) >= 2) out.push_back(b);
  return out;
}

int spatial_parity(const MultiIndex& b, int axis) {
  long s = 0;
  for (auto& [c, cnt] : b.entries()) {
    const Coord& x = coord(c);
    if (x.poly)
      s += (long)x.n.at(axis) * cnt;
    else
      for (auto& [n, k] : x.k.terms()) s += (long)n.at(axis) * k * cnt;
  }
  return (int)(s % 2);
}

std::vector<MultiIndex> filter_symmetric(const Structure& S, const std::vector<MultiIndex>& set,
                                         const Symmetry& sym) {
  std::vector<MultiIndex> out;
  for (auto& b : set) {
    bool keep = true;
    for (int a : sym.reflect_axes) keep &= spatial_parity(b, a) == 0;
    if (sym.noise_parity_even) keep &= S.noise_homogeneity(b) % 2 == 0;
    if (keep) out.push_back(b);
  }
  return out;
}

std::vector<MultiIndex> filter_symmetric(const Structure& S, const std::vector<MultiIndex>& set) {
  return filter_symmetric(S, set, S.spec().symmetry);
}

PrecedenceWeights default_weights(const EquationSpec& s) {
  // l1 = l3*eta, l2 = l3*(2 eta + alphamax), normalized to sum 1
  Rational eta = s.eta.base, am = s.alphamax().base;
  Rational a = eta, b = 2 * eta + am, tot = a + b + 1;
  PrecedenceWeights w{a / tot, b / tot, Rational(1) / tot};
  w.l1.canonicalize(), w.l2.canonicalize(), w.l3.canonicalize();
  return w;
}

void check_weights(const EquationSpec& s, const PrecedenceWeights& w) {
  if (w.l1 <= 0 || w.l2 <= 0 || w.l3 <= 0) throw WeightError("weights must be positive");
  if (w.l1 + w.l2 + w.l3 != 1) throw WeightError("weights must sum to 1");
  if (Hom(w.l2) < w.l3 * s.eta) throw WeightError("need l2 >= l3*eta");
  if (Hom(w.l2) - w.l3 * s.eta < Hom(w.l1)) throw WeightError("need l2 - l3*eta >= l1");
  if (Hom(w.l1) - w.l3 * (s.eta + s.alphamax()) < Hom(0))
    throw WeightError("need l1 - l3*(eta + alphamax) >= 0");
}

Rational precedence(const Structure& S, const MultiIndex& b, const PrecedenceWeights& w) {
  Hom pd = S.poly_degree(b);
  return w.l1 * (long)b.length() + w.l2 * (long)S.noise_homogeneity(b) + w.l3 * pd.base;
}

}  // namespace mir
