#include "mir/checks.hpp"

#include <chrono>
#include <random>
#include <set>
#include <sstream>

#include "mir/characters.hpp"
#include "mir/enumerate.hpp"
#include "mir/errors.hpp"
#include "mir/renorm.hpp"
#include "mir/trees.hpp"

namespace mir {

namespace {

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

// records the first failure, counts cases
struct Tally {
  CheckResult r;
  Timer t;
  explicit Tally(std::string name) { r.name = std::move(name); }
  void pass() { ++r.cases; }
  void fail(const std::string& what) {
    ++r.cases;
    if (r.ok) r.detail = what;
    r.ok = false;
  }
  void expect(bool cond, const std::function<std::string()>& what) { cond ? pass() : fail(what()); }
  CheckResult done() {
    r.seconds = t.seconds();
    return r;
  }
};

std::string qstr(const Rational& q) { return q.get_str(); }

std::string combo_str(const GenCombo& c) {
  std::ostringstream os;
  for (auto& [g, v] : c) os << " " << qstr(v) << "*" << g.str();
  return c.empty() ? " 0" : os.str();
}

bool same(const Series<Rational>& a, const Series<Rational>& b) {
  if (a.size() != b.size()) return false;
  for (auto& [m, v] : a)
    if (coefficient(b, m) != v) return false;
  return true;
}

std::string series_str(const Series<Rational>& s) {
  std::ostringstream os;
  for (auto& [m, v] : sorted_entries(s)) os << " " << qstr(v) << "*z^{" << m.str() << "}";
  return s.empty() ? " 0" : os.str();
}

std::vector<MultiIndex> n_part(const Structure& S, const std::vector<MultiIndex>& T) {
  std::vector<MultiIndex> out;
  for (auto& b : T)
    if (S.in_N(b)) out.push_back(b);
  return out;
}

// words n with |n| < bound
std::vector<Word> words_below(const Structure& S, const Hom& bound) {
  std::vector<Word> out;
  Word w(S.d(), 0);
  std::function<void(int)> rec = [&](int a) {
    if (a == S.d()) {
      if (S.scaled_degree(w) < bound) out.push_back(w);
      return;
    }
    for (w[a] = 0; S.scaled_degree(w) < bound; ++w[a]) rec(a + 1);
    w[a] = 0;
  };
  rec(0);
  return out;
}

// generators z^gamma D^(n) with gamma in N of the truncation, n in the
// plus range (which contains the minus range), and the bd_i
std::vector<Generator> generator_pool(const Structure& S, const std::vector<MultiIndex>& T, bool plus_range) {
  std::vector<Generator> g;
  for (int i = 0; i < S.d(); ++i) g.push_back(Generator::dpartial(i));
  for (auto& b : n_part(S, T)) {
    Hom lim = S.spec().eta;
    if (plus_range) lim += S.homogeneity(b);
    for (auto& n : words_below(S, lim)) g.push_back(Generator::deriv(b, n));
  }
  return g;
}

Series<Rational> apply_gen(const Derivations& D, const Generator& g, const Series<Rational>& v) {
  Series<Rational> out;
  for (auto& [m, q] : v)
    for (auto& [b, c] : generator_column(D, g, m)) accumulate(out, b, Rational(q * c));
  return out;
}

Series<Rational> apply_combo(const Derivations& D, const GenCombo& c, const Series<Rational>& v) {
  Series<Rational> out;
  for (auto& [g, q] : c) accumulate(out, apply_gen(D, g, v), q);
  return out;
}

// random Guin-Oudom labels of a flavor, built from a pool of (gamma, n)
std::vector<GLIndex> random_labels(const Envelope& E, const std::vector<MultiIndex>& Ns, unsigned count,
                                   unsigned max_len, std::mt19937_64& rng) {
  const Structure& S = E.structure();
  std::vector<GLIndex::Gen> pool;
  for (auto& b : Ns)
    for (auto& n : words_below(S, S.spec().eta + (E.flavor() == Flavor::Plus ? S.homogeneity(b) : Hom(0))))
      if (E.valid_gen(b, n)) pool.emplace_back(b, n);
  std::vector<GLIndex> out;
  if (pool.empty()) return out;
  std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<unsigned> len(1, max_len);
  std::uniform_int_distribution<int> ax(0, S.d() - 1), coin(0, 3);
  for (unsigned tries = 0; out.size() < count && tries < 50 * count; ++tries) {
    GLIndex x = GLIndex::unit(S.d());
    unsigned L = len(rng);
    for (unsigned i = 0; i < L; ++i) {
      if (coin(rng) == 0)
        ++x.m[ax(rng)];
      else
        x = x.plus(pool[pick(rng)]);
    }
    if (!x.is_unit() && E.valid(x)) out.push_back(x);
  }
  return out;
}

GLCombo mul(const Envelope& E, const GLCombo& a, const GLCombo& b) {
  GLCombo r;
  for (auto& [x, u] : a)
    for (auto& [y, v] : b)
      for (auto& [z, w] : E.product(x, y, 16)) accumulate(r, z, u * v * w);
  return r;
}

bool same(const GLCombo& a, const GLCombo& b) { return a == b; }

std::string combo_str(const GLCombo& c) {
  std::ostringstream os;
  for (auto& [x, v] : c) os << " " << qstr(v) << "*D" << x.str();
  return c.empty() ? " 0" : os.str();
}

// characters are compared on every (gamma, n) of N in the truncation with
// n in the plus range, and on the axes
template <class F>
void compare_characters(Tally& t, const Structure& S, const std::vector<MultiIndex>& Ns, Flavor fl,
                        const Character<Rational>& a, const F& b, const std::string& what) {
  for (int i = 0; i < S.d(); ++i) {
    Rational va = a.axis_value(i), vb = b.axis_value(i);
    t.expect(va == vb, [&] { return what + ": axis " + std::to_string(i) + " " + qstr(va) + " vs " + qstr(vb); });
  }
  for (auto& g : Ns) {
    Hom lim = S.spec().eta;
    if (fl == Flavor::Plus) lim += S.homogeneity(g);
    for (auto& n : words_below(S, lim)) {
      Rational va = a.at(g, n), vb = b.at(g, n);
      t.expect(va == vb, [&] {
        return what + ": at (" + g.str() + ", " + word_str(n) + ") " + qstr(va) + " vs " + qstr(vb);
      });
    }
  }
}

using Matrix = std::map<std::pair<MultiIndex, MultiIndex>, Rational>;

Rational entry(const Matrix& M, const MultiIndex& b, const MultiIndex& g) {
  auto it = M.find({b, g});
  return it == M.end() ? Rational(0) : it->second;
}

// (A B)_beta^gamma over the intermediate set
Rational product_entry(const Matrix& A, const Matrix& B, const std::vector<MultiIndex>& mid, const MultiIndex& b,
                       const MultiIndex& g) {
  Rational acc = 0;
  for (auto& z : mid) {
    auto a = A.find({b, z});
    if (a == A.end()) continue;
    auto c = B.find({z, g});
    if (c == B.end()) continue;
    acc += a->second * c->second;
  }
  return acc;
}

struct Ctx {
  const Structure& S;
  Derivations D;
  Envelope Em, Ep;
  NCatalog cat;
  explicit Ctx(const Structure& s) : S(s), D(s), Em(D, Flavor::Minus), Ep(D, Flavor::Plus), cat(s) {}
};

}  // namespace

std::vector<MultiIndex> truncation(const Structure& S, const CheckOptions& o) {
  std::vector<MultiIndex> out;
  for (auto cls : {PopClass::P, PopClass::Nbar})
    for (auto& b : enumerate_below(S, o.cap, cls))
      if (b.length() <= o.max_length) out.push_back(b);
  sort_by_homogeneity(S, out);
  return out;
}

// ------------------------------------------------------------ derivations

CheckResult check_prelie(const Structure& S, const CheckOptions& o) {
  Tally t("pre-Lie identity");
  Derivations D(S);
  auto T = truncation(S, o);
  auto pool = generator_pool(S, T, true);
  std::mt19937_64 rng(o.seed);
  std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
  for (unsigned i = 0; i < 4 * o.triples; ++i) {
    Generator a = pool[pick(rng)], b = pool[pick(rng)], c = pool[pick(rng)];
    // bd |> bd is undefined; the identity is only asked where every product exists
    if (a.poly + b.poly + c.poly > 1) continue;
    GenCombo A{{a, 1}}, B{{b, 1}}, C{{c, 1}};
    auto assoc = [&](const GenCombo& x, const GenCombo& y, const GenCombo& z) {
      GenCombo r = prelie(D, prelie(D, x, y), z);
      r += scaled(prelie(D, x, prelie(D, y, z)), -1);
      return r;
    };
    // left-symmetric: a acts on the coefficient of b
    GenCombo l = assoc(A, B, C), r = assoc(B, A, C);
    t.expect(l == r, [&] {
      return "(" + a.str() + ", " + b.str() + ", " + c.str() + "):" + combo_str(l) + " vs" + combo_str(r);
    });
  }
  return t.done();
}

CheckResult check_jacobi(const Structure& S, const CheckOptions& o) {
  Tally t("Jacobi identity and bracket action");
  Derivations D(S);
  auto T = truncation(S, o);
  auto pool = generator_pool(S, T, true);
  std::mt19937_64 rng(o.seed + 1);
  std::uniform_int_distribution<size_t> pick(0, pool.size() - 1), pickT(0, T.size() - 1);
  for (unsigned i = 0; i < 2 * o.triples; ++i) {
    GenCombo A{{pool[pick(rng)], 1}}, B{{pool[pick(rng)], 1}}, C{{pool[pick(rng)], 1}};
    GenCombo j = lie_bracket(D, A, lie_bracket(D, B, C));
    j += lie_bracket(D, B, lie_bracket(D, C, A));
    j += lie_bracket(D, C, lie_bracket(D, A, B));
    t.expect(j.empty(), [&] { return "Jacobi:" + combo_str(j); });
  }
  // the bracket acts as the commutator on the truncation: rows above the
  // truncation may leave and re-enter through the projection, so only the
  // restricted action is compared
  for (unsigned i = 0; i < 2 * o.triples; ++i) {
    Generator a = pool[pick(rng)], b = pool[pick(rng)];
    const MultiIndex& g = T[pickT(rng)];
    Series<Rational> z{{g, Rational(1)}};
    auto lhs = apply_combo(D, lie_bracket(D, a, b), z);
    auto rhs = apply_gen(D, a, apply_gen(D, b, z));
    accumulate(rhs, apply_gen(D, b, apply_gen(D, a, z)), Rational(-1));
    for (auto* s : {&lhs, &rhs})
      for (auto it = s->begin(); it != s->end();)
        it = S.in_PNbar(it->first) ? std::next(it) : s->erase(it);
    t.expect(same(lhs, rhs), [&] {
      return "[" + a.str() + ", " + b.str() + "] on z^{" + g.str() + "}:" + series_str(lhs) + " vs" + series_str(rhs);
    });
  }
  return t.done();
}

CheckResult check_gradings(const Structure& S, const CheckOptions& o) {
  Tally t("homogeneity gradings");
  Derivations D(S);
  auto T = truncation(S, o);
  const Hom eta = S.spec().eta;
  for (auto& g : generator_pool(S, T, true))
    for (auto& c : T)
      for (auto& [b, v] : generator_column(D, g, c)) {
        Hom want = g.poly ? S.homogeneity(c) + S.scaled_degree(unit_word(S.d(), g.axis))
                          : S.homogeneity(c) + S.homogeneity(g.gamma) + eta - S.scaled_degree(g.n);
        t.expect(S.homogeneity(b) == want, [&] {
          return g.str() + " maps z^{" + c.str() + "} to z^{" + b.str() + "} of homogeneity " +
                 S.homogeneity(b).str() + ", expected " + want.str();
        });
      }
  // iterated: Guin-Oudom labels of both flavors
  Derivations D2(S);
  Envelope Em(D2, Flavor::Minus), Ep(D2, Flavor::Plus);
  std::mt19937_64 rng(o.seed + 2);
  auto Ns = n_part(S, T);
  for (const Envelope* E : {&Em, &Ep})
    for (auto& x : random_labels(*E, Ns, o.triples, 3, rng))
      for (auto& c : T)
        for (auto& [b, v] : E->column(x, c)) {
          if (is_zero(v)) continue;
          Hom want = S.homogeneity(c) + E->degree(x);
          t.expect(S.homogeneity(b) == want, [&] {
            return "D" + x.str() + " maps z^{" + c.str() + "} to z^{" + b.str() + "}, expected homogeneity " +
                   want.str();
          });
        }
  return t.done();
}

CheckResult check_plus_triangular(const Structure& S, const CheckOptions& o) {
  Tally t("plus triangularity");
  Derivations D(S);
  Envelope Ep(D, Flavor::Plus);
  auto T = truncation(S, o);
  std::mt19937_64 rng(o.seed + 3);
  for (auto& x : random_labels(Ep, n_part(S, T), 2 * o.triples, 3, rng))
    for (auto& c : T)
      for (auto& [b, v] : Ep.column(x, c))
        t.expect(is_zero(v) || S.homogeneity(c) < S.homogeneity(b), [&] {
          return "D" + x.str() + " maps z^{" + c.str() + "} to z^{" + b.str() + "}";
        });
  return t.done();
}

CheckResult check_closed_form(const Structure& S, const CheckOptions& o) {
  Tally t("recursive vs closed-form columns");
  Derivations D(S);
  Envelope Em(D, Flavor::Minus), Ep(D, Flavor::Plus);
  auto T = truncation(S, o);
  auto Ns = n_part(S, T);
  std::mt19937_64 rng(o.seed + 4);
  for (const Envelope* E : {&Em, &Ep})
    for (auto& x : random_labels(*E, Ns, o.triples, 3, rng))
      for (auto& c : T) {
        const auto& a = E->column(x, c);
        auto b = E->column_closed(x, c);
        t.expect(same(a, b), [&] {
          return "D" + x.str() + " on z^{" + c.str() + "}:" + series_str(a) + " vs" + series_str(b);
        });
      }
  return t.done();
}

// ------------------------------------------------------------ characters

CheckResult check_exponential(const Structure& S, const CheckOptions& o) {
  Tally t("exponential formula vs basis sum");
  Ctx C(S);
  auto T = truncation(S, o);
  for (unsigned k = 0; k < o.characters; ++k) {
    auto f = random_character(S, Flavor::Minus, o.seed * 1000 + k);
    for (auto& b : T)
      for (auto& g : T) {
        if (g.length() > b.length()) continue;  // every generator keeps or raises the length
        Rational a = gamma_entry(C.Em, f, b, g);
        Rational e = gamma_via_exponential(S, f, b, g, 16);
        t.expect(a == e, [&] {
          return "character " + std::to_string(k) + " at (" + b.str() + ", " + g.str() + "): " + qstr(a) + " vs " +
                 qstr(e);
        });
      }
  }
  return t.done();
}

namespace {

Matrix plus_matrix(const Ctx& C, const Character<Rational>& p, const std::vector<MultiIndex>& T) {
  return gamma_matrix(C.Ep, p, T);
}

void compare_matrix_law(Tally& t, const Matrix& lhs, const Matrix& A, const Matrix& B, const std::vector<MultiIndex>& rows,
                        const std::vector<MultiIndex>& cols, const std::vector<MultiIndex>& mid, const std::string& what) {
  for (auto& b : rows)
    for (auto& g : cols) {
      Rational l = entry(lhs, b, g), r = product_entry(A, B, mid, b, g);
      t.expect(l == r, [&] { return what + " at (" + b.str() + ", " + g.str() + "): " + qstr(l) + " vs " + qstr(r); });
    }
}

}  // namespace

CheckResult check_convolution(const Structure& S, const CheckOptions& o) {
  Tally t("plus convolution vs matrix product");
  Ctx C(S);
  auto T = truncation(S, o);
  unsigned reps = std::max(1u, o.triples / 10);
  for (unsigned k = 0; k < reps; ++k) {
    auto p = random_character(S, Flavor::Plus, o.seed * 7919 + 2 * k);
    auto s = random_character(S, Flavor::Plus, o.seed * 7919 + 2 * k + 1);
    auto ps = convolve_plus(C.Ep, C.cat, p, s);
    // Gamma_{p*s} = Gamma_p Gamma_s; plus-flavor entries are strictly
    // triangular, so intermediates stay inside the truncation
    compare_matrix_law(t, plus_matrix(C, ps, T), plus_matrix(C, p, T), plus_matrix(C, s, T), T, T, T,
                       "Gamma_{p*s}");
  }
  return t.done();
}

CheckResult check_mixed_convolution(const Structure& S, const CheckOptions& o) {
  Tally t("mixed convolution vs matrix product");
  Ctx C(S);
  auto T = truncation(S, o);
  unsigned reps = std::max(1u, o.triples / 10);
  for (unsigned k = 0; k < reps; ++k) {
    auto p = random_character(S, Flavor::Plus, o.seed * 104729 + 2 * k);
    auto f = random_character(S, Flavor::Minus, o.seed * 104729 + 2 * k + 1);
    auto pf = convolve_mixed(C.Ep, C.cat, p, f);
    // Gamma^-_{p*f} = Gamma^+_p Gamma^-_f; the plus factor is on the left,
    // so intermediates have homogeneity at most that of the row
    compare_matrix_law(t, gamma_matrix(C.Em, pf, T), plus_matrix(C, p, T), gamma_matrix(C.Em, f, T), T, T, T,
                       "Gamma^-_{p*f}");
  }
  return t.done();
}

CheckResult check_inverse(const Structure& S, const CheckOptions& o) {
  Tally t("two-sided inverses");
  Ctx C(S);
  auto T = truncation(S, o);
  auto Ns = n_part(S, T);
  auto e = counit<Rational>(Flavor::Plus, S.d());
  unsigned reps = std::max(1u, o.triples / 10);
  for (unsigned k = 0; k < reps; ++k) {
    auto p = random_character(S, Flavor::Plus, o.seed * 31 + k);
    auto q = invert_plus(C.Ep, C.cat, p);
    compare_characters(t, S, Ns, Flavor::Plus, convolve_plus(C.Ep, C.cat, p, q), e, "p*p^-1");
    compare_characters(t, S, Ns, Flavor::Plus, convolve_plus(C.Ep, C.cat, q, p), e, "p^-1*p");
    auto P = plus_matrix(C, p, T), Q = plus_matrix(C, q, T);
    for (auto& b : T)
      for (auto& g : T) {
        Rational id = b == g ? 1 : 0;
        Rational l = product_entry(P, Q, T, b, g), r = product_entry(Q, P, T, b, g);
        t.expect(l == id && r == id, [&] {
          return "Gamma_p Gamma_q at (" + b.str() + ", " + g.str() + "): " + qstr(l) + ", " + qstr(r);
        });
      }
  }
  return t.done();
}

CheckResult check_group_law(const Structure& S, const CheckOptions& o) {
  Tally t("associativity of the convolution");
  Ctx C(S);
  auto T = truncation(S, o);
  auto Ns = n_part(S, T);
  unsigned reps = std::max(1u, o.triples / 10);
  for (unsigned k = 0; k < reps; ++k) {
    auto p = random_character(S, Flavor::Plus, o.seed * 17 + 3 * k);
    auto s = random_character(S, Flavor::Plus, o.seed * 17 + 3 * k + 1);
    auto u = random_character(S, Flavor::Plus, o.seed * 17 + 3 * k + 2);
    auto f = random_character(S, Flavor::Minus, o.seed * 17 + 3 * k + 2);
    auto l = convolve_plus(C.Ep, C.cat, convolve_plus(C.Ep, C.cat, p, s), u);
    auto r = convolve_plus(C.Ep, C.cat, p, convolve_plus(C.Ep, C.cat, s, u));
    compare_characters(t, S, Ns, Flavor::Plus, l, r, "(p*s)*u vs p*(s*u)");
    // the plus group acts on minus characters
    auto lm = convolve_mixed(C.Ep, C.cat, convolve_plus(C.Ep, C.cat, p, s), f);
    auto rm = convolve_mixed(C.Ep, C.cat, p, convolve_mixed(C.Ep, C.cat, s, f));
    compare_characters(t, S, Ns, Flavor::Minus, lm, rm, "(p*s)*f vs p*(s*f)");
  }
  return t.done();
}

// ------------------------------------------------------------ envelope

CheckResult check_gl_product(const Structure& S, const CheckOptions& o) {
  Tally t("envelope product");
  Derivations D(S);
  Envelope Em(D, Flavor::Minus), Ep(D, Flavor::Plus);
  auto T = truncation(S, o);
  auto Ns = n_part(S, T);
  std::mt19937_64 rng(o.seed + 5);
  std::uniform_int_distribution<size_t> pickT(0, T.size() - 1);
  for (const Envelope* E : {&Em, &Ep}) {
    auto labels = random_labels(*E, Ns, 3 * o.triples, 2, rng);
    if (labels.size() < 3) continue;
    std::uniform_int_distribution<size_t> pick(0, labels.size() - 1);
    for (unsigned i = 0; i < o.triples; ++i) {
      GLCombo x{{labels[pick(rng)], 1}}, y{{labels[pick(rng)], 1}}, z{{labels[pick(rng)], 1}};
      GLCombo l = mul(*E, mul(*E, x, y), z), r = mul(*E, x, mul(*E, y, z));
      t.expect(same(l, r), [&] {
        return "(" + x.begin()->first.str() + ", " + y.begin()->first.str() + ", " + z.begin()->first.str() +
               "):" + combo_str(l) + " vs" + combo_str(r);
      });
      // rho(D_x D_y) = rho(D_x) rho(D_y) on the truncation
      const MultiIndex& g = T[pickT(rng)];
      auto lhs = E->apply(mul(*E, x, y), g);
      Series<Rational> rhs;
      for (auto& [m, v] : E->apply(y, g)) accumulate(rhs, E->apply(x, m), v);
      t.expect(same(lhs, rhs), [&] {
        return "rho on z^{" + g.str() + "}:" + series_str(lhs) + " vs" + series_str(rhs);
      });
    }
  }
  return t.done();
}

// ------------------------------------------------------------ trees

namespace {

// all trees with at most max_size vertices; lowers max_size while the set
// would exceed `limit` trees
std::vector<DecTree> small_trees(const Structure& S, unsigned& max_size, size_t limit) {
  // edge decorations and polynomial leaves of the lowest degrees
  std::vector<Word> edges = S.low_words();
  std::vector<Word> leaves;
  for (auto& w : words_below(S, S.spec().eta))
    if (word_length(w) > 0) leaves.push_back(w);
  std::vector<LabelId> labels;
  for (auto& z : S.spec().noises) labels.push_back(z.id);

  // by size: all trees with exactly s vertices
  std::vector<std::vector<DecTree>> by(max_size + 1);
  for (auto& n : leaves) by[1].push_back(DecTree::X(n));
  for (auto l : labels) by[1].push_back(DecTree::node(l));
  for (unsigned s = 2; s <= max_size; ++s) {
    // planted branches (edge, subtree) of size < s, combined as multisets
    std::vector<std::pair<Word, DecTree>> branches;
    std::vector<unsigned> bsize;
    for (unsigned k = 1; k < s; ++k)
      for (auto& tr : by[k])
        for (auto& e : edges) {
          branches.emplace_back(e, tr);
          bsize.push_back(k);
        }
    std::set<DecTree> seen;
    std::vector<std::pair<Word, DecTree>> kids;
    std::function<void(size_t, unsigned)> rec = [&](size_t from, unsigned left) {
      if (by[s].size() > limit) return;
      if (left == 0) {
        for (auto l : labels) {
          DecTree t = DecTree::node(l, kids);
          if (seen.insert(t).second) by[s].push_back(t);
        }
        return;
      }
      for (size_t i = from; i < branches.size(); ++i) {
        if (bsize[i] > left) continue;
        kids.push_back(branches[i]);
        rec(i, left - bsize[i]);
        kids.pop_back();
      }
    };
    rec(0, s - 1);
    size_t total = 0;
    for (unsigned k = 1; k <= s; ++k) total += by[k].size();
    if (total > limit && s > 2) {
      max_size = s - 1;
      by.resize(s);
      break;
    }
  }
  std::vector<DecTree> out;
  for (auto& v : by) out.insert(out.end(), v.begin(), v.end());
  return out;
}

Series<Rational> psi_series(const TreeCombo& c) {
  Series<Rational> s;
  for (auto& [t, q] : c) {
    auto [k, m] = psi(t);
    accumulate(s, m, Rational(q * k));
  }
  return s;
}

}  // namespace

CheckResult check_trees(const Structure& S, const CheckOptions& o) {
  Tally t("tree morphisms");
  // all trees up to five vertices; specs with many decorations fall back
  // to the largest size that keeps the set manageable
  unsigned max_size = 5;
  auto trees = small_trees(S, max_size, 10000);
  std::mt19937_64 rng(o.seed + 6);
  for (auto& tau : trees) {
    auto [k, b] = psi(tau);
    t.expect(bracket(b) == 1, [&] { return "[beta] != 1 for " + tau.str(); });
  }
  // grafting: all pairs with |sigma| + |tau| within the size bound
  std::vector<std::vector<const DecTree*>> by_size(max_size + 1);
  for (auto& tr : trees) by_size[tr.size()].push_back(&tr);
  for (unsigned s1 = 1; s1 < max_size; ++s1)
    for (auto* sigma : by_size[s1]) {
      if (sigma->leaf) continue;
      auto [cs, bs] = psi(*sigma);
      for (unsigned s2 = 1; s1 + s2 <= max_size; ++s2)
        for (auto* tau : by_size[s2]) {
          auto [ct, bt] = psi(*tau);
          for (auto& n : S.low_words()) {
            auto lhs = psi_series(graft(*sigma, n, *tau));
            Series<Rational> d, rhs;
            apply_D(nullptr, n, bt, ct, d);
            Rational nf = 1;
            for (int a : n) nf *= factorial(a);
            for (auto& [m, v] : d) accumulate(rhs, m.plus(bs), Rational(v * cs / nf));
            t.expect(same(lhs, rhs), [&] {
              return "graft " + sigma->str() + " onto " + tau->str() + " along " + word_str(n) + ":" +
                     series_str(lhs) + " vs" + series_str(rhs);
            });
          }
        }
    }
  // node derivative against bd_i on admissible trees
  for (auto& tau : trees) {
    if (!tree_admissible(S, tau)) continue;
    auto [ct, bt] = psi(tau);
    for (int i = 0; i < S.d(); ++i) {
      auto lhs = psi_series(up(S, i, tau));
      std::set<Word> ns(S.low_words().begin(), S.low_words().end());
      for (auto& [c, cnt] : bt.entries())
        if (coord(c).poly) ns.insert(coord(c).n);
      Series<Rational> rhs;
      for (auto& n : ns) {
        Series<Rational> raw;
        apply_D(&S, n, bt, Rational(ct * (n[i] + 1)), raw);
        CoordId z = S.poly_coord(word_add(n, unit_word(S.d(), i)));
        for (auto& [m, v] : raw) {
          MultiIndex r = m;
          r.add(z);
          accumulate(rhs, r, v);
        }
      }
      t.expect(same(lhs, rhs), [&] {
        return "up_" + std::to_string(i) + " " + tau.str() + ":" + series_str(lhs) + " vs" + series_str(rhs);
      });
    }
  }
  // root information is lost: two different trees with the same image
  {
    std::vector<LabelId> ls;
    for (auto& z : S.spec().noises) ls.push_back(z.id);
    LabelId a = ls[0], b = ls.size() > 1 ? ls[1] : ls[0], c = ls.size() > 2 ? ls[2] : a;
    Word e0 = zero_word(S.d());
    DecTree l = DecTree::node(a, {{e0, DecTree::node(b, {{e0, DecTree::node(c)}})}, {e0, DecTree::node(c)}});
    DecTree r = DecTree::node(b, {{e0, DecTree::node(a, {{e0, DecTree::node(c)}, {e0, DecTree::node(c)}})}});
    auto pl = psi(l), pr = psi(r);
    bool distinct = ls.size() < 2 || !(l == r);
    t.expect(distinct && pl == pr && pl.first == 2, [&] {
      return "root-loss pair: " + qstr(pl.first) + "*z^{" + pl.second.str() + "} vs " + qstr(pr.first) + "*z^{" +
             pr.second.str() + "}";
    });
  }
  (void)rng;
  auto r = t.done();
  if (r.ok) r.detail = std::to_string(trees.size()) + " trees with at most " + std::to_string(max_size) + " vertices";
  return r;
}

// ------------------------------------------------------------ ordering

CheckResult check_precedence(const Structure& S, const CheckOptions& o) {
  Tally t("generators increase the precedence order");
  Derivations D(S);
  auto T = truncation(S, o);
  auto w = default_weights(S.spec());
  check_weights(S.spec(), w);
  for (bool plus : {false, true})
    for (auto& g : generator_pool(S, T, plus))
      for (auto& c : T)
        for (auto& [b, v] : generator_column(D, g, c)) {
          if (is_zero(v) || !S.in_PNbar(b)) continue;
          t.expect(precedence(S, c, w) < precedence(S, b, w), [&] {
            return g.str() + " maps z^{" + c.str() + "} to z^{" + b.str() + "}";
          });
        }
  return t.done();
}

// ------------------------------------------------------------ model equations

CheckResult check_model_oracle(const Structure& S, const CheckOptions& o) {
  Tally t("model equations vs partition sum");
  ModelContext M(S);
  for (auto& b : enumerate_below(S, o.cap, PopClass::N)) {
    auto a = model_rhs(M, b), p = model_rhs_partitions(S, b);
    t.expect(a == p, [&] { return b.str() + ": " + debug_str(a) + " vs " + debug_str(p); });
  }
  return t.done();
}

CheckResult check_model_grading(const Structure& S, const CheckOptions& o) {
  Tally t("model equations: grading and triangular dependence");
  ModelContext M(S);
  auto C = counterterm_set(S);
  auto w = default_weights(S.spec());
  for (auto& b : enumerate_below(S, o.cap, PopClass::N)) {
    const Hom hb = S.homogeneity(b);
    const Rational pb = precedence(S, b, w);
    auto e = model_rhs(M, b, &C);
    for (auto& [mono, q] : e.terms()) {
      auto h = atom_homogeneity(S, mono);
      t.expect(h && *h == hb, [&] {
        return b.str() + ": monomial of homogeneity " + (h ? h->str() : std::string("?"));
      });
      for (auto& [id, pw] : mono) {
        const Atom& a = atom(id);
        if (a.kind == AtomKind::ModelDeriv) {
          t.expect(a.g.le(b) && a.g != b, [&] { return b.str() + " depends on Pi_" + a.g.str(); });
        } else if (a.kind == AtomKind::Constant) {
          bool in_C = std::find(C.begin(), C.end(), a.g) != C.end();
          bool own = a.g == b && mono.size() == 1 && pw == 1 && q == 1;
          t.expect(in_C && (own || precedence(S, a.g, w) < pb),
                   [&] { return b.str() + " depends on c_" + a.g.str(); });
        }
      }
    }
  }
  return t.done();
}

// ------------------------------------------------------------ enumerator

CheckResult check_enumerator(const Structure& S, const Hom& cap, unsigned max_length) {
  Tally t("enumerator vs exhaustive search");
  const auto& sp = S.spec();
  // alphabet: every admissible pair with |k| < max_length, and polynomial
  // coordinates whose own homogeneity does not already exceed the cap by
  // more than the most negative possible remainder
  std::vector<CoordId> alpha;
  for (auto& z : sp.noises)
    for (auto id : admissible_pairs(S, z.id, max_length - 1)) alpha.push_back(id);
  size_t npairs = alpha.size();
  Hom most_neg(0);
  for (auto id : alpha)
    if (S.coord_homogeneity(id) < Hom(0)) most_neg += (long)max_length * S.coord_homogeneity(id);
  Hom poly_cap = cap - most_neg;
  {
    Word w(sp.d, 0);
    std::function<void(int)> rec = [&](int a) {
      if (a == sp.d) {
        CoordId id = S.poly_coord(w);
        if (S.info(id).admissible) alpha.push_back(id);
        return;
      }
      for (w[a] = 0; sp.scaled_degree(w) - sp.eta < poly_cap; ++w[a]) rec(a + 1);
      w[a] = 0;
    };
    rec(0);
  }
  (void)npairs;
  std::sort(alpha.begin(), alpha.end(), [&](CoordId a, CoordId b) {
    const Hom &ha = S.coord_homogeneity(a), &hb = S.coord_homogeneity(b);
    return ha != hb ? ha < hb : coord_id_less(a, b);
  });

  // all multisets of length <= max_length over the alphabet
  std::set<MultiIndex> brute;
  MultiIndex cur;
  std::function<void(size_t, unsigned, long, unsigned, Hom)> rec = [&](size_t i, unsigned len, long br,
                                                                       unsigned noise, Hom h) {
    if (len > 0 && br == 1 && noise > 0 && h < cap) {
      // brute force uses only the definitions: N = populated with a noise
      if (S.classify(cur) == PopClass::N) brute.insert(cur);
    }
    if (len == max_length) return;
    const unsigned rem = max_length - len;
    for (size_t j = i; j < alpha.size(); ++j) {
      const auto& ci = S.info(alpha[j]);
      // later symbols are no lighter, so this is the best completion
      Hom best = h + ci.hom;
      if (ci.hom < Hom(0)) best += (long)(rem - 1) * ci.hom;
      if (!(best < cap)) break;
      cur.add(alpha[j]);
      rec(j, len + 1, br + ci.bracket, noise + (ci.noise ? 1 : 0), h + ci.hom);
      cur.remove(alpha[j]);
    }
  };
  rec(0, 0, 0, 0, Hom(0));

  std::set<MultiIndex> fast;
  for (auto& b : enumerate_below(S, cap, PopClass::N))
    if (b.length() <= max_length) fast.insert(b);
  for (auto& b : brute)
    t.expect(fast.count(b), [&] { return "missed by the enumerator: " + b.str(); });
  for (auto& b : fast)
    t.expect(brute.count(b), [&] { return "not found by exhaustive search: " + b.str(); });
  return t.done();
}

const std::vector<Suite>& all_suites() {
  static const std::vector<Suite> s = {
      {"prelie", check_prelie},
      {"jacobi", check_jacobi},
      {"gradings", check_gradings},
      {"triangular", check_plus_triangular},
      {"closed-form", check_closed_form},
      {"exponential", check_exponential},
      {"convolution", check_convolution},
      {"mixed-convolution", check_mixed_convolution},
      {"inverse", check_inverse},
      {"group-law", check_group_law},
      {"gl-product", check_gl_product},
      {"trees", check_trees},
      {"precedence", check_precedence},
      {"model-oracle", check_model_oracle},
      {"model-grading", check_model_grading},
      {"enumerator", [](const Structure& S, const CheckOptions& o) { return check_enumerator(S, o.cap, 6); }},
  };
  return s;
}

}  // namespace mir
