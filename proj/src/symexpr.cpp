#include "mir/symexpr.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <unordered_map>

#include <fmt/format.h>

namespace mir {

Atom Atom::noise(LabelId l) {
  Atom a;
  a.kind = AtomKind::Noise;
  a.label = l;
  return a;
}
Atom Atom::model(const Word& n, const MultiIndex& g) {
  Atom a;
  a.kind = AtomKind::ModelDeriv;
  a.n = n;
  a.g = g;
  return a;
}
Atom Atom::poly(int axis) {
  Atom a;
  a.kind = AtomKind::PolyBase;
  a.axis = axis;
  return a;
}
Atom Atom::constant(const MultiIndex& g) {
  Atom a;
  a.kind = AtomKind::Constant;
  a.g = g;
  return a;
}
Atom Atom::nonlin(LabelId l, const KWord& k) {
  Atom a;
  a.kind = AtomKind::NonlinDeriv;
  a.label = l;
  a.k = k;
  return a;
}
Atom Atom::func(const std::string& name, int order) {
  Atom a;
  a.kind = AtomKind::Func;
  a.name = name;
  a.order = order;
  return a;
}
Atom Atom::param(const std::string& name) {
  Atom a;
  a.kind = AtomKind::Param;
  a.name = name;
  return a;
}
Atom Atom::sol(const Word& n) {
  Atom a;
  a.kind = AtomKind::Sol;
  a.n = n;
  return a;
}

std::string Atom::key() const {
  return fmt::format("{}|{}|{}|{}|{}|{}|{}|{}", int(kind), label_name(label), word_str(n), g.str(), k.str(), axis,
                     name, order);
}

namespace {
struct AtomTable {
  std::mutex mu;
  std::deque<Atom> atoms;
  std::unordered_map<std::string, AtomId> ids;
};
AtomTable& table() {
  static AtomTable t;
  return t;
}
}  // namespace

AtomId intern_atom(const Atom& a) {
  auto& t = table();
  std::string k = a.key();
  std::lock_guard lk(t.mu);
  auto it = t.ids.find(k);
  if (it != t.ids.end()) return it->second;
  AtomId id = (AtomId)t.atoms.size();
  t.atoms.push_back(a);
  t.ids.emplace(std::move(k), id);
  return id;
}

const Atom& atom(AtomId id) {
  auto& t = table();
  std::lock_guard lk(t.mu);
  return t.atoms.at(id);
}

bool atom_less(const Atom& a, const Atom& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  switch (a.kind) {
    case AtomKind::Noise:
      return label_name(a.label) < label_name(b.label);
    case AtomKind::ModelDeriv:
      if (a.g != b.g) {
        // lower length first, then canonical
        if (a.g.length() != b.g.length()) return a.g.length() < b.g.length();
        return canonical_less(a.g, b.g);
      }
      return word_length(a.n) != word_length(b.n) ? word_length(a.n) < word_length(b.n) : a.n < b.n;
    case AtomKind::PolyBase:
      return a.axis < b.axis;
    case AtomKind::Constant:
      if (a.g.length() != b.g.length()) return a.g.length() < b.g.length();
      return canonical_less(a.g, b.g);
    case AtomKind::NonlinDeriv:
      if (a.label != b.label) return label_name(a.label) < label_name(b.label);
      return a.k.str() < b.k.str();
    case AtomKind::Func:
      // names first, then derivative order
      if (a.name != b.name) return a.name < b.name;
      return a.order < b.order;
    case AtomKind::Param:
      return a.name < b.name;
    case AtomKind::Sol:
      return word_length(a.n) != word_length(b.n) ? word_length(a.n) < word_length(b.n) : a.n < b.n;
  }
  return false;
}

SymExpr::SymExpr(const Rational& q) {
  if (sgn(q)) t_.emplace(Mono{}, q);
}

SymExpr SymExpr::of(AtomId a, unsigned power) {
  SymExpr e;
  if (power == 0)
    e.t_.emplace(Mono{}, 1);
  else
    e.t_.emplace(Mono{{a, power}}, 1);
  return e;
}
SymExpr SymExpr::of(const Atom& a, unsigned power) { return of(intern_atom(a), power); }

std::optional<Rational> SymExpr::as_rational() const {
  if (t_.empty()) return Rational(0);
  if (t_.size() == 1 && t_.begin()->first.empty()) return t_.begin()->second;
  return std::nullopt;
}

void SymExpr::add_term(const Mono& m, const Rational& q) {
  if (!sgn(q)) return;
  auto [it, fresh] = t_.try_emplace(m, q);
  if (!fresh) {
    it->second += q;
    if (!sgn(it->second)) t_.erase(it);
  }
}

SymExpr& SymExpr::operator+=(const SymExpr& o) {
  for (auto& [m, q] : o.t_) add_term(m, q);
  return *this;
}
SymExpr& SymExpr::operator-=(const SymExpr& o) {
  for (auto& [m, q] : o.t_) add_term(m, -q);
  return *this;
}
SymExpr& SymExpr::operator*=(const Rational& q) {
  if (!sgn(q)) {
    t_.clear();
    return *this;
  }
  for (auto& [m, c] : t_) c *= q;
  return *this;
}

SymExpr::Mono mono_mul(const SymExpr::Mono& a, const SymExpr::Mono& b) {
  SymExpr::Mono r;
  r.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first))
      r.push_back(a[i++]);
    else if (i == a.size() || b[j].first < a[i].first)
      r.push_back(b[j++]);
    else {
      r.push_back({a[i].first, a[i].second + b[j].second});
      ++i, ++j;
    }
  }
  return r;
}

SymExpr operator*(const SymExpr& a, const SymExpr& b) {
  SymExpr r;
  for (auto& [ma, qa] : a.terms())
    for (auto& [mb, qb] : b.terms()) r.add_term(mono_mul(ma, mb), qa * qb);
  return r;
}
SymExpr& SymExpr::operator*=(const SymExpr& o) { return *this = *this * o; }

SymExpr pow(const SymExpr& a, unsigned k) {
  SymExpr r(1);
  for (unsigned i = 0; i < k; ++i) r *= a;
  return r;
}

SymExpr SymExpr::substitute(AtomId a, const SymExpr& by) const {
  SymExpr out;
  for (auto& [m, q] : t_) {
    SymExpr term;
    Mono rest;
    unsigned p = 0;
    for (auto& [id, e] : m)
      if (id == a)
        p = e;
      else
        rest.push_back({id, e});
    term.add_term(rest, q);
    out += p ? term * pow(by, p) : term;
  }
  return out;
}

bool SymExpr::contains(AtomKind k) const {
  for (auto& [m, q] : t_)
    for (auto& [id, e] : m)
      if (atom(id).kind == k) return true;
  return false;
}

std::optional<Rational> ratio(const SymExpr& a, const SymExpr& b) {
  if (b.is_zero() || a.terms().size() != b.terms().size()) return std::nullopt;
  std::optional<Rational> q;
  for (auto& [m, c] : a.terms()) {
    auto it = b.terms().find(m);
    if (it == b.terms().end()) return std::nullopt;
    Rational r = c / it->second;
    if (q && *q != r) return std::nullopt;
    q = r;
  }
  return q;
}

std::vector<std::pair<SymExpr::Mono, Rational>> presentation(const SymExpr& e) {
  std::vector<std::pair<SymExpr::Mono, Rational>> v;
  for (auto& [m, q] : e.terms()) {
    SymExpr::Mono s = m;
    std::sort(s.begin(), s.end(), [](auto& x, auto& y) { return atom_less(atom(x.first), atom(y.first)); });
    v.push_back({std::move(s), q});
  }
  // terms without constants first, then by degree, then atom sequence
  auto rank = [](const SymExpr::Mono& m) {
    unsigned c = 0, deg = 0;
    for (auto& [id, e] : m) {
      if (atom(id).kind == AtomKind::Constant) c += e;
      deg += e;
    }
    return std::pair{c, deg};
  };
  std::stable_sort(v.begin(), v.end(), [&](auto& x, auto& y) {
    auto rx = rank(x.first), ry = rank(y.first);
    if (rx != ry) return rx < ry;
    return std::lexicographical_compare(x.first.begin(), x.first.end(), y.first.begin(), y.first.end(),
                                        [](auto& p, auto& q) {
                                          if (p.first != q.first) return atom_less(atom(p.first), atom(q.first));
                                          return p.second > q.second;
                                        });
  });
  return v;
}

std::string debug_str(const SymExpr& e) {
  if (e.is_zero()) return "0";
  std::string s;
  for (auto& [m, q] : presentation(e)) {
    std::string c = to_string(q);
    if (!s.empty()) s += c[0] == '-' ? " - " : " + ";
    else if (c[0] == '-') s += "-";
    if (c[0] == '-') c.erase(0, 1);
    bool unit = c == "1";
    if (!unit || m.empty()) s += c;
    bool first = unit;
    for (auto& [id, p] : m) {
      if (!first) s += "*";
      first = false;
      const Atom& a = atom(id);
      switch (a.kind) {
        case AtomKind::Noise: s += "xi[" + label_name(a.label) + "]"; break;
        case AtomKind::ModelDeriv: s += "d" + word_str(a.n) + "Pi[" + a.g.str() + "]"; break;
        case AtomKind::PolyBase: s += "X" + std::to_string(a.axis); break;
        case AtomKind::Constant: s += "c[" + a.g.str() + "]"; break;
        case AtomKind::NonlinDeriv: s += "z[" + label_name(a.label) + "," + a.k.str() + "]"; break;
        case AtomKind::Func: s += a.name + (a.order ? "^(" + std::to_string(a.order) + ")" : "") + "(u)"; break;
        case AtomKind::Param: s += a.name; break;
        case AtomKind::Sol: s += "d" + word_str(a.n) + "u"; break;
      }
      if (p > 1) s += "^" + std::to_string(p);
    }
  }
  return s;
}

}  // namespace mir
