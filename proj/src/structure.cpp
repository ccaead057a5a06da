#include "mir/structure.hpp"

#include <functional>

#include "mir/errors.hpp"

namespace mir {

const char* to_string(PopClass c) {
  switch (c) {
    case PopClass::N: return "N";
    case PopClass::Nbar: return "Nbar";
    case PopClass::P: return "P";
    default: return "Outside";
  }
}

PopClass parse_class(const std::string& s) {
  if (s == "N") return PopClass::N;
  if (s == "Nbar") return PopClass::Nbar;
  if (s == "P") return PopClass::P;
  throw ParseError("unknown class '" + s + "' (expected N, Nbar or P)");
}

unsigned length(const MultiIndex& b) { return b.length(); }

long bracket(const MultiIndex& b) {
  long s = 0;
  for (auto& [c, n] : b.entries()) {
    const Coord& x = coord(c);
    s += (x.poly ? 1L : 1L - x.k.length()) * (long)n;
  }
  return s;
}

Structure::Structure(EquationSpec spec) : spec_(std::move(spec)) {
  validate(spec_);
  unit_ = spec_.unit_noise().id;
  // all words with |n| < eta
  Word w(spec_.d, 0);
  std::function<void(int)> rec = [&](int axis) {
    if (axis == spec_.d) {
      if (spec_.scaled_degree(w) < spec_.eta) low_words_.push_back(w);
      return;
    }
    for (w[axis] = 0; spec_.scaled_degree(w) < spec_.eta; ++w[axis]) rec(axis + 1);
    w[axis] = 0;
  };
  rec(0);
  std::sort(low_words_.begin(), low_words_.end());
}

CoordId Structure::pair_coord(const std::string& label, const KWord& k) const {
  const Noise* z = spec_.find_noise(label);
  if (!z) throw Error("unknown noise label '" + label + "'");
  return intern(Coord::pair(z->id, k));
}

bool Structure::is_subcritical_pair(LabelId l, const KWord& k) const {
  const Noise& z = spec_.noise(l);
  if (k.empty()) return spec_.regsol < spec_.eta + z.reg;
  Hom m;  // min over 0 < k' <= k, attained by keeping only the negative terms
  bool any_neg = false;
  Hom least;  // least single term, used when no term is negative
  bool first = true;
  for (auto& [n, c] : k.terms()) {
    Hom t = spec_.regsol - spec_.scaled_degree(n);
    if (t < Hom(0)) {
      m += c * t;
      any_neg = true;
    }
    if (first || t < least) least = t, first = false;
  }
  // k' must be nonzero: if nothing is negative the minimum is the smallest term
  if (!any_neg) m = least;
  Hom inner = min(z.reg, min(m, z.reg + m));
  return spec_.regsol < spec_.eta + inner;
}

bool Structure::is_nonzero_pair(LabelId l, const KWord& k) const {
  const Noise& z = spec_.noise(l);
  if (!z.nonlinearity) return true;
  for (auto& t : *z.nonlinearity) {
    bool ok = true;
    for (auto& [n, c] : k.terms()) {
      int p = t.power_of(n);
      if (p >= 0 && p < c) { ok = false; break; }
    }
    if (ok) return true;
  }
  return false;
}

const Structure::CoordInfo& Structure::info(CoordId c) const {
  std::lock_guard lk(mu_);
  auto it = info_.find(c);
  if (it != info_.end()) return *it->second;
  auto ci = std::make_unique<CoordInfo>();
  const Coord& x = coord(c);
  ci->poly = x.poly;
  if (x.poly) {
    ci->bracket = 1;
    Hom deg = spec_.scaled_degree(x.n);
    ci->hom = deg - spec_.eta;
    ci->admissible = (int)x.n.size() == spec_.d && !(spec_.restrict_low_poly && deg < spec_.regsol);
  } else {
    bool known = false;
    for (auto& z : spec_.noises) known |= z.id == x.label;
    ci->bracket = 1 - x.k.length();
    if (known) {
      const Noise& z = spec_.noise(x.label);
      ci->noise = !z.unit;
      Hom h = z.alpha;
      bool dims = true;
      for (auto& [n, k] : x.k.terms()) {
        dims &= (int)n.size() == spec_.d;
        if (dims) h += k * (spec_.eta - spec_.scaled_degree(n));
      }
      ci->hom = h;
      ci->admissible = dims && is_admissible_pair(x.label, x.k);
    }
  }
  return *info_.emplace(c, std::move(ci)).first->second;
}

std::optional<CoordId> Structure::shift_pair(CoordId pair, const Word& n) const {
  {
    std::lock_guard lk(mu_);
    auto it = shift_.find(ShiftKey{pair, n});
    if (it != shift_.end()) return it->second;
  }
  const Coord& x = coord(pair);
  std::optional<CoordId> r;
  Coord y = Coord::pair(x.label, x.k.plus(n));
  CoordId yid = intern(y);
  if (info(yid).admissible) r = yid;
  std::lock_guard lk(mu_);
  shift_.emplace(ShiftKey{pair, n}, r);
  return r;
}

unsigned Structure::noise_homogeneity(const MultiIndex& b) const {
  unsigned s = 0;
  for (auto& [c, n] : b.entries())
    if (info(c).noise) s += n;
  return s;
}

Hom Structure::poly_degree(const MultiIndex& b) const {
  Hom s;
  for (auto& [c, n] : b.entries()) {
    const Coord& x = coord(c);
    if (x.poly) s += (long)n * spec_.scaled_degree(x.n);
  }
  return s;
}

Hom Structure::homogeneity(const MultiIndex& b) const {
  Hom s;
  for (auto& [c, n] : b.entries()) s += (long)n * info(c).hom;
  return s;
}

PopClass Structure::classify(const MultiIndex& b) const {
  if (b.empty()) return PopClass::Outside;
  CoordId c;
  if (b.is_unit(&c) && coord(c).poly) return PopClass::P;
  if (bracket(b) != 1) return PopClass::Outside;
  for (auto& [id, n] : b.entries())
    if (!info(id).admissible) return PopClass::Outside;
  return noise_homogeneity(b) > 0 ? PopClass::N : PopClass::Nbar;
}

}  // namespace mir
