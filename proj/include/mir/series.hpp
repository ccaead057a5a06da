#pragma once
#include <algorithm>
#include <unordered_map>
#include <vector>

#include "mir/homogeneity.hpp"
#include "mir/multiindex.hpp"

namespace mir {

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

// Sparse power series / polynomial in the coordinates z with coefficients in R.
template <class R>
using Series = std::unordered_map<MultiIndex, R, MultiIndexHash>;

template <class R>
void accumulate(Series<R>& s, const MultiIndex& m, const R& v) {
  if (is_zero(v)) return;
  auto [it, fresh] = s.try_emplace(m, v);
  if (!fresh) {
    it->second += v;
    if (is_zero(it->second)) s.erase(it);
  }
}

template <class R>
void accumulate(Series<R>& s, const Series<R>& t, const R& scale) {
  for (auto& [m, v] : t) accumulate(s, m, R(v * scale));
}

// product truncated to monomials <= bound (component-wise)
template <class R>
Series<R> multiply_below(const Series<R>& a, const Series<R>& b, const MultiIndex& bound) {
  Series<R> out;
  for (auto& [ma, va] : a) {
    if (!ma.le(bound)) continue;
    for (auto& [mb, vb] : b) {
      MultiIndex m = ma.plus(mb);
      if (m.le(bound)) accumulate(out, m, R(va * vb));
    }
  }
  return out;
}

template <class R>
R coefficient(const Series<R>& s, const MultiIndex& m) {
  auto it = s.find(m);
  return it == s.end() ? R(0) : it->second;
}

// entries in canonical monomial order (deterministic output)
template <class R>
std::vector<std::pair<MultiIndex, R>> sorted_entries(const Series<R>& s) {
  std::vector<std::pair<MultiIndex, R>> v(s.begin(), s.end());
  std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return canonical_less(x.first, y.first); });
  return v;
}

}  // namespace mir
