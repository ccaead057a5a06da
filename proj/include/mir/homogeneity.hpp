#pragma once
#include <compare>
#include <gmpxx.h>
#include <string>
#include <string_view>

namespace mir {

using Rational = mpq_class;

Rational parse_rational(std::string_view s);
std::string to_string(const Rational& q);
Rational factorial(unsigned n);
Rational binomial(long n, long k);

// a + b*kappa, kappa a formal positive infinitesimal.  Ordering is the
// kappa -> 0+ limit, i.e. lexicographic on (a, b).
struct Hom {
  Rational base;
  Rational kappa;

  Hom() = default;
  Hom(Rational a, Rational b = 0) : base(std::move(a)), kappa(std::move(b)) {}
  Hom(long a) : base(a), kappa(0) {}

  Hom& operator+=(const Hom& o) { base += o.base; kappa += o.kappa; return *this; }
  Hom& operator-=(const Hom& o) { base -= o.base; kappa -= o.kappa; return *this; }
  friend Hom operator+(Hom a, const Hom& b) { return a += b; }
  friend Hom operator-(Hom a, const Hom& b) { return a -= b; }
  friend Hom operator-(const Hom& a) { return Hom(-a.base, -a.kappa); }
  friend Hom operator*(const Rational& q, const Hom& h) {
    return Hom(q * h.base, q * h.kappa);
  }
  friend Hom operator*(long q, const Hom& h) { return Rational(q) * h; }

  friend bool operator==(const Hom& a, const Hom& b) {
    return a.base == b.base && a.kappa == b.kappa;
  }
  friend std::strong_ordering operator<=>(const Hom& a, const Hom& b) {
    int c = cmp(a.base, b.base);
    if (c == 0) c = cmp(a.kappa, b.kappa);
    return c < 0 ? std::strong_ordering::less
                 : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  bool is_zero() const { return sgn(base) == 0 && sgn(kappa) == 0; }
  // evaluate with a concrete kappa (cross-validation only)
  Rational at(const Rational& k) const { return base + kappa * k; }
  std::string str() const;  // "-3/2-2k"
};

int hom_cmp(const Hom& a, const Hom& b);
Hom min(const Hom& a, const Hom& b);
Hom max(const Hom& a, const Hom& b);
Hom parse_hom(std::string_view s);  // accepts "a", "a+bk", "a-bk"

}  // namespace mir
