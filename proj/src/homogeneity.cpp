#include "mir/homogeneity.hpp"
#include "mir/errors.hpp"

#include <cctype>

namespace mir {

Rational parse_rational(std::string_view s) {
  std::string t(s);
  while (!t.empty() && std::isspace((unsigned char)t.back())) t.pop_back();
  size_t i = 0;
  while (i < t.size() && std::isspace((unsigned char)t[i])) ++i;
  t = t.substr(i);
  if (!t.empty() && t[0] == '+') t = t.substr(1);
  if (t.empty()) throw ParseError("empty rational");
  for (char c : t)
    if (!(std::isdigit((unsigned char)c) || c == '/' || c == '-'))
      throw ParseError("bad rational '" + std::string(s) + "'");
  Rational q;
  if (q.set_str(t, 10) != 0) throw ParseError("bad rational '" + std::string(s) + "'");
  if (q.get_den() == 0) throw ParseError("zero denominator");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational factorial(unsigned n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return Rational(r);
}

Rational binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), (unsigned long)n, (unsigned long)k);
  return Rational(r);
}

std::string Hom::str() const {
  std::string s;
  if (sgn(base) != 0 || sgn(kappa) == 0) s = base.get_str();
  if (sgn(kappa) != 0) {
    Rational a = abs(kappa);
    std::string coef = a == 1 ? "" : a.get_str();
    if (sgn(kappa) < 0)
      s += "-";
    else if (!s.empty())
      s += "+";
    s += coef + "k";
  }
  return s;
}

int hom_cmp(const Hom& a, const Hom& b) {
  auto c = a <=> b;
  return c < 0 ? -1 : c > 0 ? 1 : 0;
}
Hom min(const Hom& a, const Hom& b) { return a < b ? a : b; }
Hom max(const Hom& a, const Hom& b) { return a < b ? b : a; }

Hom parse_hom(std::string_view s) {
  std::string t;
  for (char c : s)
    if (!std::isspace((unsigned char)c)) t += c;
  if (t.empty()) throw ParseError("empty homogeneity");
  if (t.back() != 'k') return Hom(parse_rational(t));
  // split at the last sign that is not the first character
  size_t pos = std::string::npos;
  for (size_t i = t.size() - 1; i > 0; --i)
    if (t[i] == '+' || t[i] == '-') { pos = i; break; }
  std::string base = pos == std::string::npos ? "0" : t.substr(0, pos);
  std::string kap = pos == std::string::npos ? t.substr(0, t.size() - 1)
                                              : t.substr(pos, t.size() - 1 - pos);
  if (kap.empty() || kap == "+") kap = "1";
  if (kap == "-") kap = "-1";
  return Hom(parse_rational(base), parse_rational(kap));
}

}  // namespace mir
