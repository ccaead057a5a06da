#pragma once
// Helpers for writing expected values by hand.
//
// Expressions use the debug notation of the library:
//   2*Pi[e_(xi,0)]*d[0,1]Pi[2e_(xi,0)+e_(0,2e_[0,1])] - 1/2*c[...]*sigma^(2)(u)*X1*xi
// factors: rationals, c[beta], Pi[beta], d[n]Pi[beta], d[n]u, u, xi / xi[label],
// X<axis>, name(u), name^(k)(u), bare identifiers (parameters); each factor
// may carry ^power.

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

#include "mir/json_io.hpp"
#include "mir/symexpr.hpp"

namespace oracle {

using namespace mir;

inline MultiIndex mi(const std::string& s, int d) { return parse_multiindex(s, d); }

inline std::vector<MultiIndex> mis(const std::vector<std::string>& v, int d) {
  std::vector<MultiIndex> out;
  for (auto& s : v) out.push_back(mi(s, d));
  return out;
}

class ExprParser {
 public:
  ExprParser(std::string s, int d) : s_(std::move(s)), d_(d) {}

  SymExpr parse() {
    SymExpr e = eat('-') ? -term() : term();
    for (;;) {
      ws();
      if (eat('+'))
        e += term();
      else if (eat('-'))
        e -= term();
      else
        break;
    }
    ws();
    if (i_ != s_.size()) fail("trailing input");
    return e;
  }

 private:
  std::string s_;
  int d_;
  size_t i_ = 0;

  [[noreturn]] void fail(const std::string& m) {
    throw std::runtime_error("oracle expression: " + m + " at " + std::to_string(i_) + " in '" + s_ + "'");
  }
  void ws() {
    while (i_ < s_.size() && std::isspace((unsigned char)s_[i_])) ++i_;
  }
  bool eat(char c) {
    ws();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  bool eat(const std::string& w) {
    ws();
    if (s_.compare(i_, w.size(), w) == 0) {
      i_ += w.size();
      return true;
    }
    return false;
  }
  // contents of a bracket group, nesting aware; the opening bracket was eaten
  std::string group(char open, char close) {
    int depth = 1;
    size_t start = i_;
    while (i_ < s_.size()) {
      if (s_[i_] == open) ++depth;
      if (s_[i_] == close && --depth == 0) return s_.substr(start, i_++ - start);
      ++i_;
    }
    fail("unbalanced bracket");
  }
  Word word() {
    if (!eat('[')) fail("expected word");
    Word w;
    std::string g = group('[', ']');
    size_t p = 0;
    while (p < g.size()) {
      size_t q = g.find(',', p);
      if (q == std::string::npos) q = g.size();
      w.push_back(std::stoi(g.substr(p, q - p)));
      p = q + 1;
    }
    if ((int)w.size() != d_) fail("word of wrong dimension");
    return w;
  }
  unsigned power() {
    if (!eat('^')) return 1;
    size_t st = i_;
    while (i_ < s_.size() && std::isdigit((unsigned char)s_[i_])) ++i_;
    if (st == i_) fail("expected exponent");
    return (unsigned)std::stoul(s_.substr(st, i_ - st));
  }
  SymExpr term() {
    SymExpr e(1);
    e *= factor();
    while (eat('*')) e *= factor();
    return e;
  }
  SymExpr factor() {
    ws();
    if (i_ >= s_.size()) fail("expected factor");
    char c = s_[i_];
    if (std::isdigit((unsigned char)c)) {
      size_t st = i_;
      while (i_ < s_.size() && (std::isdigit((unsigned char)s_[i_]) || s_[i_] == '/')) ++i_;
      return SymExpr(parse_rational(s_.substr(st, i_ - st)));
    }
    if (eat("c[")) {
      Atom a = Atom::constant(mi(group('[', ']'), d_));
      return SymExpr::of(a, power());
    }
    if (eat("Pi[")) {
      Atom a = Atom::model(zero_word(d_), mi(group('[', ']'), d_));
      return SymExpr::of(a, power());
    }
    if (c == 'd' && i_ + 1 < s_.size() && s_[i_ + 1] == '[') {
      ++i_;
      Word n = word();
      if (eat("Pi[")) {
        Atom a = Atom::model(n, mi(group('[', ']'), d_));
        return SymExpr::of(a, power());
      }
      if (eat('u')) return SymExpr::of(Atom::sol(n), power());
      fail("expected Pi[..] or u after d[n]");
    }
    // identifiers
    size_t st = i_;
    while (i_ < s_.size() && (std::isalnum((unsigned char)s_[i_]) || s_[i_] == '_')) ++i_;
    std::string id = s_.substr(st, i_ - st);
    if (id.empty()) fail("unexpected character");
    if (id == "u") return SymExpr::of(Atom::sol(zero_word(d_)), power());
    if (id == "xi") {
      std::string l = "xi";
      if (eat('[')) l = group('[', ']');
      Atom a = Atom::noise(intern_label(l));
      return SymExpr::of(a, power());
    }
    if (id.size() > 1 && id[0] == 'X' && std::isdigit((unsigned char)id[1]))
      return SymExpr::of(Atom::poly(std::stoi(id.substr(1))), power());
    int order = 0;
    bool fn = false;
    if (eat("^(")) {
      order = std::stoi(group('(', ')'));
      fn = true;
    }
    if (eat("(u)")) fn = true;
    else if (fn) fail("expected (u)");
    if (fn) return SymExpr::of(Atom::func(id, order), power());
    return SymExpr::of(Atom::param(id), power());
  }
};

inline SymExpr expr(const std::string& s, int d) { return ExprParser(s, d).parse(); }

}  // namespace oracle
