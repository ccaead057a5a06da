#include "mir/trees.hpp"

#include <algorithm>
#include <cctype>

#include "mir/errors.hpp"
#include "mir/structure.hpp"

namespace mir {

DecTree DecTree::X(Word n) {
  DecTree t;
  t.leaf = true;
  t.n = std::move(n);
  return t;
}

DecTree DecTree::node(LabelId l, std::vector<std::pair<Word, DecTree>> ch) {
  DecTree t;
  t.leaf = false;
  t.label = l;
  t.children = std::move(ch);
  t.normalize();
  return t;
}

void DecTree::normalize() {
  std::sort(children.begin(), children.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  });
}

bool operator<(const DecTree& a, const DecTree& b) {
  if (a.leaf != b.leaf) return a.leaf;  // leaves first
  if (a.leaf) return a.n < b.n;
  if (a.label != b.label) return label_name(a.label) < label_name(b.label);
  if (a.children.size() != b.children.size()) return a.children.size() < b.children.size();
  for (size_t i = 0; i < a.children.size(); ++i) {
    auto& x = a.children[i];
    auto& y = b.children[i];
    if (x.first != y.first) return x.first < y.first;
    if (x.second < y.second) return true;
    if (y.second < x.second) return false;
  }
  return false;
}

unsigned DecTree::size() const {
  unsigned s = 1;
  for (auto& c : children) s += c.second.size();
  return s;
}

KWord DecTree::fertility() const {
  std::vector<std::pair<Word, int>> t;
  for (auto& c : children) t.push_back({c.first, 1});
  return KWord::from_terms(std::move(t));
}

static std::string word_plain(const Word& w) {
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return s;
}

std::string DecTree::str() const {
  if (leaf) return "X[" + word_plain(n) + "]";
  std::string s = "Xi(" + label_name(label);
  for (size_t i = 0; i < children.size(); ++i)
    s += (i ? ", " : "; ") + std::string("I[") + word_plain(children[i].first) + "](" + children[i].second.str() + ")";
  return s + ")";
}

void accumulate(TreeCombo& c, const DecTree& t, const Rational& q) {
  if (!sgn(q)) return;
  auto [it, fresh] = c.try_emplace(t, q);
  if (!fresh) {
    it->second += q;
    if (!sgn(it->second)) c.erase(it);
  }
}

TreeCombo graft(const DecTree& sigma, const Word& n, const DecTree& tau) {
  TreeCombo out;
  if (tau.leaf) {
    if (tau.n == n) accumulate(out, sigma, 1);
    return out;
  }
  // attach at the root
  {
    DecTree t = tau;
    t.children.push_back({n, sigma});
    t.normalize();
    accumulate(out, t, 1);
  }
  // graft into each child
  for (size_t j = 0; j < tau.children.size(); ++j)
    for (auto& [sub, q] : graft(sigma, n, tau.children[j].second)) {
      DecTree t = tau;
      t.children[j].second = sub;
      t.normalize();
      accumulate(out, t, q);
    }
  return out;
}

TreeCombo graft(const DecTree& sigma, const Word& n, const TreeCombo& tau) {
  TreeCombo out;
  for (auto& [t, q] : tau)
    for (auto& [r, c] : graft(sigma, n, t)) accumulate(out, r, q * c);
  return out;
}

bool tree_admissible(const Structure& S, const DecTree& t) {
  if (t.leaf) return true;
  if (!S.is_admissible_pair(t.label, t.fertility())) return false;
  for (auto& c : t.children)
    if (!tree_admissible(S, c.second)) return false;
  return true;
}

static void leaf_words(const DecTree& t, std::vector<Word>& out) {
  if (t.leaf) {
    if (std::find(out.begin(), out.end(), t.n) == out.end()) out.push_back(t.n);
    return;
  }
  for (auto& c : t.children) leaf_words(c.second, out);
}

TreeCombo up(const Structure& S, int axis, const DecTree& tau) {
  std::vector<Word> ns(S.low_words());
  leaf_words(tau, ns);
  TreeCombo out;
  for (auto& n : ns) {
    Word m = n;
    if ((int)m.size() != S.d()) continue;
    ++m[axis];
    for (auto& [t, q] : graft(DecTree::X(m), n, tau))
      if (tree_admissible(S, t)) accumulate(out, t, q);
  }
  return out;
}

TreeCombo up(const Structure& S, int axis, const TreeCombo& tau) {
  TreeCombo out;
  for (auto& [t, q] : tau)
    for (auto& [r, c] : up(S, axis, t)) accumulate(out, r, q * c);
  return out;
}

std::pair<Rational, MultiIndex> psi(const DecTree& t) {
  if (t.leaf) {
    Rational f = 1;
    for (int c : t.n) f *= factorial(c);
    return {f, MultiIndex::unit(intern(Coord::polynomial(t.n)))};
  }
  KWord k = t.fertility();
  Rational f = 1;
  for (auto& [w, c] : k.terms()) f *= factorial(c);
  MultiIndex b = MultiIndex::unit(intern(Coord::pair(t.label, k)));
  for (auto& [m, sub] : t.children) {
    auto [g, beta] = psi(sub);
    Rational mf = 1;
    for (int c : m) mf *= factorial(c);
    f *= g / mf;
    b = b.plus(beta);
  }
  return {f, b};
}

namespace {
struct TreeParser {
  const std::string& s;
  size_t i = 0;
  int d;

  void ws() {
    while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw ParseError("tree: " + what + " at offset " + std::to_string(i));
  }
  void expect(char c) {
    ws();
    if (i >= s.size() || s[i] != c) fail(std::string("expected '") + c + "'");
    ++i;
  }
  bool peek(char c) {
    ws();
    return i < s.size() && s[i] == c;
  }
  bool keyword(const char* k) {
    ws();
    size_t n = std::char_traits<char>::length(k);
    if (s.compare(i, n, k) == 0) {
      i += n;
      return true;
    }
    return false;
  }
  Word word() {
    expect('[');
    Word w;
    for (;;) {
      ws();
      size_t st = i;
      while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
      if (st == i) fail("expected number");
      w.push_back(std::stoi(s.substr(st, i - st)));
      if (peek(',')) {
        ++i;
        continue;
      }
      break;
    }
    expect(']');
    if (w.size() == 1 && w[0] == 0) return Word(d, 0);
    if ((int)w.size() != d) fail("word of wrong dimension");
    return w;
  }
  DecTree tree() {
    if (keyword("Xi")) {
      expect('(');
      ws();
      size_t st = i;
      while (i < s.size() && s[i] != ';' && s[i] != ')' && !std::isspace((unsigned char)s[i])) ++i;
      if (st == i) fail("expected label");
      LabelId l = intern_label(s.substr(st, i - st));
      std::vector<std::pair<Word, DecTree>> ch;
      if (peek(';')) {
        ++i;
        for (;;) {
          if (!keyword("I")) fail("expected I[m](...)");
          Word m = word();
          expect('(');
          DecTree sub = tree();
          expect(')');
          ch.push_back({m, std::move(sub)});
          if (peek(',')) {
            ++i;
            continue;
          }
          break;
        }
      }
      expect(')');
      return DecTree::node(l, std::move(ch));
    }
    if (keyword("X")) return DecTree::X(word());
    fail("expected Xi(...) or X[...]");
  }
};
}  // namespace

DecTree parse_tree(const std::string& text, int d) {
  TreeParser p{text, 0, d};
  DecTree t = p.tree();
  p.ws();
  if (p.i != text.size()) p.fail("trailing input");
  return t;
}

}  // namespace mir
