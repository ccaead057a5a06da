#include "mir/json_io.hpp"

#include <cctype>

#include "mir/errors.hpp"

namespace mir {

using nlohmann::json;

json to_json(const Hom& h) { return {{"base", h.base.get_str()}, {"kappa", h.kappa.get_str()}}; }

Hom hom_from_json(const json& j) {
  if (j.is_string()) return parse_hom(j.get<std::string>());
  if (j.is_number_integer()) return Hom(j.get<long>());
  if (!j.is_object()) throw SchemaError("homogeneity must be an object or string");
  for (auto& [k, v] : j.items())
    if (k != "base" && k != "kappa") throw SchemaError("unknown homogeneity key '" + k + "'");
  if (!j.contains("base")) throw SchemaError("homogeneity needs 'base'");
  auto rat = [](const json& v) {
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (!v.is_string()) throw SchemaError("rationals are written as strings");
    return parse_rational(v.get<std::string>());
  };
  return Hom(rat(j["base"]), j.contains("kappa") ? rat(j["kappa"]) : Rational(0));
}

json to_json(const Word& w) { return json(w); }

Word word_from_json(const json& j, int d) {
  if (!j.is_array() || (int)j.size() != d)
    throw SchemaError("derivative word must be an array of length " + std::to_string(d));
  Word w;
  for (auto& x : j) {
    if (!x.is_number_integer() || x.get<int>() < 0)
      throw SchemaError("derivative word entries must be natural numbers");
    w.push_back(x.get<int>());
  }
  return w;
}

json to_json(const MultiIndex& m) {
  json arr = json::array();
  for (auto& [c, n] : m.canonical_terms()) {
    const Coord& s = coord(c);
    json sym;
    if (s.poly) {
      sym["poly"] = to_json(s.n);
    } else {
      json k = json::array();
      for (auto& [w, cnt] : s.k.terms()) k.push_back({to_json(w), cnt});
      sym["pair"] = {{"noise", label_name(s.label)}, {"k", k}};
    }
    arr.push_back({{"sym", sym}, {"count", n}});
  }
  return arr;
}

MultiIndex multiindex_from_json(const json& j, int d) {
  if (!j.is_array()) throw SchemaError("multi-index must be an array");
  MultiIndex m;
  for (auto& e : j) {
    if (!e.is_object() || !e.contains("sym") || !e.contains("count"))
      throw SchemaError("multi-index entry needs 'sym' and 'count'");
    const json& sym = e["sym"];
    unsigned cnt = e["count"].get<unsigned>();
    Coord c;
    if (sym.contains("poly")) {
      c = Coord::polynomial(word_from_json(sym["poly"], d));
    } else if (sym.contains("pair")) {
      const json& p = sym["pair"];
      std::vector<std::pair<Word, int>> terms;
      for (auto& t : p.at("k")) terms.emplace_back(word_from_json(t.at(0), d), t.at(1).get<int>());
      c = Coord::pair(intern_label(p.at("noise").get<std::string>()), KWord::from_terms(terms));
    } else {
      throw SchemaError("symbol must be 'pair' or 'poly'");
    }
    m.add(intern(c), cnt);
  }
  return m;
}

// ------------------------------------------------------------ text form

namespace {
struct TextParser {
  const std::string& s;
  int d;
  size_t i = 0;

  [[noreturn]] void fail(const std::string& what) {
    throw ParseError("multi-index '" + s + "' at " + std::to_string(i) + ": " + what);
  }
  void ws() {
    while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
  }
  bool eat(char c) {
    ws();
    if (i < s.size() && s[i] == c) return ++i, true;
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  int number() {
    ws();
    size_t j = i;
    while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
    if (j == i) fail("expected number");
    return std::stoi(s.substr(j, i - j));
  }
  int count() {
    ws();
    return i < s.size() && std::isdigit((unsigned char)s[i]) ? number() : 1;
  }
  void unit_prefix() {
    ws();
    if (s.compare(i, 2, "e_") != 0) fail("expected 'e_'");
    i += 2;
  }
  Word word() {
    expect('[');
    Word w;
    do w.push_back(number());
    while (eat(','));
    expect(']');
    if ((int)w.size() != d) fail("word has wrong dimension");
    return w;
  }
  KWord kword() {
    ws();
    if (i < s.size() && s[i] == '0' && (i + 1 >= s.size() || s[i + 1] == ')' || std::isspace((unsigned char)s[i + 1]))) {
      ++i;
      return {};
    }
    std::vector<std::pair<Word, int>> t;
    do {
      int c = count();
      unit_prefix();
      t.emplace_back(word(), c);
    } while (eat('+'));
    return KWord::from_terms(t);
  }
  MultiIndex parse() {
    MultiIndex m;
    ws();
    if (s.substr(i) == "0") return m;
    do {
      int c = count();
      unit_prefix();
      ws();
      if (i < s.size() && s[i] == '[') {
        m.add(intern(Coord::polynomial(word())), c);
      } else {
        expect('(');
        ws();
        size_t j = i;
        while (i < s.size() && s[i] != ',') ++i;
        std::string label = s.substr(j, i - j);
        while (!label.empty() && std::isspace((unsigned char)label.back())) label.pop_back();
        if (label.empty()) fail("empty label");
        expect(',');
        KWord k = kword();
        expect(')');
        m.add(intern(Coord::pair(intern_label(label), k)), c);
      }
    } while (eat('+'));
    ws();
    if (i != s.size()) fail("trailing input");
    return m;
  }
};
}  // namespace

MultiIndex parse_multiindex(const std::string& text, int d) { return TextParser{text, d}.parse(); }

}  // namespace mir
