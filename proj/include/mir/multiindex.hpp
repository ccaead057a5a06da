#pragma once
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace mir {

// element of N_0^d; index 0 is the first axis
using Word = std::vector<int>;

Word zero_word(int d);
Word unit_word(int d, int axis);
int word_length(const Word& n);
bool word_le(const Word& a, const Word& b);  // component-wise
Word word_add(const Word& a, const Word& b);
Word word_sub(const Word& a, const Word& b);
std::string word_str(const Word& n);  // "(0,1)"

// Finitely supported map N_0^d -> N, stored sorted by word.
class KWord {
 public:
  KWord() = default;
  static KWord from_terms(std::vector<std::pair<Word, int>> terms);

  int operator[](const Word& n) const;
  int length() const;  // sum of counts
  bool empty() const { return terms_.empty(); }
  KWord plus(const Word& n, int c = 1) const;
  // returns false if k(n) < c
  bool minus(const Word& n, KWord& out, int c = 1) const;
  const std::vector<std::pair<Word, int>>& terms() const { return terms_; }
  bool le(const KWord& o) const;

  friend bool operator==(const KWord&, const KWord&) = default;
  friend auto operator<=>(const KWord&, const KWord&) = default;
  std::string str() const;

 private:
  std::vector<std::pair<Word, int>> terms_;
};

using LabelId = int;
LabelId intern_label(const std::string& name);
const std::string& label_name(LabelId id);

// coordinate symbol: z_(l,k) or z_n
struct Coord {
  bool poly = false;
  LabelId label = -1;
  KWord k;
  Word n;

  static Coord pair(LabelId l, KWord k) { return Coord{false, l, std::move(k), {}}; }
  static Coord polynomial(Word n) { return Coord{true, -1, {}, std::move(n)}; }
  bool operator==(const Coord& o) const {
    return poly == o.poly && label == o.label && k == o.k && n == o.n;
  }
  std::string str() const;
};

// canonical total order: pairs before polys, then by contents
bool coord_less(const Coord& a, const Coord& b);

using CoordId = std::uint32_t;
CoordId intern(const Coord& c);
const Coord& coord(CoordId id);
bool coord_id_less(CoordId a, CoordId b);  // canonical order via coord_less

// Finitely supported map Coord -> N.  Stored as (id, count) pairs sorted by
// id, which makes the representation unique; canonical_terms() gives the
// presentation order.
class MultiIndex {
 public:
  using Entry = std::pair<CoordId, std::uint32_t>;

  MultiIndex() = default;
  static MultiIndex unit(CoordId c, unsigned count = 1);
  static MultiIndex from(const std::vector<std::pair<Coord, unsigned>>& terms);

  unsigned operator[](CoordId c) const;
  unsigned length() const;
  bool empty() const { return e_.empty(); }
  const std::vector<Entry>& entries() const { return e_; }
  std::vector<Entry> canonical_terms() const;

  MultiIndex& add(CoordId c, unsigned count = 1);
  // false if the count would go negative
  bool remove(CoordId c, unsigned count = 1);
  MultiIndex plus(const MultiIndex& o) const;
  bool minus(const MultiIndex& o, MultiIndex& out) const;
  bool le(const MultiIndex& o) const;  // component-wise
  // the only coordinate if this is a unit e_c
  bool is_unit(CoordId* c = nullptr) const;

  size_t hash() const;
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  // fast storage order (not canonical)
  friend bool operator<(const MultiIndex& a, const MultiIndex& b) { return a.e_ < b.e_; }

  std::string str() const;  // "2e_(xi,0)+e_(0,2e_(0,1))"

 private:
  std::vector<Entry> e_;
};

// canonical (presentation) order of multi-indices
bool canonical_less(const MultiIndex& a, const MultiIndex& b);

struct MultiIndexHash {
  size_t operator()(const MultiIndex& m) const { return m.hash(); }
};

inline size_t hash_combine(size_t seed, size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}
size_t word_hash(const Word& w);

}  // namespace mir

template <>
struct std::hash<mir::MultiIndex> {
  size_t operator()(const mir::MultiIndex& m) const { return m.hash(); }
};
