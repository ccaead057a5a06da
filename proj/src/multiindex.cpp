#include "mir/multiindex.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace mir {

Word zero_word(int d) { return Word(d, 0); }
Word unit_word(int d, int axis) {
  Word w(d, 0);
  w.at(axis) = 1;
  return w;
}
int word_length(const Word& n) {
  int s = 0;
  for (int x : n) s += x;
  return s;
}
bool word_le(const Word& a, const Word& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}
Word word_add(const Word& a, const Word& b) {
  Word r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}
Word word_sub(const Word& a, const Word& b) {
  Word r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}
std::string word_str(const Word& n) {
  std::string s = "[";
  for (size_t i = 0; i < n.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(n[i]);
  }
  return s + "]";
}
size_t word_hash(const Word& w) {
  size_t h = w.size();
  for (int x : w) h = hash_combine(h, (size_t)x);
  return h;
}

// ---------------------------------------------------------------- KWord

KWord KWord::from_terms(std::vector<std::pair<Word, int>> terms) {
  std::map<Word, int> acc;
  for (auto& [w, c] : terms) {
    if (c < 0) throw std::invalid_argument("negative count in k");
    acc[w] += c;
  }
  KWord k;
  for (auto& [w, c] : acc)
    if (c) k.terms_.emplace_back(w, c);
  return k;
}

int KWord::operator[](const Word& n) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), n,
                             [](const auto& t, const Word& w) { return t.first < w; });
  return it != terms_.end() && it->first == n ? it->second : 0;
}

int KWord::length() const {
  int s = 0;
  for (auto& t : terms_) s += t.second;
  return s;
}

KWord KWord::plus(const Word& n, int c) const {
  KWord r(*this);
  auto it = std::lower_bound(r.terms_.begin(), r.terms_.end(), n,
                             [](const auto& t, const Word& w) { return t.first < w; });
  if (it != r.terms_.end() && it->first == n)
    it->second += c;
  else
    r.terms_.insert(it, {n, c});
  return r;
}

bool KWord::minus(const Word& n, KWord& out, int c) const {
  out = *this;
  auto it = std::lower_bound(out.terms_.begin(), out.terms_.end(), n,
                             [](const auto& t, const Word& w) { return t.first < w; });
  if (it == out.terms_.end() || it->first != n || it->second < c) return false;
  it->second -= c;
  if (it->second == 0) out.terms_.erase(it);
  return true;
}

bool KWord::le(const KWord& o) const {
  for (auto& [w, c] : terms_)
    if (o[w] < c) return false;
  return true;
}

std::string KWord::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (auto& [w, c] : terms_) {
    if (!s.empty()) s += "+";
    if (c != 1) s += std::to_string(c);
    s += "e_" + word_str(w);
  }
  return s;
}

// ---------------------------------------------------------------- labels

namespace {
std::mutex label_mu;
std::vector<std::string>& label_names() {
  static std::vector<std::string> v;
  return v;
}
std::unordered_map<std::string, LabelId>& label_ids() {
  static std::unordered_map<std::string, LabelId> m;
  return m;
}
}  // namespace

LabelId intern_label(const std::string& name) {
  std::lock_guard lk(label_mu);
  auto& ids = label_ids();
  auto it = ids.find(name);
  if (it != ids.end()) return it->second;
  auto& names = label_names();
  names.reserve(1024);  // names are few; keep references stable
  if (names.size() >= 1024) throw std::length_error("too many noise labels");
  LabelId id = (LabelId)names.size();
  names.push_back(name);
  ids.emplace(name, id);
  return id;
}

const std::string& label_name(LabelId id) {
  std::lock_guard lk(label_mu);
  return label_names().at(id);
}

// ---------------------------------------------------------------- coords

std::string Coord::str() const {
  if (poly) return word_str(n);
  return "(" + label_name(label) + "," + k.str() + ")";
}

bool coord_less(const Coord& a, const Coord& b) {
  if (a.poly != b.poly) return !a.poly;
  if (a.poly) return a.n < b.n;
  if (a.label != b.label) return label_name(a.label) < label_name(b.label);
  return a.k < b.k;
}

namespace {
struct CoordKeyHash {
  size_t operator()(const Coord& c) const {
    size_t h = c.poly ? 0x51 : (size_t)c.label;
    h = hash_combine(h, word_hash(c.n));
    for (auto& [w, k] : c.k.terms()) h = hash_combine(hash_combine(h, word_hash(w)), (size_t)k);
    return h;
  }
};

// Append-only chunked store: lookups by id never take a lock.
constexpr size_t kChunkBits = 12, kChunk = size_t(1) << kChunkBits, kMaxChunks = 1 << 14;
struct CoordStore {
  std::mutex mu;
  std::unordered_map<Coord, CoordId, CoordKeyHash> ids;
  std::array<std::atomic<Coord*>, kMaxChunks> chunks{};
  std::atomic<uint32_t> size{0};
  ~CoordStore() {
    for (auto& c : chunks) delete[] c.load();
  }
};
CoordStore& store() {
  static CoordStore s;
  return s;
}
}  // namespace

CoordId intern(const Coord& c) {
  auto& s = store();
  std::lock_guard lk(s.mu);
  auto it = s.ids.find(c);
  if (it != s.ids.end()) return it->second;
  uint32_t id = s.size.load();
  size_t ch = id >> kChunkBits;
  if (ch >= kMaxChunks) throw std::length_error("coordinate table full");
  if (!s.chunks[ch].load()) s.chunks[ch].store(new Coord[kChunk]);
  s.chunks[ch].load()[id & (kChunk - 1)] = c;
  s.size.store(id + 1);
  s.ids.emplace(c, id);
  return id;
}

const Coord& coord(CoordId id) {
  return store().chunks[id >> kChunkBits].load()[id & (kChunk - 1)];
}

bool coord_id_less(CoordId a, CoordId b) { return a != b && coord_less(coord(a), coord(b)); }

// ---------------------------------------------------------------- MultiIndex

MultiIndex MultiIndex::unit(CoordId c, unsigned count) {
  MultiIndex m;
  if (count) m.e_.emplace_back(c, count);
  return m;
}

MultiIndex MultiIndex::from(const std::vector<std::pair<Coord, unsigned>>& terms) {
  MultiIndex m;
  for (auto& [c, n] : terms) m.add(intern(c), n);
  return m;
}

unsigned MultiIndex::operator[](CoordId c) const {
  auto it = std::lower_bound(e_.begin(), e_.end(), c,
                             [](const Entry& e, CoordId x) { return e.first < x; });
  return it != e_.end() && it->first == c ? it->second : 0;
}

unsigned MultiIndex::length() const {
  unsigned s = 0;
  for (auto& e : e_) s += e.second;
  return s;
}

std::vector<MultiIndex::Entry> MultiIndex::canonical_terms() const {
  auto v = e_;
  std::sort(v.begin(), v.end(), [](const Entry& a, const Entry& b) {
    return coord_id_less(a.first, b.first);
  });
  return v;
}

MultiIndex& MultiIndex::add(CoordId c, unsigned count) {
  if (!count) return *this;
  auto it = std::lower_bound(e_.begin(), e_.end(), c,
                             [](const Entry& e, CoordId x) { return e.first < x; });
  if (it != e_.end() && it->first == c)
    it->second += count;
  else
    e_.insert(it, {c, count});
  return *this;
}

bool MultiIndex::remove(CoordId c, unsigned count) {
  if (!count) return true;
  auto it = std::lower_bound(e_.begin(), e_.end(), c,
                             [](const Entry& e, CoordId x) { return e.first < x; });
  if (it == e_.end() || it->first != c || it->second < count) return false;
  it->second -= count;
  if (!it->second) e_.erase(it);
  return true;
}

MultiIndex MultiIndex::plus(const MultiIndex& o) const {
  MultiIndex r;
  r.e_.reserve(e_.size() + o.e_.size());
  size_t i = 0, j = 0;
  while (i < e_.size() || j < o.e_.size()) {
    if (j == o.e_.size() || (i < e_.size() && e_[i].first < o.e_[j].first))
      r.e_.push_back(e_[i++]);
    else if (i == e_.size() || o.e_[j].first < e_[i].first)
      r.e_.push_back(o.e_[j++]);
    else {
      r.e_.emplace_back(e_[i].first, e_[i].second + o.e_[j].second);
      ++i, ++j;
    }
  }
  return r;
}

bool MultiIndex::minus(const MultiIndex& o, MultiIndex& out) const {
  MultiIndex r;
  size_t i = 0;
  for (auto& [c, n] : o.e_) {
    while (i < e_.size() && e_[i].first < c) r.e_.push_back(e_[i++]);
    if (i == e_.size() || e_[i].first != c || e_[i].second < n) return false;
    if (e_[i].second > n) r.e_.emplace_back(c, e_[i].second - n);
    ++i;
  }
  while (i < e_.size()) r.e_.push_back(e_[i++]);
  out = std::move(r);
  return true;
}

bool MultiIndex::le(const MultiIndex& o) const {
  size_t j = 0;
  for (auto& [c, n] : e_) {
    while (j < o.e_.size() && o.e_[j].first < c) ++j;
    if (j == o.e_.size() || o.e_[j].first != c || o.e_[j].second < n) return false;
  }
  return true;
}

bool MultiIndex::is_unit(CoordId* c) const {
  if (e_.size() != 1 || e_[0].second != 1) return false;
  if (c) *c = e_[0].first;
  return true;
}

size_t MultiIndex::hash() const {
  size_t h = 0xcbf29ce484222325ULL;
  for (auto& [c, n] : e_) h = hash_combine(hash_combine(h, c), n);
  return h;
}

std::string MultiIndex::str() const {
  if (e_.empty()) return "0";
  std::string s;
  for (auto& [c, n] : canonical_terms()) {
    if (!s.empty()) s += "+";
    if (n != 1) s += std::to_string(n);
    s += "e_" + coord(c).str();
  }
  return s;
}

bool canonical_less(const MultiIndex& a, const MultiIndex& b) {
  auto x = a.canonical_terms(), y = b.canonical_terms();
  size_t i = 0;
  for (; i < x.size() && i < y.size(); ++i) {
    if (x[i].first != y[i].first) return coord_id_less(x[i].first, y[i].first);
    if (x[i].second != y[i].second) return x[i].second < y[i].second;
  }
  return x.size() < y.size();
}

}  // namespace mir
