#pragma once
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>

#include "mir/multiindex.hpp"
#include "mir/spec.hpp"

namespace mir {

enum class PopClass { N, Nbar, P, Outside };
const char* to_string(PopClass c);
PopClass parse_class(const std::string& s);

// Spec-free grading functionals.
unsigned length(const MultiIndex& b);
long bracket(const MultiIndex& b);

// A validated spec together with per-coordinate caches.  All derived
// quantities used by the algebraic modules go through here.
class Structure {
 public:
  explicit Structure(EquationSpec spec);
  Structure(const Structure&) = delete;
  Structure& operator=(const Structure&) = delete;

  const EquationSpec& spec() const { return spec_; }
  int d() const { return spec_.d; }
  LabelId unit_label() const { return unit_; }

  // grading
  unsigned noise_homogeneity(const MultiIndex& b) const;
  Hom poly_degree(const MultiIndex& b) const;
  Hom scaled_degree(const Word& n) const { return spec_.scaled_degree(n); }
  Hom homogeneity(const MultiIndex& b) const;
  Hom coord_homogeneity(CoordId c) const { return info(c).hom; }

  // subcriticality of (l,k) in closed form
  bool is_subcritical_pair(LabelId l, const KWord& k) const;
  // z_(l,k) not identically zero for the declared nonlinearity
  bool is_nonzero_pair(LabelId l, const KWord& k) const;
  bool is_admissible_pair(LabelId l, const KWord& k) const {
    return is_subcritical_pair(l, k) && is_nonzero_pair(l, k);
  }

  PopClass classify(const MultiIndex& b) const;
  bool in_N(const MultiIndex& b) const { return classify(b) == PopClass::N; }
  bool in_Nbar(const MultiIndex& b) const {  // N is contained in Nbar
    auto c = classify(b);
    return c == PopClass::N || c == PopClass::Nbar;
  }
  bool in_PNbar(const MultiIndex& b) const { return classify(b) != PopClass::Outside; }

  // words n with |n| < eta: the only ones a subcritical k can charge
  const std::vector<Word>& low_words() const { return low_words_; }

  struct CoordInfo {
    bool poly = false;
    bool noise = false;       // pair with a non-unit label
    bool admissible = false;  // pair: admissible; poly: allowed by the low-poly restriction
    int bracket = 0;
    Hom hom;
  };
  const CoordInfo& info(CoordId c) const;

  // id of (l, k + e_n) if admissible
  std::optional<CoordId> shift_pair(CoordId pair, const Word& n) const;
  CoordId poly_coord(const Word& n) const { return intern(Coord::polynomial(n)); }
  CoordId pair_coord(LabelId l, const KWord& k) const { return intern(Coord::pair(l, k)); }
  CoordId pair_coord(const std::string& label, const KWord& k) const;

 private:
  EquationSpec spec_;
  LabelId unit_;
  std::vector<Word> low_words_;
  mutable std::mutex mu_;
  mutable std::unordered_map<CoordId, std::unique_ptr<CoordInfo>> info_;
  struct ShiftKey {
    CoordId c;
    Word n;
    bool operator==(const ShiftKey&) const = default;
  };
  struct ShiftHash {
    size_t operator()(const ShiftKey& k) const { return hash_combine(k.c, word_hash(k.n)); }
  };
  mutable std::unordered_map<ShiftKey, std::optional<CoordId>, ShiftHash> shift_;
};

}  // namespace mir
