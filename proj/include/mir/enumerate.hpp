#pragma once
#include <vector>

#include "mir/structure.hpp"

namespace mir {

struct EnumOptions {
  size_t node_budget = 20'000'000;
};

// All beta of the requested class with |beta| < cap, sorted by
// (homogeneity, canonical order).  Throws CapTooLarge past the budget.
std::vector<MultiIndex> enumerate_below(const Structure& S, const Hom& cap, PopClass cls,
                                        const EnumOptions& opt = {});

// Admissible pair coordinates (l,k) of a label with weight below a bound;
// exposed for tests and diagnostics.
std::vector<CoordId> admissible_pairs(const Structure& S, LabelId l, unsigned max_k_length);

// {beta in N : |beta| < 0, <beta> >= 2}
std::vector<MultiIndex> counterterm_set(const Structure& S);

int spatial_parity(const MultiIndex& b, int axis);
// keeps parity-0 entries on every reflect axis of the spec's symmetry block,
// and even <beta> when noise_parity_even is set
std::vector<MultiIndex> filter_symmetric(const Structure& S, const std::vector<MultiIndex>& set);
std::vector<MultiIndex> filter_symmetric(const Structure& S, const std::vector<MultiIndex>& set,
                                         const Symmetry& sym);

void sort_by_homogeneity(const Structure& S, std::vector<MultiIndex>& v);

struct PrecedenceWeights {
  Rational l1, l2, l3;
};
PrecedenceWeights default_weights(const EquationSpec& s);
// throws WeightError unless the weights are admissible for s
void check_weights(const EquationSpec& s, const PrecedenceWeights& w);
Rational precedence(const Structure& S, const MultiIndex& b, const PrecedenceWeights& w);

}  // namespace mir
