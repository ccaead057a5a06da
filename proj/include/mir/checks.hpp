#pragma once
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mir/structure.hpp"

namespace mir {

struct CheckOptions {
  Hom cap = Hom(0);
  unsigned max_length = 4;
  std::uint64_t seed = 7;
  unsigned characters = 100;  // random characters for the path-equality check
  unsigned triples = 50;      // random triples for the product checks
};

struct CheckResult {
  std::string name;
  bool ok = true;
  size_t cases = 0;
  std::string detail;  // first counterexample, if any
  double seconds = 0;
};

// P u Nbar below the cap, restricted to the length bound
std::vector<MultiIndex> truncation(const Structure& S, const CheckOptions& o);

CheckResult check_prelie(const Structure& S, const CheckOptions& o);
CheckResult check_jacobi(const Structure& S, const CheckOptions& o);
CheckResult check_gradings(const Structure& S, const CheckOptions& o);
CheckResult check_plus_triangular(const Structure& S, const CheckOptions& o);
CheckResult check_closed_form(const Structure& S, const CheckOptions& o);
CheckResult check_exponential(const Structure& S, const CheckOptions& o);
CheckResult check_convolution(const Structure& S, const CheckOptions& o);
CheckResult check_mixed_convolution(const Structure& S, const CheckOptions& o);
CheckResult check_inverse(const Structure& S, const CheckOptions& o);
CheckResult check_group_law(const Structure& S, const CheckOptions& o);
CheckResult check_gl_product(const Structure& S, const CheckOptions& o);
CheckResult check_trees(const Structure& S, const CheckOptions& o);
CheckResult check_precedence(const Structure& S, const CheckOptions& o);
CheckResult check_model_oracle(const Structure& S, const CheckOptions& o);
CheckResult check_model_grading(const Structure& S, const CheckOptions& o);
// exhaustive search over monomials of bounded length against enumerate_below
CheckResult check_enumerator(const Structure& S, const Hom& cap, unsigned max_length);

struct Suite {
  std::string name;
  std::function<CheckResult(const Structure&, const CheckOptions&)> run;
};
const std::vector<Suite>& all_suites();

}  // namespace mir
