#pragma once
#include <nlohmann/json.hpp>

#include "mir/homogeneity.hpp"
#include "mir/multiindex.hpp"

namespace mir {

nlohmann::json to_json(const Hom& h);
Hom hom_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Word& w);
Word word_from_json(const nlohmann::json& j, int d);
nlohmann::json to_json(const MultiIndex& m);
MultiIndex multiindex_from_json(const nlohmann::json& j, int d);

// Text form used by the command line:  2e_(xi,0)+e_(0,2e_[0,1])+e_[0,1]
MultiIndex parse_multiindex(const std::string& text, int d);

}  // namespace mir
