#pragma once
#include <string>

#include <nlohmann/json.hpp>

#include "mir/renorm.hpp"

namespace mir {

enum class Format { Text, Latex, Json };
Format parse_format(const std::string& s);

std::string latex(const Structure& S, const MultiIndex& b);
std::string latex(const Structure& S, const SymExpr& e, bool factor = false);
std::string text(const Structure& S, const SymExpr& e);

// {multiindex, text, homogeneity, bracket, noise_hom, class}
nlohmann::json record(const Structure& S, const MultiIndex& b);

std::string render_list(const Structure& S, const std::vector<MultiIndex>& v, Format f);
std::string render_model_equations(const Structure& S, const std::vector<std::pair<MultiIndex, SymExpr>>& eqs,
                                   Format f);
std::string render_renormalized(const Structure& S, const RenormalizedEquation& eq, Format f);

}  // namespace mir
