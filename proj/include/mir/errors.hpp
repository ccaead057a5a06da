#pragma once
#include <stdexcept>
#include <string>

namespace mir {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// malformed input document
struct SchemaError : Error {
  using Error::Error;
};

// well-formed spec violating one of the structural inequalities
struct ValidationError : Error {
  std::string rule;
  ValidationError(std::string rule_id, const std::string& what)
      : Error(rule_id + ": " + what), rule(std::move(rule_id)) {}
};

struct UnknownSpec : Error { using Error::Error; };
struct CapTooLarge : Error { using Error::Error; };
struct WeightError : Error { using Error::Error; };
struct UndefinedPreLie : Error { using Error::Error; };
struct TruncationExceeded : Error { using Error::Error; };
struct OrderTooSmall : Error { using Error::Error; };
struct NotInN : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

}  // namespace mir
