#pragma once

#include <stdexcept>
#include <string>

#include "sqca/evolution.hpp"

namespace sqca {

// Raised with a line/field diagnostic when a rule file cannot be parsed or
// fails validation.
struct RuleParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RuleFile {
    LatticeShape shape;
    RuleWeights rule;
};

// {"dims":[...],"stencil":[[...],...],"weights":[{"re":..,"im":..},...]}
RuleFile parse_rule_json(const std::string& text);
RuleFile load_rule_file(const std::string& path);

// Serialization with 17-significant-digit numbers (exact round trip).
std::string rule_to_json(const LatticeShape& shape, const RuleWeights& rule);

} // namespace sqca
