#pragma once

#include "json.hpp"
#include "monge/families.hpp"

namespace monge {

// {"family": tag, "params": {...}, "mutate": {...}, "domain": {"x": [lo, hi], "z": [lo, hi]}}
FamilyConfig family_from_json(const nlohmann::json& j);
nlohmann::json family_to_json(const FamilyConfig& cfg);

// Parameter object of a variant, with every field spelled out.
nlohmann::json family_params(const FamilyVariant& v);

// Copy of cfg with one scalar parameter replaced; nu1/nu2 and the other numeric keys only.
FamilyConfig with_param(const FamilyConfig& cfg, const std::string& name, double value);

}  // namespace monge
