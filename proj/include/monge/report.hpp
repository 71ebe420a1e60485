#pragma once

#include <string>

#include "json.hpp"
#include "monge/verifier.hpp"

namespace monge {

nlohmann::json report_to_json(const ResidualReport& r);

// Doubles as %.17g, keys sorted, two-space indent; non-finite numbers become strings.
std::string dump_json(const nlohmann::json& j);

// One row per check.
std::string report_csv(const ResidualReport& r);

// %.17g
std::string fmt(double v);

// SOURCE_DATE_EPOCH when set, otherwise empty.
std::string report_timestamp();

}  // namespace monge
