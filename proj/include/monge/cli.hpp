#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "monge/family_json.hpp"
#include "monge/verifier.hpp"

namespace monge {

struct RunConfig {
  FamilyConfig family;
  GridSpec grid;
  VerifyOptions options;
  std::optional<std::string> out;
};

// {"family": {...}, "grid": {"x": [lo, hi], "z": [lo, hi], "nx", "nz", "order", "h"},
//  "checks": [...], "tolerances": {...}, "probes": n, "seed": u64, "out": dir}
RunConfig run_config_from_json(const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);

ResidualReport verify(const RunConfig& rc);

// x,z,a0..a{n-1},W,f over the admissible grid points.
std::string fields_csv(const FieldBundle& b, const GridSpec& g);

// args exclude the program name. 0 pass, 1 check failure, 2 config error, 3 domain error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace monge
