#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "monge/families.hpp"

namespace monge {

struct GridSpec {
  std::optional<Rect> rect;  // defaults to the family's domain rectangle
  int nx = 21;
  int nz = 21;
  int order = 2;
  double h = 1e-2;  // lattice spacing of the reconstruction oracle
};

// Rejects nx, nz < 5, order < 1 and h outside [1e-6, 1e-2].
void validate_grid(const GridSpec& g);
Rect grid_rect(const FieldBundle& b, const GridSpec& g);

struct CheckResult {
  std::string name;
  bool applicable = true;
  bool pass = true;
  double tolerance = 0.0;
  double max_abs = 0.0;  // normalized
  double mean_abs = 0.0;
  double max_raw = 0.0;
  std::pair<double, double> argmax{0.0, 0.0};
  int points = 0;
  nlohmann::json details = nlohmann::json::object();
};

struct ResidualReport {
  std::string family;
  nlohmann::json parameters = nlohmann::json::object();
  Rect rect;
  GridSpec grid;
  std::uint64_t seed = 0;
  int probes = 0;
  std::string timestamp;
  std::vector<std::string> notes;
  std::vector<CheckResult> checks;

  bool all_pass() const;
  const CheckResult* find(const std::string& name) const;
};

const std::vector<std::string>& check_names();
double default_tolerance(const std::string& check);

// Admissible points of the nx x nz grid; DomainError when fewer than 10 survive.
std::vector<std::pair<double, double>> grid_points(const FieldBundle& b, const GridSpec& g);

// Uniform admissible points in the grid rectangle from mt19937_64(seed).
std::vector<std::pair<double, double>> probe_points(const FieldBundle& b, const Rect& r, std::uint64_t seed,
                                                    int count);

CheckResult check_compatibility(const FieldBundle& b, const GridSpec& g, double tol);
CheckResult check_dependence(const FieldBundle& b, const GridSpec& g, double tol);
CheckResult check_wf_relation(const FieldBundle& b, const GridSpec& g, double tol);
CheckResult check_eq5(const FieldBundle& b, const GridSpec& g, std::uint64_t seed, int probes, double tol);
CheckResult check_eq10(const FieldBundle& b, const GridSpec& g, std::uint64_t seed, int probes, double tol);
CheckResult reconstruct_U(const FieldBundle& b, const GridSpec& g, double tol);

struct VerifyOptions {
  std::vector<std::string> checks;  // empty: all six
  std::map<std::string, double> tolerances;
  std::uint64_t seed = 20240601;
  int probes = 100;
};

ResidualReport run_checks(const FieldBundle& b, const GridSpec& g, const VerifyOptions& opt);

}  // namespace monge
