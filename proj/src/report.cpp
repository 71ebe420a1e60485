#include "monge/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace monge {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string report_timestamp() {
  const char* s = std::getenv("SOURCE_DATE_EPOCH");
  return s ? std::string(s) : std::string();
}

nlohmann::json report_to_json(const ResidualReport& r) {
  nlohmann::json j;
  j["family"] = r.family;
  j["parameters"] = r.parameters;
  j["rect"] = {{"x", {r.rect.x_lo, r.rect.x_hi}}, {"z", {r.rect.z_lo, r.rect.z_hi}}};
  j["grid"] = {{"nx", r.grid.nx}, {"nz", r.grid.nz}, {"order", r.grid.order}, {"h", r.grid.h}};
  j["seed"] = r.seed;
  j["probes"] = r.probes;
  j["timestamp"] = r.timestamp;
  j["notes"] = r.notes;
  j["all_pass"] = r.all_pass();
  j["checks"] = nlohmann::json::array();
  for (const CheckResult& c : r.checks) {
    j["checks"].push_back({{"name", c.name},
                           {"applicable", c.applicable},
                           {"pass", c.pass},
                           {"tolerance", c.tolerance},
                           {"max_abs", c.max_abs},
                           {"mean_abs", c.mean_abs},
                           {"max_raw", c.max_raw},
                           {"argmax", {c.argmax.first, c.argmax.second}},
                           {"points", c.points},
                           {"details", c.details}});
  }
  return j;
}

namespace {

void emit(std::ostringstream& os, const nlohmann::json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * depth + 2), ' ');
  const std::string close(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) { os << "{}"; return; }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << nlohmann::json(it.key()).dump() << ": ";
        emit(os, it.value(), depth + 1);
      }
      os << "\n" << close << "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) { os << "[]"; return; }
      os << "[";
      bool first = true;
      for (const auto& v : j) {
        if (!first) os << ", ";
        first = false;
        emit(os, v, depth + 1);
      }
      os << "]";
      return;
    }
    case nlohmann::json::value_t::number_float: {
      const double v = j.get<double>();
      if (std::isfinite(v)) os << fmt(v);
      else os << '"' << fmt(v) << '"';
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace

std::string dump_json(const nlohmann::json& j) {
  std::ostringstream os;
  emit(os, j, 0);
  os << "\n";
  return os.str();
}

std::string report_csv(const ResidualReport& r) {
  std::ostringstream os;
  os << "family,check,applicable,pass,tolerance,max_abs,mean_abs,max_raw,argmax_x,argmax_z,points\n";
  for (const CheckResult& c : r.checks) {
    os << r.family << ',' << c.name << ',' << (c.applicable ? 1 : 0) << ',' << (c.pass ? 1 : 0) << ','
       << fmt(c.tolerance) << ',' << fmt(c.max_abs) << ',' << fmt(c.mean_abs) << ',' << fmt(c.max_raw) << ','
       << fmt(c.argmax.first) << ',' << fmt(c.argmax.second) << ',' << c.points << '\n';
  }
  return os.str();
}

}  // namespace monge
