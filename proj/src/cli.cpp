#include "monge/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "monge/report.hpp"

namespace monge {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::pair<double, double> interval(const json& v, const std::string& what) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw ConfigError(what + ": expected [lo, hi]");
  return {v[0].get<double>(), v[1].get<double>()};
}

int integer(const json& v, const std::string& what) {
  if (!v.is_number_integer()) throw ConfigError(what + ": expected an integer");
  return v.get<int>();
}

GridSpec grid_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("grid: expected an object");
  GridSpec g;
  for (const auto& [k, v] : j.items()) {
    if (k == "nx") g.nx = integer(v, "grid.nx");
    else if (k == "nz") g.nz = integer(v, "grid.nz");
    else if (k == "order") g.order = integer(v, "grid.order");
    else if (k == "h") {
      if (!v.is_number()) throw ConfigError("grid.h: expected a number");
      g.h = v.get<double>();
    } else if (k != "x" && k != "z") {
      throw ConfigError("grid: unknown key '" + k + "'");
    }
  }
  if (j.contains("x") != j.contains("z")) throw ConfigError("grid: give both x and z ranges or neither");
  if (j.contains("x")) {
    const auto [xl, xh] = interval(j["x"], "grid.x");
    const auto [zl, zh] = interval(j["z"], "grid.z");
    if (!(xl < xh && zl < zh)) throw ConfigError("grid: ranges must satisfy lo < hi");
    g.rect = Rect{xl, xh, zl, zh};
  }
  validate_grid(g);
  return g;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream o(p, std::ios::binary);
  if (!o) throw ConfigError("cannot write '" + p.string() + "'");
  o << text;
}

std::vector<double> parse_values(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) continue;
    std::size_t used = 0;
    double x = 0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw ConfigError("--values: '" + item + "' is not a number");
    v.push_back(x);
  }
  if (v.empty()) throw ConfigError("--values: at least one value required");
  return v;
}

}  // namespace

RunConfig run_config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("run config: expected an object");
  static const std::vector<std::string> keys = {"family", "grid", "checks", "tolerances", "probes", "seed", "out"};
  for (const auto& [k, v] : j.items())
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) throw ConfigError("run config: unknown key '" + k + "'");
  if (!j.contains("family")) throw ConfigError("run config: \"family\" is required");
  RunConfig rc;
  rc.family = family_from_json(j["family"]);
  if (j.contains("grid")) rc.grid = grid_from_json(j["grid"]);
  if (j.contains("checks")) {
    if (!j["checks"].is_array()) throw ConfigError("checks: expected an array of names");
    for (const auto& c : j["checks"]) {
      if (!c.is_string()) throw ConfigError("checks: names must be strings");
      const std::string name = c.get<std::string>();
      default_tolerance(name);
      rc.options.checks.push_back(name);
    }
    if (rc.options.checks.empty()) throw ConfigError("checks: empty list; omit the key to run all checks");
  }
  if (j.contains("tolerances")) {
    if (!j["tolerances"].is_object()) throw ConfigError("tolerances: expected an object");
    for (const auto& [k, v] : j["tolerances"].items()) {
      default_tolerance(k);
      if (!v.is_number() || !(v.get<double>() > 0.0)) throw ConfigError("tolerance for '" + k + "' must be positive");
      rc.options.tolerances[k] = v.get<double>();
    }
  }
  if (j.contains("probes")) rc.options.probes = integer(j["probes"], "probes");
  if (rc.options.probes < 10) throw ConfigError("probes >= 10 required");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw ConfigError("seed: expected a non-negative integer");
    rc.options.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("out")) {
    if (!j["out"].is_string()) throw ConfigError("out: expected a path string");
    rc.out = j["out"].get<std::string>();
  }
  return rc;
}

RunConfig load_run_config(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return run_config_from_json(j);
}

ResidualReport verify(const RunConfig& rc) {
  const FieldBundle b = make_family(rc.family);
  ResidualReport rep = run_checks(b, rc.grid, rc.options);
  rep.parameters = family_to_json(rc.family);
  rep.timestamp = report_timestamp();
  return rep;
}

std::string fields_csv(const FieldBundle& b, const GridSpec& g) {
  const auto pts = grid_points(b, g);
  const std::size_t cols = static_cast<std::size_t>(b.n) + 2;
  std::vector<std::vector<cplx>> rows;
  rows.reserve(pts.size());
  std::vector<bool> complex_col(cols, false);
  for (const auto& [x, z] : pts) {
    const FieldSample s = eval_fields(b, x, z, 0);
    std::vector<cplx> row;
    for (const JetC& a : s.a) row.push_back(a.value());
    row.push_back(s.W.value());
    row.push_back(s.f.value());
    for (std::size_t c = 0; c < cols; ++c)
      if (row[c].imag() != 0.0) complex_col[c] = true;
    rows.push_back(std::move(row));
  }
  std::vector<std::string> names;
  for (int k = 0; k < b.n; ++k) names.push_back("a" + std::to_string(k));
  names.push_back("W");
  names.push_back("f");

  std::ostringstream os;
  os << "x,z";
  for (std::size_t c = 0; c < cols; ++c) {
    if (complex_col[c]) os << ',' << names[c] << "_re," << names[c] << "_im";
    else os << ',' << names[c];
  }
  os << '\n';
  for (std::size_t r = 0; r < rows.size(); ++r) {
    os << fmt(pts[r].first) << ',' << fmt(pts[r].second);
    for (std::size_t c = 0; c < cols; ++c) {
      os << ',' << fmt(rows[r][c].real());
      if (complex_col[c]) os << ',' << fmt(rows[r][c].imag());
    }
    os << '\n';
  }
  return os.str();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"monge: construct, verify and sweep explicit solution families"};
  app.require_subcommand(1);

  std::string config, out_dir, param, values;
  std::vector<std::string> tols;
  std::uint64_t seed = 0;

  auto common = [&](CLI::App* c) {
    c->add_option("--config", config, "run config JSON")->required();
    c->add_option("--out", out_dir, "output directory");
  };
  auto checks = [&](CLI::App* c) {
    c->add_option("--tol", tols, "tolerance override name=value (repeatable)");
    c->add_option("--seed", seed, "probe RNG seed");
  };
  CLI::App* construct = app.add_subcommand("construct", "write the field CSV");
  common(construct);
  CLI::App* ver = app.add_subcommand("verify", "run the residual checks");
  common(ver);
  checks(ver);
  CLI::App* sweep = app.add_subcommand("sweep", "run the checks over values of one parameter");
  common(sweep);
  checks(sweep);
  sweep->add_option("--param", param, "parameter name")->required();
  sweep->add_option("--values", values, "comma-separated values")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    RunConfig rc = load_run_config(config);
    for (const std::string& t : tols) {
      const auto eq = t.find('=');
      if (eq == std::string::npos) throw ConfigError("--tol expects name=value, got '" + t + "'");
      const std::string name = t.substr(0, eq);
      default_tolerance(name);
      double v = 0;
      try {
        v = std::stod(t.substr(eq + 1));
      } catch (const std::exception&) {
        throw ConfigError("--tol " + name + ": value is not a number");
      }
      if (!(v > 0.0)) throw ConfigError("tolerance for '" + name + "' must be positive");
      rc.options.tolerances[name] = v;
    }
    if (app.got_subcommand(ver) && ver->count("--seed")) rc.options.seed = seed;
    if (app.got_subcommand(sweep) && sweep->count("--seed")) rc.options.seed = seed;
    const fs::path dir = !out_dir.empty() ? fs::path(out_dir) : rc.out ? fs::path(*rc.out) : fs::path("out");

    if (app.got_subcommand(construct)) {
      const FieldBundle b = make_family(rc.family);
      const std::string csv = fields_csv(b, rc.grid);
      write_file(dir / "fields.csv", csv);
      out << "wrote " << (dir / "fields.csv").string() << " ("
          << std::count(csv.begin(), csv.end(), '\n') - 1 << " rows)\n";
      return 0;
    }
    if (app.got_subcommand(ver)) {
      const ResidualReport rep = verify(rc);
      write_file(dir / "report.json", dump_json(report_to_json(rep)));
      write_file(dir / "report.csv", report_csv(rep));
      for (const CheckResult& c : rep.checks)
        out << c.name << (c.applicable ? (c.pass ? " pass " : " FAIL ") : " n/a  ") << fmt(c.max_abs) << "\n";
      return rep.all_pass() ? 0 : 1;
    }
    // sweep
    const std::vector<double> vs = parse_values(values);
    with_param(rc.family, param, vs.front());
    std::ostringstream csv;
    csv << "value,check,max_abs,mean_abs,pass\n";
    bool all = true;
    for (double v : vs) {
      RunConfig r = rc;
      r.family = with_param(rc.family, param, v);
      const ResidualReport rep = verify(r);
      all = all && rep.all_pass();
      for (const CheckResult& c : rep.checks)
        csv << fmt(v) << ',' << c.name << ',' << fmt(c.max_abs) << ',' << fmt(c.mean_abs) << ',' << (c.pass ? 1 : 0)
            << '\n';
    }
    write_file(dir / "sweep.csv", csv.str());
    out << "wrote " << (dir / "sweep.csv").string() << "\n";
    return all ? 0 : 1;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return 3;
  } catch (const NumericalError& e) {
    err << "domain error (no convergence): " << e.what() << "\n";
    return 3;
  } catch (const fs::filesystem_error& e) {
    err << "config error: output path: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace monge
