#include "monge/family_json.hpp"

#include <set>

namespace monge {

using nlohmann::json;

namespace {

cplx to_cplx(const json& v, const std::string& what) {
  if (v.is_number()) return cplx(v.get<double>());
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw ConfigError(what + ": expected a number or [re, im]");
}

json from_cplx(cplx v) {
  if (v.imag() == 0.0) return v.real();
  return json::array({v.real(), v.imag()});
}

std::vector<cplx> to_poly(const json& v, const std::string& what) {
  if (!v.is_array()) throw ConfigError(what + ": expected an array of coefficients");
  std::vector<cplx> r;
  for (const json& e : v) r.push_back(to_cplx(e, what));
  return r;
}

json from_poly(const std::vector<cplx>& p) {
  json a = json::array();
  for (const cplx& c : p) a.push_back(from_cplx(c));
  return a;
}

// Reads params, rejecting unknown keys.
class Reader {
 public:
  Reader(const json& params, std::string family) : p_(params), fam_(std::move(family)) {
    if (!p_.is_object()) throw ConfigError(fam_ + ": params must be an object");
  }
  template <typename T>
  void num(const char* key, T& out) {
    seen_.insert(key);
    if (!p_.contains(key)) return;
    const json& v = p_[key];
    if (!v.is_number()) throw ConfigError(fam_ + ": parameter '" + key + "' must be a number");
    if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) throw ConfigError(fam_ + ": parameter '" + key + "' must be an integer");
    }
    out = v.get<T>();
  }
  void c(const char* key, cplx& out) {
    seen_.insert(key);
    if (p_.contains(key)) out = to_cplx(p_[key], fam_ + "." + key);
  }
  void poly(const char* key, std::vector<cplx>& out) {
    seen_.insert(key);
    if (p_.contains(key)) out = to_poly(p_[key], fam_ + "." + key);
  }
  const json* raw(const char* key) {
    seen_.insert(key);
    return p_.contains(key) ? &p_[key] : nullptr;
  }
  void finish() const {
    for (const auto& [k, v] : p_.items()) {
      if (!seen_.count(k)) throw ConfigError(fam_ + ": unknown parameter '" + k + "'");
    }
  }

 private:
  const json& p_;
  std::string fam_;
  std::set<std::string> seen_;
};

FamilyVariant parse_variant(const std::string& tag, const json& params) {
  Reader r(params, tag);
  FamilyVariant out;
  if (tag == "Trivial") {
    TrivialCfg c;
    r.num("n", c.n);
    if (const json* f = r.raw("f")) {
      if (!f->is_array()) throw ConfigError("Trivial.f: expected an array of polynomials");
      for (const json& p : *f) c.f.push_back(to_poly(p, "Trivial.f"));
    }
    out = c;
  } else if (tag == "M1Implicit") {
    M1ImplicitCfg c;
    r.poly("F", c.F);
    r.num("x_ref", c.x_ref);
    r.num("z_ref", c.z_ref);
    r.c("seed", c.seed);
    out = c;
  } else if (tag == "Degenerate") {
    DegenerateCfg c;
    r.poly("C", c.C);
    r.poly("G", c.G);
    r.num("x_ref", c.x_ref);
    r.num("z_ref", c.z_ref);
    r.c("seed", c.seed);
    out = c;
  } else if (tag == "M3SigmaConst") {
    M3SigmaConstCfg c;
    r.num("nu1", c.nu1), r.num("nu2", c.nu2), r.num("A", c.A), r.num("k", c.k);
    r.num("d1", c.d1), r.num("d2", c.d2);
    out = c;
  } else if (tag == "M3L1Const") {
    M3L1ConstCfg c;
    r.num("nu1", c.nu1), r.num("nu2", c.nu2), r.num("D", c.D), r.num("k", c.k);
    if (const json* d = r.raw("dtilde")) {
      if (*d == "sum") c.dtilde = DTilde::Sum;
      else if (*d == "nu2") c.dtilde = DTilde::Nu2;
      else throw ConfigError("M3L1Const.dtilde: expected \"sum\" or \"nu2\"");
    }
    out = c;
  } else if (tag == "M3ThetaConst") {
    M3ThetaConstCfg c;
    r.num("nu1", c.nu1), r.num("nu2", c.nu2), r.num("E", c.E), r.num("k", c.k);
    out = c;
  } else if (tag == "M3HodoExample") {
    M3HodoExampleCfg c;
    r.num("k", c.k), r.num("alpha", c.alpha), r.num("beta", c.beta), r.num("nu1", c.nu1);
    out = c;
  } else if (tag == "M3General") {
    M3GeneralCfg c;
    r.num("g", c.g);
    out = c;
  } else if (tag == "M3GeneralE0") {
    M3GeneralE0Cfg c;
    r.num("a", c.a), r.num("alpha1", c.alpha1), r.num("alpha2", c.alpha2);
    if (const json* v = r.raw("c")) {
      if (!v->is_number()) throw ConfigError("M3GeneralE0.c must be a number");
      c.c = v->get<double>();
    }
    out = c;
  } else if (tag == "MnThetaConst") {
    MnThetaConstCfg c;
    r.num("n", c.n), r.num("nu1", c.nu1), r.num("nu2", c.nu2), r.num("E", c.E), r.num("k", c.k);
    r.num("c", c.c), r.num("cbar", c.cbar);
    out = c;
  } else {
    throw ConfigError("unknown family '" + tag + "'");
  }
  r.finish();
  return out;
}

std::pair<double, double> interval(const json& v, const char* what) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw ConfigError(std::string("domain.") + what + ": expected [lo, hi]");
  return {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace

FamilyConfig family_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("family: expected an object");
  if (!j.contains("family") || !j["family"].is_string()) throw ConfigError("family: missing tag \"family\"");
  for (const auto& [k, v] : j.items()) {
    if (k != "family" && k != "params" && k != "mutate" && k != "domain")
      throw ConfigError("family: unknown key '" + k + "'");
  }
  FamilyConfig cfg;
  cfg.spec = parse_variant(j["family"].get<std::string>(), j.value("params", json::object()));
  if (j.contains("mutate")) {
    if (!j["mutate"].is_object()) throw ConfigError("family.mutate: expected an object of factors");
    for (const auto& [k, v] : j["mutate"].items()) {
      if (!v.is_number()) throw ConfigError("family.mutate." + k + ": expected a number");
      cfg.mutate[k] = v.get<double>();
    }
  }
  if (j.contains("domain")) {
    const json& d = j["domain"];
    if (!d.is_object() || !d.contains("x") || !d.contains("z"))
      throw ConfigError("family.domain: expected {\"x\": [lo, hi], \"z\": [lo, hi]}");
    const auto [xl, xh] = interval(d["x"], "x");
    const auto [zl, zh] = interval(d["z"], "z");
    cfg.domain = Rect{xl, xh, zl, zh};
  }
  return cfg;
}

json family_params(const FamilyVariant& v) {
  return std::visit(
      [](const auto& c) -> json {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, TrivialCfg>) {
          json f = json::array();
          for (const auto& p : c.f) f.push_back(from_poly(p));
          return {{"n", c.n}, {"f", f}};
        } else if constexpr (std::is_same_v<T, M1ImplicitCfg>) {
          return {{"F", from_poly(c.F)}, {"x_ref", c.x_ref}, {"z_ref", c.z_ref}, {"seed", from_cplx(c.seed)}};
        } else if constexpr (std::is_same_v<T, DegenerateCfg>) {
          return {{"C", from_poly(c.C)}, {"G", from_poly(c.G)}, {"x_ref", c.x_ref}, {"z_ref", c.z_ref},
                  {"seed", from_cplx(c.seed)}};
        } else if constexpr (std::is_same_v<T, M3SigmaConstCfg>) {
          return {{"nu1", c.nu1}, {"nu2", c.nu2}, {"A", c.A}, {"k", c.k}, {"d1", c.d1}, {"d2", c.d2}};
        } else if constexpr (std::is_same_v<T, M3L1ConstCfg>) {
          return {{"nu1", c.nu1}, {"nu2", c.nu2}, {"D", c.D}, {"k", c.k},
                  {"dtilde", c.dtilde == DTilde::Sum ? "sum" : "nu2"}};
        } else if constexpr (std::is_same_v<T, M3ThetaConstCfg>) {
          return {{"nu1", c.nu1}, {"nu2", c.nu2}, {"E", c.E}, {"k", c.k}};
        } else if constexpr (std::is_same_v<T, M3HodoExampleCfg>) {
          return {{"k", c.k}, {"alpha", c.alpha}, {"beta", c.beta}, {"nu1", c.nu1}};
        } else if constexpr (std::is_same_v<T, M3GeneralCfg>) {
          return {{"g", c.g}};
        } else if constexpr (std::is_same_v<T, M3GeneralE0Cfg>) {
          json j = {{"a", c.a}, {"alpha1", c.alpha1}, {"alpha2", c.alpha2}};
          if (c.c) j["c"] = *c.c;
          return j;
        } else {
          return {{"n", c.n}, {"nu1", c.nu1}, {"nu2", c.nu2}, {"E", c.E}, {"k", c.k}, {"c", c.c}, {"cbar", c.cbar}};
        }
      },
      v);
}

json family_to_json(const FamilyConfig& cfg) {
  json j = {{"family", family_name(cfg.spec)}, {"params", family_params(cfg.spec)}};
  if (!cfg.mutate.empty()) j["mutate"] = cfg.mutate;
  if (cfg.domain) {
    const Rect& r = *cfg.domain;
    j["domain"] = {{"x", {r.x_lo, r.x_hi}}, {"z", {r.z_lo, r.z_hi}}};
  }
  return j;
}

FamilyConfig with_param(const FamilyConfig& cfg, const std::string& name, double value) {
  json params = family_params(cfg.spec);
  if (!params.contains(name) || !params[name].is_number())
    throw ConfigError("unknown sweep parameter '" + name + "' for family " + family_name(cfg.spec));
  if (params[name].is_number_integer()) {
    if (value != std::floor(value)) throw ConfigError("parameter '" + name + "' takes integer values");
    params[name] = static_cast<long long>(value);
  } else {
    params[name] = value;
  }
  FamilyConfig out = cfg;
  out.spec = parse_variant(family_name(cfg.spec), params);
  return out;
}

}  // namespace monge
