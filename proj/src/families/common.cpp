#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "builders.hpp"
#include "monge/hodograph.hpp"

namespace monge {

namespace detail {

DomainPredicate positive(std::string name, std::function<double(double, double)> f) {
  return {std::move(name), std::move(f), 1e-6};
}

DomainPredicate nonzero(std::string name, std::function<double(double, double)> f) {
  return {std::move(name), [f = std::move(f)](double x, double z) { return std::abs(f(x, z)); }, 1e-6};
}

FieldSample values_at(const FieldBundle& b, double x, double z) {
  const auto [X, Z] = coordinates(cplx(x), cplx(z), 0);
  return b.fields(X, Z);
}

}  // namespace detail

std::string family_name(const FamilyVariant& v) {
  static const char* names[] = {"Trivial",      "M1Implicit",       "Degenerate", "M3SigmaConst",
                                "M3L1Const",    "M3ThetaConst",     "M3HodoExample", "M3General",
                                "M3GeneralE0",  "MnThetaConst"};
  return names[v.index()];
}

std::string relation_name(Relation r) {
  switch (r) {
    case Relation::Eq7: return "Eq7";
    case Relation::Eq9: return "Eq9";
    case Relation::Eq613: return "Eq613";
    case Relation::Eq621: return "Eq621";
    case Relation::Cosh: return "Cosh";
    case Relation::Eq13: return "Eq13";
    case Relation::Identity: return "Identity";
    case Relation::None: return "None";
  }
  return "None";
}

std::optional<std::string> SafeDomain::violation(double x, double z) const {
  if (!std::isfinite(x) || !std::isfinite(z)) return "finite coordinates";
  if (x < rect.x_lo || x > rect.x_hi || z < rect.z_lo || z > rect.z_hi) return "inside the domain rectangle";
  for (const DomainPredicate& p : predicates) {
    try {
      const double m = p.margin(x, z);
      if (!(m >= p.threshold)) return p.name;
    } catch (const std::exception& e) {
      return p.name + " (" + e.what() + ")";
    }
  }
  return std::nullopt;
}

void SafeDomain::require(double x, double z) const {
  if (const auto v = violation(x, z)) {
    std::ostringstream os;
    os.precision(17);
    os << "point (" << x << ", " << z << ") outside the safe domain: " << *v;
    throw DomainError(os.str());
  }
}

namespace {

void apply_field_mutations(FieldBundle& b, const std::map<std::string, double>& mutate) {
  std::vector<std::pair<int, double>> fields;  // index n means W
  for (const auto& [name, factor] : mutate) {
    if (name == "W") {
      fields.emplace_back(b.n, factor);
    } else if (name.size() >= 2 && name[0] == 'a' &&
               std::all_of(name.begin() + 1, name.end(), [](char ch) { return std::isdigit(ch); })) {
      const int k = std::stoi(name.substr(1));
      if (k < b.n) fields.emplace_back(k, factor);
    }
  }
  if (fields.empty()) return;
  auto inner = b.fields;
  const int n = b.n;
  b.fields = [inner, fields, n](const JetC& X, const JetC& Z) {
    FieldSample s = inner(X, Z);
    for (const auto& [k, factor] : fields) {
      if (k == n) s.W *= cplx(factor);
      else s.a[static_cast<std::size_t>(k)] *= cplx(factor);
    }
    s.f = s.a[0];
    return s;
  };
}

}  // namespace

FieldBundle make_family(const FamilyConfig& cfg) {
  detail::Mutations mut{cfg.mutate};
  for (const auto& [name, factor] : cfg.mutate) {
    if (!(std::isfinite(factor))) throw ConfigError("mutation factor for '" + name + "' must be finite");
  }
  FieldBundle b = std::visit(
      [&](const auto& c) -> FieldBundle {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, TrivialCfg>) return detail::build_trivial(c);
        else if constexpr (std::is_same_v<T, M1ImplicitCfg>) return detail::build_m1(c);
        else if constexpr (std::is_same_v<T, DegenerateCfg>) return detail::build_degenerate(c);
        else if constexpr (std::is_same_v<T, M3SigmaConstCfg>) return detail::build_sigma_const(c, mut);
        else if constexpr (std::is_same_v<T, M3L1ConstCfg>) return detail::build_l1_const(c, mut);
        else if constexpr (std::is_same_v<T, M3ThetaConstCfg>) return detail::build_theta_const(c, mut);
        else if constexpr (std::is_same_v<T, M3HodoExampleCfg>) return detail::build_hodo(c, mut);
        else if constexpr (std::is_same_v<T, M3GeneralCfg>) return detail::build_general(c, mut);
        else if constexpr (std::is_same_v<T, M3GeneralE0Cfg>) return detail::build_general_e0(c, mut);
        else return detail::build_mn_theta_const(c, mut);
      },
      cfg.spec);
  // field-level targets are valid for every family
  for (int k = 0; k < b.n; ++k) {
    const std::string name = "a" + std::to_string(k);
    if (std::find(b.mutation_targets.begin(), b.mutation_targets.end(), name) == b.mutation_targets.end())
      b.mutation_targets.push_back(name);
  }
  if (std::find(b.mutation_targets.begin(), b.mutation_targets.end(), "W") == b.mutation_targets.end())
    b.mutation_targets.push_back("W");
  for (const auto& [name, factor] : cfg.mutate) {
    if (std::find(b.mutation_targets.begin(), b.mutation_targets.end(), name) == b.mutation_targets.end())
      throw ConfigError("unknown mutation target '" + name + "' for family " + b.family);
  }
  apply_field_mutations(b, cfg.mutate);
  if (cfg.domain) {
    const Rect& r = *cfg.domain;
    if (!(r.x_lo < r.x_hi && r.z_lo < r.z_hi)) throw ConfigError("domain rectangle must satisfy lo < hi");
    b.domain.rect = r;
  }
  return b;
}

FieldSample eval_fields(const FieldBundle& b, double x, double z, int m) {
  if (m < 0) throw std::invalid_argument("jet order must be non-negative");
  b.domain.require(x, z);
  const auto [X, Z] = coordinates(cplx(x), cplx(z), m);
  FieldSample s = b.fields(X, Z);
  for (const JetC& a : s.a) {
    if (!std::isfinite(std::abs(a.value()))) throw DomainError("non-finite field value inside the safe domain");
  }
  if (!std::isfinite(std::abs(s.W.value()))) throw DomainError("non-finite W inside the safe domain");
  return s;
}

QuadValues eval_quadruple(const FieldBundle& b, double x, double z) {
  if (!b.quadruple) throw ConfigError("family " + b.family + " has no derivative quadruple");
  b.domain.require(x, z);
  return quadruple_values(*b.quadruple, x, z);
}

namespace {

cplx relation_sum(const FieldBundle& b, const JetC& W, const JetC& f, int i, int j) {
  cplx s(0);
  for (const JetC& t : b.relation_fn(W, f)) s += t.coeff(i, j);
  return s;
}

// Newton on G(w, a0) = 0 in w, from the seed.
cplx solve_relation(const FieldBundle& b, cplx a0, cplx seed) {
  cplx w = seed;
  double best = std::numeric_limits<double>::infinity();
  const JetC f = [&] {
    JetC j = JetC::constant(a0, 1);
    j.coeff(0, 1) = 1.0;
    return j;
  }();
  for (int it = 0; it < 50; ++it) {
    JetC W = JetC::constant(w, 1);
    W.coeff(1, 0) = 1.0;
    const auto terms = b.relation_fn(W, f);
    cplx g(0), gw(0);
    double scale = 1.0;
    for (const JetC& t : terms) {
      g += t.value();
      gw += t.coeff(1, 0);
      scale = std::max(scale, std::abs(t.value()));
    }
    if (std::abs(g) <= 1e-15 * scale) return w;
    if (gw == cplx(0)) throw NumericalError("relation has vanishing W-derivative");
    const cplx step = g / gw;
    w -= step;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(w))) return w;
    best = std::min(best, std::abs(g) / scale);
  }
  // stalled at rounding level
  if (best <= 1e-12) return w;
  throw NumericalError("Newton on the W-f relation did not converge");
}

}  // namespace

cplx W_prime(const FieldBundle& b, const FieldSample& s) {
  const cplx a0 = s.a[0].value();
  if (b.W_explicit) return derivative_at(b.W_explicit, a0, 1);
  if (b.relation_fn) {
    const cplx w = solve_relation(b, a0, s.W.value());
    JetC W = JetC::constant(w, 1), f = JetC::constant(a0, 1);
    W.coeff(1, 0) = 1.0;
    f.coeff(0, 1) = 1.0;
    const cplx gw = relation_sum(b, W, f, 1, 0);
    const cplx gf = relation_sum(b, W, f, 0, 1);
    return -gf / gw;
  }
  if (s.a[0].order() < 1) throw std::invalid_argument("gradient projection needs jets of order >= 1");
  const cplx ax = s.a[0].partial(1, 0), az = s.a[0].partial(0, 1);
  const cplx Wx = s.W.partial(1, 0), Wz = s.W.partial(0, 1);
  const cplx den = ax * ax + az * az;
  if (den == cplx(0)) throw DomainError("gradient projection: grad a0 vanishes");
  return (Wx * ax + Wz * az) / den;
}

cplx W_of_a0(const FieldBundle& b, const FieldSample& at, cplx a0) {
  if (b.W_explicit) return value_at(b.W_explicit, a0);
  if (b.relation_fn) return solve_relation(b, a0, at.W.value());
  return at.W.value() + W_prime(b, at) * (a0 - at.a[0].value());
}

std::optional<Gradients> derivative_gradients(const FieldBundle& b, double x, double z) {
  if (!b.general) return std::nullopt;
  const GeneralQuadruple& g = *b.general;
  const NuSolution s = solve_nus(g, x, z);
  const int n = g.n;
  Gradients r{};
  r.fx = ipow(s.nu1, n - 1) * s.w1 + ipow(s.nu2, n - 1) * s.w2;
  r.fz = ipow(s.nu1, n) * s.w1 + ipow(s.nu2, n) * s.w2 + value_at(g.theta_z, z);
  r.Wx = s.w1 / s.nu1 + s.w2 / s.nu2 + value_at(g.sigma_x, x);
  r.Wz = s.w1 + s.w2;
  return r;
}

}  // namespace monge
