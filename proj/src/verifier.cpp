#include "monge/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace monge {

using nlohmann::json;

namespace {

// Running max / mean of normalized residuals, with the raw value at each point.
struct Accum {
  double max_n = 0.0, sum = 0.0, max_raw = 0.0;
  int count = 0;
  bool bad = false;
  std::pair<double, double> arg{0.0, 0.0};
  int errors = 0;
  std::string first_error;

  void add(double normalized, double raw, double x, double z) {
    if (!std::isfinite(normalized)) {
      if (!bad) arg = {x, z};
      bad = true;
    } else if (count == 0 || normalized > max_n) {
      if (!bad) arg = {x, z};
      max_n = normalized;
    }
    sum += std::isfinite(normalized) ? normalized : 0.0;
    if (std::isfinite(raw)) max_raw = std::max(max_raw, raw);
    ++count;
  }
  void fail(const std::string& what) {
    if (errors++ == 0) first_error = what;
  }
  void into(CheckResult& r) const {
    r.points = count;
    r.max_abs = bad ? std::numeric_limits<double>::infinity() : max_n;
    r.mean_abs = count ? sum / count : 0.0;
    r.max_raw = max_raw;
    r.argmax = arg;
    r.pass = count > 0 && !bad && errors == 0 && r.max_abs <= r.tolerance;
    if (errors) {
      r.details["point_errors"] = errors;
      r.details["first_error"] = first_error;
    }
  }
};

CheckResult not_applicable(const std::string& name, double tol, const std::string& why) {
  CheckResult r;
  r.name = name;
  r.tolerance = tol;
  r.applicable = false;
  r.pass = true;
  r.details["note"] = why;
  return r;
}

std::string where(double x, double z, const std::exception& e) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << x << ", " << z << "): " << e.what();
  return os.str();
}

// f(end) - f(start) along the segment from the gradient component.
template <typename G>
cplx line_integral(G grad, double x0, double z0, double x1, double z1) {
  const GaussRule& rule = gauss_legendre(8);
  const int panels = 8;
  cplx acc(0);
  for (int p = 0; p < panels; ++p) {
    const double a = double(p) / panels, b = double(p + 1) / panels;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double t = 0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[q];
      const double x = x0 + t * (x1 - x0), z = z0 + t * (z1 - z0);
      acc += 0.5 * (b - a) * rule.weights[q] * grad(x, z, x1 - x0, z1 - z0);
    }
  }
  return acc;
}

}  // namespace

void validate_grid(const GridSpec& g) {
  if (g.nx < 5 || g.nz < 5) throw ConfigError("grid: nx, nz >= 5 required");
  if (g.order < 1) throw ConfigError("grid: jet order >= 1 required");
  if (!(g.h >= 1e-6 && g.h <= 1e-2)) throw ConfigError("grid: h must lie in [1e-6, 1e-2]");
  if (g.rect && !(g.rect->x_lo < g.rect->x_hi && g.rect->z_lo < g.rect->z_hi))
    throw ConfigError("grid: rectangle must satisfy lo < hi");
}

Rect grid_rect(const FieldBundle& b, const GridSpec& g) { return g.rect ? *g.rect : b.domain.rect; }

bool ResidualReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

const CheckResult* ResidualReport::find(const std::string& name) const {
  for (const CheckResult& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {"compat", "dependence", "wf", "eq5", "eq10", "reconstruct"};
  return names;
}

double default_tolerance(const std::string& check) {
  if (check == "reconstruct") return 1e-6;
  if (std::find(check_names().begin(), check_names().end(), check) == check_names().end())
    throw ConfigError("unknown check '" + check + "'");
  return 1e-9;
}

std::vector<std::pair<double, double>> grid_points(const FieldBundle& b, const GridSpec& g) {
  validate_grid(g);
  const Rect r = grid_rect(b, g);
  std::vector<std::pair<double, double>> pts;
  for (int j = 0; j < g.nz; ++j) {
    const double z = r.z_lo + (r.z_hi - r.z_lo) * j / (g.nz - 1);
    for (int i = 0; i < g.nx; ++i) {
      const double x = r.x_lo + (r.x_hi - r.x_lo) * i / (g.nx - 1);
      if (b.domain.contains(x, z)) pts.emplace_back(x, z);
    }
  }
  if (pts.size() < 10)
    throw DomainError("safe domain exhausted: " + std::to_string(pts.size()) +
                      " admissible grid points (at least 10 required) for " + b.family);
  return pts;
}

std::vector<std::pair<double, double>> probe_points(const FieldBundle& b, const Rect& r, std::uint64_t seed,
                                                    int count) {
  std::mt19937_64 gen(seed);
  auto u = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  std::vector<std::pair<double, double>> pts;
  const long attempts = 100L * std::max(count, 1);
  for (long a = 0; a < attempts && static_cast<int>(pts.size()) < count; ++a) {
    const double x = r.x_lo + u() * (r.x_hi - r.x_lo);
    const double z = r.z_lo + u() * (r.z_hi - r.z_lo);
    if (b.domain.contains(x, z)) pts.emplace_back(x, z);
  }
  if (static_cast<int>(pts.size()) < std::min(count, 10))
    throw DomainError("safe domain exhausted: only " + std::to_string(pts.size()) + " admissible probe points for " +
                      b.family);
  return pts;
}

CheckResult check_compatibility(const FieldBundle& b, const GridSpec& g, double tol) {
  CheckResult r;
  r.name = "compat";
  r.tolerance = tol;
  Accum acc;
  const int n = b.n;
  std::vector<double> chain(static_cast<std::size_t>(n), 0.0);
  double w_field = 0.0, characteristic = 0.0;
  for (const auto& [x, z] : grid_points(b, g)) {
    try {
      const FieldSample s = eval_fields(b, x, z, std::max(1, g.order));
      double worst = 0.0, worst_raw = 0.0;
      auto take = [&](const Residual& res, double& slot) {
        slot = std::max(slot, std::isfinite(res.normalized) ? res.normalized : 1e300);
        if (!(res.normalized <= worst)) worst = res.normalized, worst_raw = res.raw;
      };
      for (int k = 0; k + 1 < n; ++k) {
        take(make_residual({s.a[k].partial(1, 0), -s.a[k + 1].partial(0, 1)}), chain[k]);
      }
      const cplx Wp = W_prime(b, s);
      const JetC& last = s.a[static_cast<std::size_t>(n - 1)];
      take(make_residual({last.partial(1, 0), -Wp * s.a[0].partial(0, 1)}), chain[static_cast<std::size_t>(n - 1)]);
      take(make_residual({last.partial(1, 0), -s.W.partial(0, 1)}), w_field);
      if (b.characteristic) take(b.characteristic(x, z), characteristic);
      acc.add(worst, worst_raw, x, z);
    } catch (const std::exception& e) {
      acc.fail(where(x, z, e));
    }
  }
  r.details["chain_max"] = chain;  // k = 0..n-2, then the W'(a0) link
  r.details["w_field_chain_max"] = w_field;
  if (b.characteristic) r.details["characteristic_max"] = characteristic;
  r.details["w_prime"] = b.W_explicit ? "explicit" : b.relation_fn ? "relation" : "projection";
  acc.into(r);
  return r;
}

CheckResult check_dependence(const FieldBundle& b, const GridSpec& g, double tol) {
  CheckResult r;
  r.name = "dependence";
  r.tolerance = tol;
  Accum acc;
  struct Pt {
    double x, z, J, norm;
  };
  std::vector<Pt> pts;
  double top = 0.0;
  for (const auto& [x, z] : grid_points(b, g)) {
    try {
      const FieldSample s = eval_fields(b, x, z, 1);
      const cplx fx = s.f.partial(1, 0), fz = s.f.partial(0, 1);
      const cplx Wx = s.W.partial(1, 0), Wz = s.W.partial(0, 1);
      const double J = std::abs(fx * Wz - fz * Wx);
      const double norm = std::hypot(std::abs(fx), std::abs(fz)) * std::hypot(std::abs(Wx), std::abs(Wz));
      pts.push_back({x, z, J, norm});
      if (std::isfinite(norm)) top = std::max(top, norm);
    } catch (const std::exception& e) {
      acc.fail(where(x, z, e));
    }
  }
  // Where a gradient vanishes the ratio is 0/0; such points carry no information.
  int degenerate = 0;
  for (const Pt& p : pts) {
    if (p.norm < 1e-6 * top && p.J <= 1e-12 * top) {
      ++degenerate;
      continue;
    }
    acc.add(p.J / (p.norm + 1e-30), p.J, p.x, p.z);
  }
  r.details["degenerate_points"] = degenerate;
  acc.into(r);
  return r;
}

CheckResult check_wf_relation(const FieldBundle& b, const GridSpec& g, double tol) {
  if (!b.relation_fn) return not_applicable("wf", tol, "family has no closed-form W-f relation");
  CheckResult r;
  r.name = "wf";
  r.tolerance = tol;
  r.details["relation"] = relation_name(b.relation);
  Accum acc;
  const auto pts = grid_points(b, g);
  for (const auto& [x, z] : pts) {
    try {
      const FieldSample s = eval_fields(b, x, z, 0);
      std::vector<cplx> terms;
      for (const JetC& t : b.relation_fn(s.W, s.f)) terms.push_back(t.value());
      const Residual res = make_residual(terms);
      acc.add(res.normalized, res.raw, x, z);
    } catch (const std::exception& e) {
      acc.fail(where(x, z, e));
    }
  }
  acc.into(r);

  // f and W rebuilt from the derivative-level functions alone.
  if (b.general) {
    const auto [x0, z0] = pts.front();
    const FieldSample s0 = eval_fields(b, x0, z0, 0);
    double worst_f = 0.0, worst_W = 0.0;
    int used = 0, skipped = 0;
    const std::size_t stride = std::max<std::size_t>(1, pts.size() / 40);
    for (std::size_t i = 1; i < pts.size(); i += stride) {
      const auto [x, z] = pts[i];
      try {
        auto leg = [&](double xa, double za, double xb, double zb) {
          const cplx df = line_integral(
              [&](double px, double pz, double dx, double dz) {
                const Gradients gr = *derivative_gradients(b, px, pz);
                return gr.fx * dx + gr.fz * dz;
              },
              xa, za, xb, zb);
          const cplx dW = line_integral(
              [&](double px, double pz, double dx, double dz) {
                const Gradients gr = *derivative_gradients(b, px, pz);
                return gr.Wx * dx + gr.Wz * dz;
              },
              xa, za, xb, zb);
          return std::pair{df, dW};
        };
        const auto [f1, W1] = leg(x0, z0, x, z0);
        const auto [f2, W2] = leg(x, z0, x, z);
        const FieldSample s = eval_fields(b, x, z, 0);
        worst_f = std::max(worst_f, std::abs(s.f.value() - s0.f.value() - f1 - f2));
        worst_W = std::max(worst_W, std::abs(s.W.value() - s0.W.value() - W1 - W2));
        ++used;
      } catch (const std::exception&) {
        ++skipped;
      }
    }
    r.details["quadrature_f_max"] = worst_f;
    r.details["quadrature_W_max"] = worst_W;
    r.details["quadrature_points"] = used;
    r.details["quadrature_skipped"] = skipped;
    r.details["quadrature_threshold"] = 1e-6;
    r.details["quadrature_agrees"] = used > 0 && worst_f <= 1e-6 && worst_W <= 1e-6;
  }
  return r;
}

namespace {

template <typename F>
CheckResult probe_check(const std::string& name, const FieldBundle& b, const GridSpec& g, std::uint64_t seed,
                        int probes, double tol, F&& residual) {
  CheckResult r;
  r.name = name;
  r.tolerance = tol;
  Accum acc;
  for (const auto& [x, z] : probe_points(b, grid_rect(b, g), seed, probes)) {
    try {
      const Residual res = residual(x, z);
      acc.add(res.normalized, res.raw, x, z);
    } catch (const std::exception& e) {
      acc.fail(where(x, z, e));
    }
  }
  acc.into(r);
  return r;
}

}  // namespace

CheckResult check_eq5(const FieldBundle& b, const GridSpec& g, std::uint64_t seed, int probes, double tol) {
  if (!b.quadruple) return not_applicable("eq5", tol, "family has no constant-nu derivative quadruple");
  const Quadruple& q = *b.quadruple;
  double eq6 = 0.0;
  int eq6_skipped = 0;
  CheckResult r = probe_check("eq5", b, g, seed, probes, tol, [&](double x, double z) {
    const QuadValues v = quadruple_values(q, x, z);
    try {
      eq6 = std::max(eq6, residual_eq6(v, q.nu, q.n).normalized);
    } catch (const DomainError&) {
      ++eq6_skipped;
    }
    return residual_eq5(v, q.nu, q.n);
  });
  r.details["n"] = q.n;
  r.details["eq6_max"] = eq6;
  r.details["eq6_skipped"] = eq6_skipped;
  return r;
}

CheckResult check_eq10(const FieldBundle& b, const GridSpec& g, std::uint64_t seed, int probes, double tol) {
  if (!b.general) return not_applicable("eq10", tol, "family has no general derivative quadruple");
  CheckResult r = probe_check("eq10", b, g, seed, probes, tol,
                              [&](double x, double z) { return residual_eq10(*b.general, x, z); });
  r.details["n"] = b.general->n;
  return r;
}

ResidualReport run_checks(const FieldBundle& b, const GridSpec& g, const VerifyOptions& opt) {
  validate_grid(g);
  const std::vector<std::string> selected = opt.checks.empty() ? check_names() : opt.checks;
  for (const std::string& c : selected) default_tolerance(c);
  for (const auto& [name, v] : opt.tolerances) {
    default_tolerance(name);
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("tolerance for '" + name + "' must be positive");
  }
  if (opt.probes < 10) throw ConfigError("probes >= 10 required");
  auto tol = [&](const std::string& c) {
    const auto it = opt.tolerances.find(c);
    return it == opt.tolerances.end() ? default_tolerance(c) : it->second;
  };

  ResidualReport rep;
  rep.family = b.family;
  rep.rect = grid_rect(b, g);
  rep.grid = g;
  rep.seed = opt.seed;
  rep.probes = opt.probes;
  rep.notes = b.notes;
  for (const std::string& c : check_names()) {
    if (std::find(selected.begin(), selected.end(), c) == selected.end()) continue;
    if (c == "compat") rep.checks.push_back(check_compatibility(b, g, tol(c)));
    else if (c == "dependence") rep.checks.push_back(check_dependence(b, g, tol(c)));
    else if (c == "wf") rep.checks.push_back(check_wf_relation(b, g, tol(c)));
    else if (c == "eq5") rep.checks.push_back(check_eq5(b, g, opt.seed, opt.probes, tol(c)));
    else if (c == "eq10") rep.checks.push_back(check_eq10(b, g, opt.seed, opt.probes, tol(c)));
    else rep.checks.push_back(reconstruct_U(b, g, tol(c)));
  }
  return rep;
}

}  // namespace monge
