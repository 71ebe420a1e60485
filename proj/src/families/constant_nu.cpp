#include <cmath>

#include "builders.hpp"

namespace monge::detail {

namespace {

using S = SeriesC;

struct ConstNuParts {
  std::string family;
  int n = 3;
  NuPair nu;
  LineArgs lines;
  UFn L1, L2, L1p, L2p;
  UFn sigma, sigma_x, theta, theta_z;
  Relation relation = Relation::None;
  RelationFn relation_fn;
  Rect rect;
  std::vector<DomainPredicate> predicates;
  std::vector<std::string> notes;
};

void require_finite(const std::string& fam, std::initializer_list<std::pair<const char*, double>> ps) {
  for (const auto& [name, v] : ps) {
    if (!std::isfinite(v)) throw ConfigError(fam + ": parameter " + name + " must be finite");
  }
}

NuPair nu_pair(const std::string& fam, double nu1, double nu2) {
  if (nu1 == nu2)
    throw ConfigError(fam + ": nu1 != nu2 required (delta = nu2 - nu1 must be nonzero), got nu1 = nu2 = " +
                      std::to_string(nu1));
  return make_nu_pair(nu1, nu2);
}

double re(cplx v) { return std::abs(v.imag()) > 1e-12 * std::max(1.0, std::abs(v)) ? -1.0 : v.real(); }

FieldBundle assemble(ConstNuParts p, const Mutations& mut) {
  const double fs = mut.factor("sigma_x"), ft = mut.factor("theta_z");
  const double f1 = mut.factor("L1p"), f2 = mut.factor("L2p");
  if (fs != 1.0) p.sigma = scaled(p.sigma, fs), p.sigma_x = scaled(p.sigma_x, fs);
  if (ft != 1.0) p.theta = scaled(p.theta, ft), p.theta_z = scaled(p.theta_z, ft);
  if (f1 != 1.0) p.L1 = scaled(p.L1, f1), p.L1p = scaled(p.L1p, f1);
  if (f2 != 1.0) p.L2 = scaled(p.L2, f2), p.L2p = scaled(p.L2p, f2);

  FieldBundle b;
  b.family = p.family;
  b.n = p.n;
  b.relation = p.relation;
  b.relation_fn = p.relation_fn;
  b.domain.rect = p.rect;
  b.domain.predicates = p.predicates;
  const LPairSpec L{p.L1, p.L2};
  b.fields = [n = p.n, nu = p.nu, lines = p.lines, L, sigma = p.sigma, theta = p.theta](const JetC& X,
                                                                                         const JetC& Z) {
    FieldSample s;
    for (int k = 0; k < n; ++k) s.a.push_back(eval_l(n - 1 - k, 0, L, nu, X, Z, lines));
    s.a[0] += monge::apply(theta, Z);
    s.W = eval_l(-1, 0, L, nu, X, Z, lines) + monge::apply(sigma, X);
    s.f = s.a[0];
    return s;
  };
  b.quadruple = Quadruple{p.n, p.nu, p.lines, p.sigma_x, p.theta_z, p.L1p, p.L2p};
  b.general = as_general(*b.quadruple);
  b.mutation_targets = {"sigma_x", "theta_z", "L1p", "L2p"};
  b.f_convention = "f = a0 = U_zz..z";
  b.notes = p.notes;
  return b;
}

}  // namespace

FieldBundle build_sigma_const(const M3SigmaConstCfg& c, const Mutations& mut) {
  const std::string fam = "M3SigmaConst";
  require_finite(fam, {{"nu1", c.nu1}, {"nu2", c.nu2}, {"A", c.A}, {"k", c.k}, {"d1", c.d1}, {"d2", c.d2}});
  ConstNuParts p;
  p.family = fam;
  p.nu = nu_pair(fam, c.nu1, c.nu2);
  if (c.k == 0.0) throw ConfigError(fam + ": k must be nonzero");
  if (c.A == 0.0) throw ConfigError(fam + ": A must be nonzero");
  p.lines = {c.d1, c.d2};
  const cplx nu1 = p.nu.nu1, nu2 = p.nu.nu2, delta = p.nu.delta, box = p.nu.box3;
  const cplx At = p.nu.rho * c.A, A = c.A;
  const double k = c.k;
  auto L = [=](cplx nui) {
    return [=](const S& t) { return (nui * At / k) * log(1.0 - exp(-k * t) / At) + (nu1 * nu2 * A) * t; };
  };
  auto Lp = [=](cplx nui) { return [=](const S& t) { return nui / (exp(k * t) - 1.0 / At) + nu1 * nu2 * A; }; };
  p.L1 = L(nu1), p.L2 = L(nu2), p.L1p = Lp(nu1), p.L2p = Lp(nu2);
  p.sigma = [=](const S& x) { return A * x; };
  p.sigma_x = [=](const S& x) { return S::constant(A, x.order()); };
  const cplx d1 = c.d1, d2 = c.d2;
  p.theta = [=](const S& z) {
    return -(At * box / k) * log(exp(-k * nu1 * z - k * d1) - exp(-k * nu2 * z - k * d2)) - A * nu1 * nu2 * box * z;
  };
  p.theta_z = [=](const S& z) {
    const S E1 = exp(k * (nu1 * z + d1)), E2 = exp(k * (nu2 * z + d2));
    return A * nu1 * nu2 * (nu2 * nu2 * E2 - nu1 * nu1 * E1) / (E1 - E2);
  };
  const cplx K = ipow(nu2, 3) - ipow(nu1, 3);
  p.relation = Relation::Eq7;
  p.relation_fn = [=](const JetC& W, const JetC& f) {
    const JetC w = W * (k / At);
    return std::vector<JetC>{f * (delta * k / At), -ipow(nu2, 3) * w, K * log(At * (exp(w) - 1.0))};
  };
  p.rect = {1.0, 2.0, 0.1, 0.6};
  p.predicates.push_back(positive("1 - e^(-k D1)/(rho A) > 0", [=](double x, double z) {
    return re(1.0 - std::exp(-k * (x + nu1 * z + d1)) / At);
  }));
  p.predicates.push_back(positive("1 - e^(-k D2)/(rho A) > 0", [=](double x, double z) {
    return re(1.0 - std::exp(-k * (x + nu2 * z + d2)) / At);
  }));
  p.predicates.push_back(positive("theta log argument > 0", [=](double, double z) {
    return re(std::exp(-k * nu1 * z - k * d1) - std::exp(-k * nu2 * z - k * d2));
  }));
  p.notes.push_back("rho A is used in place of A in the logarithmic terms so that Eq7 holds literally");
  FieldBundle b = assemble(p, mut);
  // needs W, so it is attached to the assembled fields; unmutated, so a mutation cannot shrink the domain
  b.domain.predicates.push_back(positive("relation log argument rho A (e^(Wk/(rho A)) - 1) > 0",
                                         [fields = assemble(p, {}).fields, k, At](double x, double z) {
                                           const auto [X, Z] = coordinates(cplx(x), cplx(z), 0);
                                           const cplx w = fields(X, Z).W.value() * k / At;
                                           return re(At * (std::exp(w) - 1.0));
                                         }));
  return b;
}

FieldBundle build_l1_const(const M3L1ConstCfg& c, const Mutations& mut) {
  const std::string fam = "M3L1Const";
  require_finite(fam, {{"nu1", c.nu1}, {"nu2", c.nu2}, {"D", c.D}, {"k", c.k}});
  ConstNuParts p;
  p.family = fam;
  p.nu = nu_pair(fam, c.nu1, c.nu2);
  if (c.k == 0.0) throw ConfigError(fam + ": k must be nonzero");
  if (c.D == 0.0) throw ConfigError(fam + ": D must be nonzero");
  if (c.nu2 <= 0.0) throw ConfigError(fam + ": nu2 > 0 required (ln nu2 appears in sigma and theta)");
  const double nu1 = c.nu1, nu2 = c.nu2, k = c.k, D = c.D;
  const double Dt = c.dtilde == DTilde::Sum ? D * (nu1 + nu2) : D * nu2;
  if (Dt == 0.0) throw ConfigError(fam + ": D tilde vanishes");
  const double nu23 = nu2 * nu2 * nu2, g = D * (nu2 * nu2 - nu1 * nu1);
  p.L1 = [=](const S& t) { return D * t; };
  p.L1p = [=](const S& t) { return S::constant(D, t.order()); };
  p.L2 = [=](const S& t) { return D * t + (g / (k * nu2 * nu2)) * log(1.0 - nu23 * exp(-k * t)); };
  p.L2p = [=](const S& t) { return D + g * nu2 / (exp(k * t) - nu23); };
  p.sigma = [=](const S& x) {
    return D * x / (nu1 * nu2) - (Dt / (k * nu23)) * log(1.0 - (nu2 * nu2 / Dt) * exp(-k * x)) -
           cplx(Dt * std::log(nu2) / (k * nu23));
  };
  p.sigma_x = [=](const S& x) { return D / (nu1 * nu2) - (1.0 / nu2) / (exp(k * x) - nu2 * nu2 / Dt); };
  p.theta = [=](const S& z) {
    return -nu1 * nu1 * D * z - (Dt / k) * log(1.0 - exp(nu2 * k * z) / (nu2 * Dt)) - cplx((Dt / k) * std::log(nu2));
  };
  p.theta_z = [=](const S& z) { return -nu1 * nu1 * D + 1.0 / (exp(-nu2 * k * z) - 1.0 / (nu2 * Dt)); };
  p.relation = Relation::Eq9;
  p.relation_fn = [=](const JetC& W, const JetC& f) {
    const JetC one = JetC::constant(-1.0, W.order());
    return std::vector<JetC>{(1.0 / nu2) * exp(W * (-k * nu23 / Dt)), -nu2 * nu2 * exp(f * (-k / Dt)), one};
  };
  p.rect = {2.5, 3.5, 0.1, 0.6};
  p.predicates.push_back(positive("1 - nu2^3 e^(-k D2) > 0", [=](double x, double z) {
    return 1.0 - nu23 * std::exp(-k * (x + nu2 * z));
  }));
  p.predicates.push_back(positive("1 - (nu2^2/Dt) e^(-k x) > 0", [=](double x, double) {
    return 1.0 - (nu2 * nu2 / Dt) * std::exp(-k * x);
  }));
  p.predicates.push_back(positive("1 - e^(nu2 k z)/(nu2 Dt) > 0", [=](double, double z) {
    return 1.0 - std::exp(nu2 * k * z) / (nu2 * Dt);
  }));
  p.notes.push_back(std::string("D tilde = ") + (c.dtilde == DTilde::Sum ? "D (nu1 + nu2)" : "D nu2"));
  return assemble(p, mut);
}

FieldBundle build_theta_const(const M3ThetaConstCfg& c, const Mutations& mut) {
  const std::string fam = "M3ThetaConst";
  require_finite(fam, {{"nu1", c.nu1}, {"nu2", c.nu2}, {"E", c.E}, {"k", c.k}});
  ConstNuParts p;
  p.family = fam;
  p.nu = nu_pair(fam, c.nu1, c.nu2);
  if (c.k == 0.0) throw ConfigError(fam + ": k must be nonzero");
  if (c.E == 0.0) throw ConfigError(fam + ": E must be nonzero");
  const double nu1 = c.nu1, nu2 = c.nu2, k = c.k, E = c.E;
  const double rho = p.nu.rho.real(), Er = E * rho, delta = nu2 - nu1;
  auto L = [=](double v) {
    return [=](const S& t) { return (-E * t - (Er / k) * log(1.0 + (v / Er) * exp(-k * t / v))) / (v * v); };
  };
  auto Lp = [=](double v) { return [=](const S& t) { return (-E + 1.0 / (exp(k * t / v) + v / Er)) / (v * v); }; };
  p.L1 = L(nu1), p.L2 = L(nu2), p.L1p = Lp(nu1), p.L2p = Lp(nu2);
  const double n12 = nu1 * nu1 * nu2 * nu2;
  p.sigma = [=](const S& x) {
    return E * x / n12 - (E * (nu1 + nu2) / (k * n12)) * log(nu2 * exp(k * x / nu1) - nu1 * exp(k * x / nu2));
  };
  p.sigma_x = [=](const S& x) {
    const S e1 = exp(k * x / nu1), e2 = exp(k * x / nu2);
    return E * (e1 / (nu1 * nu1 * nu1) - e2 / (nu2 * nu2 * nu2)) / (nu1 * e2 - nu2 * e1);
  };
  p.theta = [=](const S& z) { return E * z; };
  p.theta_z = [=](const S& z) { return S::constant(E, z.order()); };
  const double gamma = Er / (k * delta);
  const double inv3 = 1.0 / (nu2 * nu2 * nu2) - 1.0 / (nu1 * nu1 * nu1);
  p.relation = Relation::Eq613;
  p.relation_fn = [=](const JetC& W, const JetC& f) {
    return std::vector<JetC>{W, f * (-1.0 / (nu2 * nu2 * nu2)), -gamma * inv3 * log(Er * (exp(f * (-1.0 / gamma)) - 1.0))};
  };
  p.rect = {0.5, 1.5, -0.4, -0.1};
  p.predicates.push_back(positive("1 + (nu1/(E rho)) e^(-k D1/nu1) > 0", [=](double x, double z) {
    return 1.0 + (nu1 / Er) * std::exp(-k * (x + nu1 * z) / nu1);
  }));
  p.predicates.push_back(positive("1 + (nu2/(E rho)) e^(-k D2/nu2) > 0", [=](double x, double z) {
    return 1.0 + (nu2 / Er) * std::exp(-k * (x + nu2 * z) / nu2);
  }));
  p.predicates.push_back(positive("sigma log argument > 0", [=](double x, double) {
    return nu2 * std::exp(k * x / nu1) - nu1 * std::exp(k * x / nu2);
  }));
  FieldBundle b = assemble(p, mut);
  b.domain.predicates.push_back(positive("relation log argument E rho (e^(-f/gamma) - 1) > 0",
                                         [fields = assemble(p, {}).fields, Er, gamma](double x, double z) {
                                           const auto [X, Z] = coordinates(cplx(x), cplx(z), 0);
                                           const cplx f = fields(X, Z).a[0].value();
                                           return re(Er * (std::exp(-f / gamma) - 1.0));
                                         }));
  return b;
}

FieldBundle build_mn_theta_const(const MnThetaConstCfg& c, const Mutations& mut) {
  const std::string fam = "MnThetaConst";
  require_finite(fam, {{"nu1", c.nu1}, {"nu2", c.nu2}, {"E", c.E}, {"k", c.k}, {"c", c.c}, {"cbar", c.cbar}});
  if (c.n < 3 || c.n > 8) throw ConfigError(fam + ": n must be between 3 and 8");
  ConstNuParts p;
  p.family = fam;
  p.n = c.n;
  p.nu = nu_pair(fam, c.nu1, c.nu2);
  if (c.k == 0.0) throw ConfigError(fam + ": k must be nonzero");
  if (c.E == 0.0) throw ConfigError(fam + ": E must be nonzero");
  const int n = c.n;
  const double nu1 = c.nu1, nu2 = c.nu2, k = c.k, E = c.E;
  const double bn = p.nu.box_n(n).real(), bn1 = p.nu.box_n(n - 1).real(), bn2 = p.nu.box_n(n - 2).real();
  if (bn1 == 0.0) throw ConfigError(fam + ": box_(n-1) vanishes");
  const double B = bn / (nu1 * nu2 * bn1);
  const double k1 = k * nu2 * bn1, k2 = k * nu1 * bn1;
  const double p1 = std::pow(nu1, n - 1), p2 = std::pow(nu2, n - 1);
  const double P = std::pow(nu1 * nu2, n - 1);
  auto Lp = [=](double v, double pv, double ci, double ki) {
    return [=](const S& t) { return (E / (v * (B - pv * ci * exp(ki * t))) - E) / pv; };
  };
  auto L = [=](double v, double pv, double ci, double ki) {
    return [=](const S& t) {
      return ((E / (v * B)) * (t - log_abs(B - pv * ci * exp(ki * t)) / ki) - E * t) / pv;
    };
  };
  p.L1 = L(nu1, p1, c.c, k1), p.L2 = L(nu2, p2, c.cbar, k2);
  p.L1p = Lp(nu1, p1, c.c, k1), p.L2p = Lp(nu2, p2, c.cbar, k2);
  const double alpha = nu1 * nu2 * bn2 / P, beta = -1.0 / (k * P);
  const double cc = c.c, cb = c.cbar;
  p.sigma = [=](const S& x) {
    return (E / (nu1 * nu2)) * (alpha * x + beta * log_abs(p2 * cb * exp(k2 * x) - p1 * cc * exp(k1 * x)));
  };
  p.sigma_x = [=](const S& x) {
    const S e1 = exp(k1 * x), e2 = exp(k2 * x);
    return E * (cc * e1 - cb * e2) / (nu1 * nu2 * (p2 * cb * e2 - p1 * cc * e1));
  };
  p.theta = [=](const S& z) { return E * z; };
  p.theta_z = [=](const S& z) { return S::constant(E, z.order()); };
  p.relation = Relation::None;
  p.rect = {-1.0, -0.5, -0.2, 0.3};
  p.predicates.push_back(nonzero("B - nu1^(n-1) c e^(kappa1 D1) != 0", [=](double x, double z) {
    return B - p1 * cc * std::exp(k1 * (x + nu1 * z));
  }));
  p.predicates.push_back(nonzero("B - nu2^(n-1) cbar e^(kappa2 D2) != 0", [=](double x, double z) {
    return B - p2 * cb * std::exp(k2 * (x + nu2 * z));
  }));
  p.predicates.push_back(nonzero("sigma log argument != 0", [=](double x, double) {
    return p2 * cb * std::exp(k2 * x) - p1 * cc * std::exp(k1 * x);
  }));
  p.notes.push_back("no closed-form W(f); compat uses the gradient projection");
  return assemble(p, mut);
}

}  // namespace monge::detail
