#include <cmath>

#include "builders.hpp"
#include "monge/hodograph.hpp"

namespace monge::detail {

namespace {

using S = SeriesC;

// One slope family. Constant sides carry no fields of their own.
struct Side {
  bool constant = false;
  cplx nu{0.0};
  UFn Theta, Cp;
  std::vector<UFn> A;  // a^0 .. a^{n-1} as functions of nu
  UFn V;               // contribution to W
  std::function<cplx(double, double)> seed;
};

struct RiemannParts {
  std::string family;
  int n = 3;
  Side s1, s2;
  UFn sigma, sigma_x, theta, theta_z;
  bool theta_zero = false;
  Relation relation = Relation::None;
  RelationFn relation_fn;
  Rect rect;
  std::vector<DomainPredicate> predicates;
  std::vector<std::string> notes;
};

void scale_side(Side& s, double f) {
  if (f == 1.0 || s.constant) return;
  s.Cp = scaled(s.Cp, f);
  for (UFn& a : s.A) a = scaled(a, f);
  s.V = scaled(s.V, f);
}

GeneralSide general_side(const Side& s) {
  GeneralSide g;
  g.constant_nu = s.constant;
  g.nu = s.nu;
  g.Theta = s.Theta;
  g.Cp = s.Cp;
  g.seed = s.seed;
  return g;
}

void add_side(FieldSample& out, const Side& side, const JetC& X, const JetC& Z) {
  if (side.constant) return;
  const double x = X.value().real(), z = Z.value().real();
  const cplx guess = side.seed(x, z);
  const cplx root = solve_implicit(side.Theta, x, z, guess);
  if (std::abs(root - guess) > 1e-6 * std::max(1.0, std::abs(guess)))
    throw DomainError("implicit slope left the branch selected by its seed");
  const JetC nu = implicit_jet(monge_implicit(side.Theta), X, Z, root);
  for (std::size_t k = 0; k < side.A.size(); ++k) out.a[k] += monge::apply(side.A[k], nu);
  out.W += monge::apply(side.V, nu);
}

FieldBundle assemble(RiemannParts p, const Mutations& mut) {
  scale_side(p.s1, mut.factor("C1p"));
  scale_side(p.s2, mut.factor("C2p"));
  const double fs = mut.factor("sigma_x"), ft = mut.factor("theta_z");
  if (fs != 1.0) p.sigma = scaled(p.sigma, fs), p.sigma_x = scaled(p.sigma_x, fs);
  if (ft != 1.0) p.theta = scaled(p.theta, ft), p.theta_z = scaled(p.theta_z, ft);

  FieldBundle b;
  b.family = p.family;
  b.n = p.n;
  b.relation = p.relation;
  b.relation_fn = p.relation_fn;
  b.domain.rect = p.rect;
  b.domain.predicates = p.predicates;
  b.fields = [p](const JetC& X, const JetC& Z) {
    FieldSample s;
    s.a.assign(static_cast<std::size_t>(p.n), JetC::constant(0.0, X.order()));
    s.W = JetC::constant(0.0, X.order());
    add_side(s, p.s1, X, Z);
    add_side(s, p.s2, X, Z);
    s.a[0] += monge::apply(p.theta, Z);
    s.W += monge::apply(p.sigma, X);
    s.f = s.a[0];
    return s;
  };
  GeneralQuadruple g;
  g.n = p.n;
  g.s1 = general_side(p.s1);
  g.s2 = general_side(p.s2);
  g.sigma_x = p.sigma_x;
  g.theta_z = p.theta_z;
  b.general = g;
  if (!p.s1.constant) b.mutation_targets.push_back("C1p");
  if (!p.s2.constant) b.mutation_targets.push_back("C2p");
  b.mutation_targets.push_back("sigma_x");
  if (!p.theta_zero) b.mutation_targets.push_back("theta_z");
  b.f_convention = "f = a0 = U_zzz";
  b.notes = p.notes;
  return b;
}

double re(cplx v) { return std::abs(v.imag()) > 1e-12 * std::max(1.0, std::abs(v)) ? -1.0 : v.real(); }

// x + nu z = nu^2 has roots (z -/+ sqrt(z^2 + 4x))/2.
Side quadratic_side(int sign) {
  Side s;
  s.Theta = polynomial({0.0, 0.0, 1.0});
  s.seed = [sign](double x, double z) { return cplx((z + sign * std::sqrt(z * z + 4.0 * x)) / 2.0); };
  return s;
}

double nu_root(int sign, double x, double z) { return (z + sign * std::sqrt(z * z + 4.0 * x)) / 2.0; }

// int_0^v dt/(t^3 + r^3) and int_0^v t dt/(t^3 + r^3), real r != 0, no pole between 0 and v.
UFn cubic_inv0(double r) {
  const double s3 = std::sqrt(3.0), c = std::atan(-1.0 / s3);
  return [=](const S& v) {
    return (1.0 / (6.0 * r * r)) * log(ipow(v + r, 2) / (v * v - r * v + r * r)) +
           (1.0 / (r * r * s3)) * (atan((2.0 * v - r) / (r * s3)) - c);
  };
}
UFn cubic_inv1(double r) {
  const double s3 = std::sqrt(3.0), c = std::atan(-1.0 / s3);
  return [=](const S& v) {
    return (1.0 / (6.0 * r)) * log((v * v - r * v + r * r) / ipow(v + r, 2)) +
           (1.0 / (r * s3)) * (atan((2.0 * v - r) / (r * s3)) - c);
  };
}

}  // namespace

FieldBundle build_hodo(const M3HodoExampleCfg& c, const Mutations& mut) {
  const std::string fam = "M3HodoExample";
  for (double v : {c.k, c.alpha, c.beta, c.nu1}) {
    if (!std::isfinite(v)) throw ConfigError(fam + ": parameters must be finite");
  }
  if (c.k == 0.0) throw ConfigError(fam + ": k must be nonzero");
  if (c.alpha <= 0.0)
    throw ConfigError(fam + ": alpha > 0 required (the C antiderivative is taken from nu = 0)");
  const double k = c.k, al = c.alpha, be = c.beta;
  RiemannParts p;
  p.family = fam;
  p.s1.constant = true;
  p.s1.nu = c.nu1;
  Side& s = p.s2;
  s.Theta = zero_fn();
  s.Cp = [=](const S& v) { return 1.0 / (k * ipow(v, 3) + al); };
  s.seed = [](double x, double z) { return cplx(-x / z); };
  const double r = std::cbrt(al / k), sq3 = std::sqrt(3.0);
  s.A = {
      [=](const S& v) { return (1.0 / (3.0 * k)) * log(k * ipow(v, 3) + al); },
      [=](const S& v) {
        return (1.0 / k) * ((1.0 / (6.0 * r)) * log((v * v - r * v + r * r) / ipow(v + r, 2)) +
                            (1.0 / (r * sq3)) * atan((2.0 * v - r) / (r * sq3)));
      },
      scaled(cubic_inv0(r), 1.0 / k),
  };
  s.V = [=](const S& v) { return (1.0 / (3.0 * al)) * log(ipow(v, 3) / (k * ipow(v, 3) + al)); };
  p.sigma = [=](const S& x) { return (1.0 / (3.0 * al)) * log(al / ipow(x, 3) + be); };
  p.sigma_x = [=](const S& x) { return -1.0 / (x * (al + be * ipow(x, 3))); };
  p.theta = [=](const S& z) { return -(1.0 / (3.0 * k)) * log(k / ipow(z, 3) + be); };
  p.theta_z = [=](const S& z) { return 1.0 / (z * (k + be * ipow(z, 3))); };
  p.relation = Relation::Eq621;
  p.relation_fn = [=](const JetC& W, const JetC& f) {
    return std::vector<JetC>{exp(W * (3.0 * al)), (al / k) * exp(f * (-3.0 * k)),
                             JetC::constant(-be / k, W.order())};
  };
  p.rect = {-2.0, -1.0, 0.5, 1.5};
  p.predicates = {
      nonzero("|z| >= 1e-3 (nu = -x/z)", [](double, double z) { return std::abs(z) >= 1e-3 ? 1.0 : 0.0; }),
      nonzero("|x| >= 1e-3", [](double x, double) { return std::abs(x) >= 1e-3 ? 1.0 : 0.0; }),
      positive("k nu^3 + alpha > 0", [=](double x, double z) { return k * std::pow(-x / z, 3) + al; }),
      positive("nu^3/(k nu^3 + alpha) > 0",
               [=](double x, double z) {
                 const double v3 = std::pow(-x / z, 3);
                 return v3 / (k * v3 + al);
               }),
      positive("alpha x^-3 + beta > 0", [=](double x, double) { return al / (x * x * x) + be; }),
      positive("k z^-3 + beta > 0", [=](double, double z) { return k / (z * z * z) + be; }),
  };
  p.notes.push_back("Theta = 0 on the implicit side (nu = -x/z); the other side has constant slope nu1 with L' = 0");
  return assemble(p, mut);
}

FieldBundle build_general(const M3GeneralCfg& c, const Mutations& mut) {
  const std::string fam = "M3General";
  if (!std::isfinite(c.g) || c.g == 0.0) throw ConfigError(fam + ": g must be finite and nonzero");
  const double g = c.g;
  RiemannParts p;
  p.family = fam;
  p.s1 = quadratic_side(-1);
  p.s2 = quadratic_side(+1);
  const UFn Cp = [=](const S& v) { return -1.0 / (v * v + g); };
  std::vector<UFn> A;
  if (g < 0.0) {
    const double s = std::sqrt(-g);
    A = {
        [=](const S& v) { return -(v - (g / (2.0 * s)) * log_abs((v - s) / (v + s))); },
        [=](const S& v) { return -0.5 * log_abs(v * v + g); },
        [=](const S& v) { return (-1.0 / (2.0 * s)) * log_abs((v - s) / (v + s)); },
    };
  } else {
    const double r = std::sqrt(g);
    A = {
        [=](const S& v) { return -(v - r * atan(v / r)); },
        [=](const S& v) { return -0.5 * log_abs(v * v + g); },
        [=](const S& v) { return (-1.0 / r) * atan(v / r); },
    };
  }
  const UFn V = [=](const S& v) { return (-1.0 / (2.0 * g)) * log_abs(v * v / (v * v + g)); };
  for (Side* sd : {&p.s1, &p.s2}) sd->Cp = Cp, sd->A = A, sd->V = V;
  p.sigma = [=](const S& x) { return (1.0 / g) * log_abs(x / (x + g)); };
  p.sigma_x = [=](const S& x) { return 1.0 / (x * (x + g)); };
  p.theta = [](const S& z) { return z; };
  p.theta_z = [](const S& z) { return S::constant(1.0, z.order()); };
  p.relation = Relation::Cosh;
  if (g < 0.0) {
    const double s = std::sqrt(-g);
    p.relation_fn = [=](const JetC& W, const JetC& f) {
      return std::vector<JetC>{exp(W * (2.0 * g)) * ipow(cosh(f / s), 2), JetC::constant(-1.0, W.order())};
    };
  } else {
    const double r = std::sqrt(g);
    p.relation_fn = [=](const JetC& W, const JetC& f) {
      return std::vector<JetC>{exp(W * (2.0 * g)) * ipow(cos(f / r), 2), JetC::constant(-1.0, W.order())};
    };
  }
  p.rect = {3.0, 4.0, -0.5, 0.5};
  p.predicates = {
      positive("z^2 + 4x > 0 (real slopes)", [](double x, double z) { return z * z + 4.0 * x; }),
      nonzero("x != 0", [](double x, double) { return x; }),
      nonzero("x + g != 0", [=](double x, double) { return x + g; }),
      nonzero("nu1^2 + g != 0", [=](double x, double z) { const double v = nu_root(-1, x, z); return v * v + g; }),
      nonzero("nu2^2 + g != 0", [=](double x, double z) { const double v = nu_root(1, x, z); return v * v + g; }),
  };
  if (g < 0.0) {
    const double s = std::sqrt(-g);
    p.predicates.push_back(positive("1 - (s z/(x + g))^2 > 0", [=](double x, double z) {
      const double q = s * z / (x + g);
      return 1.0 - q * q;
    }));
  }
  p.notes.push_back("Theta = nu^2 on both sides, C' = -1/(nu^2 + g)");
  return assemble(p, mut);
}

FieldBundle build_general_e0(const M3GeneralE0Cfg& c, const Mutations& mut) {
  const std::string fam = "M3GeneralE0";
  for (double v : {c.a, c.alpha1, c.alpha2}) {
    if (!std::isfinite(v)) throw ConfigError(fam + ": parameters must be finite");
  }
  if (c.a == 0.0) throw ConfigError(fam + ": a must be nonzero");
  if (c.alpha1 == 0.0 || c.alpha2 == 0.0) throw ConfigError(fam + ": alpha1, alpha2 must be nonzero");
  if (c.alpha1 == c.alpha2) throw ConfigError(fam + ": alpha1 != alpha2 required");
  const double a = c.a, a1 = c.alpha1, a2 = c.alpha2, cc = a * a1 * a2;
  if (c.c && std::abs(*c.c - cc) > 1e-12 * std::max(1.0, std::abs(cc)))
    throw ConfigError(fam + ": c must equal a alpha1 alpha2 = " + std::to_string(cc));
  RiemannParts p;
  p.family = fam;
  p.s1 = quadratic_side(-1);
  p.s2 = quadratic_side(+1);
  p.theta_zero = true;
  const UFn Cp = [=](const S& v) { return 1.0 / (a * (ipow(v, 3) + a1) * (ipow(v, 3) + a2)); };
  // partial fractions: C' = (1/(a (alpha2 - alpha1))) [1/(nu^3 + alpha1) - 1/(nu^3 + alpha2)]
  const double r1 = std::cbrt(a1), r2 = std::cbrt(a2);
  const std::vector<UFn> A = {
      [=](const S& v) { return (1.0 / (3.0 * a * (a2 - a1))) * log_abs((ipow(v, 3) + a1) / (ipow(v, 3) + a2)); },
      [=, I1 = cubic_inv1(r1), J1 = cubic_inv1(r2)](const S& v) { return (I1(v) - J1(v)) / (a * (a2 - a1)); },
      [=, I0 = cubic_inv0(r1), J0 = cubic_inv0(r2)](const S& v) { return (I0(v) - J0(v)) / (a * (a2 - a1)); },
  };
  const UFn V = [=](const S& v) {
    const S v3 = ipow(v, 3);
    return (1.0 / (3.0 * a)) * (log_abs(v3) / (a1 * a2) + log_abs(v3 + a1) / (a1 * (a1 - a2)) +
                                 log_abs(v3 + a2) / (a2 * (a2 - a1)));
  };
  for (Side* sd : {&p.s1, &p.s2}) sd->Cp = Cp, sd->A = A, sd->V = V;
  p.sigma = [=](const S& x) { return (1.0 / (3.0 * cc)) * log_abs(a + cc / ipow(x, 3)); };
  p.sigma_x = [=](const S& x) { return -1.0 / (x * (a * ipow(x, 3) + cc)); };
  p.theta = [](const S& z) { return S::constant(0.0, z.order()); };
  p.theta_z = [](const S& z) { return S::constant(0.0, z.order()); };
  const double e = 3.0 * a * (a2 - a1);
  p.relation = Relation::Eq13;
  p.relation_fn = [=](const JetC& W, const JetC& f) {
    return std::vector<JetC>{W * (3.0 * cc * (a2 - a1)), -a2 * log((a2 - a1 * exp(f * -e)) / (a1 - a2)),
                             a1 * log((a2 * exp(f * e) - a1) / (a1 - a2))};
  };
  p.rect = {0.1, 0.5, 1.0, 2.0};
  p.predicates = {
      positive("z^2 + 4x > 0 (real slopes)", [](double x, double z) { return z * z + 4.0 * x; }),
      nonzero("x != 0", [](double x, double) { return x; }),
      nonzero("a + c x^-3 != 0", [=](double x, double) { return a + cc / (x * x * x); }),
  };
  for (int sg : {-1, 1}) {
    const std::string tag = sg < 0 ? "nu1" : "nu2";
    p.predicates.push_back(nonzero(tag + " != 0", [=](double x, double z) { return nu_root(sg, x, z); }));
    for (double al : {a1, a2}) {
      // same sign as at nu = 0, so the closed forms stay on the branch through 0
      p.predicates.push_back(positive(tag + "^3 + alpha keeps the sign of alpha", [=](double x, double z) {
        return (std::pow(nu_root(sg, x, z), 3) + al) * (al > 0 ? 1.0 : -1.0);
      }));
    }
  }
  p.notes.push_back("Theta = nu^2 on both sides; a^1, a^2 are antiderivatives from nu = 0 by partial fractions");
  FieldBundle b = assemble(p, mut);
  b.domain.predicates.push_back(positive("relation log arguments > 0", [fields = assemble(p, {}).fields, a1, a2, e](double x, double z) {
    const auto [X, Z] = coordinates(cplx(x), cplx(z), 0);
    const cplx f = fields(X, Z).a[0].value();
    return std::min(re((a2 - a1 * std::exp(-e * f)) / (a1 - a2)), re((a2 * std::exp(e * f) - a1) / (a1 - a2)));
  }));
  return b;
}

}  // namespace monge::detail
