#include "monge/functional_eq.hpp"

#include <algorithm>
#include <cmath>

#include "monge/hodograph.hpp"

namespace monge {

Residual make_residual(const std::vector<cplx>& terms) {
  Residual r;
  for (const cplx& t : terms) {
    r.value += t;
    r.scale = std::max(r.scale, std::abs(t));
  }
  r.raw = std::abs(r.value);
  r.normalized = r.raw / std::max(1.0, r.scale);
  return r;
}

QuadValues quadruple_values(const Quadruple& q, double x, double z) {
  const cplx D1 = x + q.nu.nu1 * z + q.lines.d1;
  const cplx D2 = x + q.nu.nu2 * z + q.lines.d2;
  return {value_at(q.sigma_x, x), value_at(q.theta_z, z), value_at(q.L1p, D1), value_at(q.L2p, D2)};
}

Residual residual_eq5(const QuadValues& v, const NuPair& nu, int n) {
  const cplx l1n = l_value(n, v.L1p, v.L2p, nu);
  const cplx l1m = l_value(-1, v.L1p, v.L2p, nu);
  return make_residual({v.sigma_x * v.theta_z, v.sigma_x * l1n, v.theta_z * l1m,
                        -nu.box_n(n) / (nu.nu1 * nu.nu2) * v.L2p * v.L1p});
}

Residual residual_eq5(const Quadruple& q, double x, double z) {
  return residual_eq5(quadruple_values(q, x, z), q.nu, q.n);
}

Residual residual_eq6(const QuadValues& v, const NuPair& nu, int n) {
  const cplx den_left = v.L1p / nu.nu1 - nu.nu2 * v.sigma_x;
  const cplx den_right = v.L2p / nu.nu2 - nu.nu1 * v.sigma_x;
  if (std::abs(den_left) < 1e-8 || std::abs(den_right) < 1e-8)
    throw DomainError("eq6: a denominator (L1'/nu1 - nu2 sigma_x or L2'/nu2 - nu1 sigma_x) vanishes");
  const cplx num_left = v.theta_z + nu.pow1(n - 1) * v.L1p;
  const cplx num_right = v.theta_z + nu.pow2(n - 1) * v.L2p;
  return make_residual({num_left * den_right, -num_right * den_left});
}

Residual residual_eq6(const Quadruple& q, double x, double z) {
  return residual_eq6(quadruple_values(q, x, z), q.nu, q.n);
}

namespace {

UFn inverted(UFn f, cplx numerator, const char* what) {
  return [f = std::move(f), numerator, what](const SeriesC& t) {
    const SeriesC v = f(t);
    if (v.value() == cplx(0)) throw DomainError(std::string("duality: ") + what + " vanishes");
    return numerator / v;
  };
}

}  // namespace

Quadruple duality_transform(const Quadruple& q, DualityVariant variant) {
  const NuPair& nu = q.nu;
  Quadruple r = q;
  r.sigma_x = inverted(q.sigma_x, nu.box3 / ipow(nu.nu1 * nu.nu2, 4), "sigma_x");
  r.theta_z = inverted(q.theta_z, nu.box3, "theta_z");
  r.L1p = inverted(q.L1p, cplx(1) / (nu.nu1 * nu.nu1), "L1'");
  const cplx nu_l2 = variant == DualityVariant::Literal ? nu.nu1 : nu.nu2;
  r.L2p = inverted(q.L2p, cplx(1) / (nu_l2 * nu_l2), "L2'");
  return r;
}

NuSolution solve_nus(const GeneralQuadruple& g, double x, double z) {
  NuSolution s{};
  auto implicit = [&](const GeneralSide& side, cplx& nu, cplx& q, cplx& w) {
    nu = solve_implicit(side.Theta, x, z, side.seed(x, z));
    q = derivative_at(side.Theta, nu, 1) - z;
    if (std::abs(q) < 1e-12) throw DomainError("eq10: q = Theta'(nu) - z vanishes");
    w = value_at(side.Cp, nu) / q;
  };
  if (!g.s1.constant_nu) implicit(g.s1, s.nu1, s.q1, s.w1);
  else s.nu1 = g.s1.nu;
  if (!g.s2.constant_nu) implicit(g.s2, s.nu2, s.q2, s.w2);
  else s.nu2 = g.s2.nu;
  const cplx delta = s.nu2 - s.nu1;
  if (g.s1.constant_nu) {
    s.w1 = g.s1.Lp ? -value_at(g.s1.Lp, x + g.s1.nu * z + g.s1.d) / delta : cplx(0);
  }
  if (g.s2.constant_nu) {
    s.w2 = g.s2.Lp ? value_at(g.s2.Lp, x + g.s2.nu * z + g.s2.d) / delta : cplx(0);
  }
  return s;
}

Residual residual_eq10(const GeneralQuadruple& g, double x, double z) {
  const NuSolution s = solve_nus(g, x, z);
  const cplx sig = value_at(g.sigma_x, x);
  const cplx th = value_at(g.theta_z, z);
  const int n = g.n;
  const cplx delta = s.nu2 - s.nu1;
  const cplx a1 = ipow(s.nu1, n) * s.w1, a2 = ipow(s.nu2, n) * s.w2;
  const cplx b1 = s.w1 / s.nu1, b2 = s.w2 / s.nu2;
  const NuPair local{s.nu1, s.nu2, delta, cplx(0), cplx(0)};
  const cplx box = local.box_n(n);
  const cplx cross = delta * delta * box / (s.nu1 * s.nu2) * s.w1 * s.w2;
  return make_residual({delta * th * sig, delta * sig * a1, delta * sig * a2, delta * th * b1, delta * th * b2,
                        delta * cross});
}

GeneralQuadruple as_general(const Quadruple& q) {
  GeneralQuadruple g;
  g.n = q.n;
  g.s1.constant_nu = true;
  g.s1.nu = q.nu.nu1;
  g.s1.d = q.lines.d1;
  g.s1.Lp = q.L1p;
  g.s2.constant_nu = true;
  g.s2.nu = q.nu.nu2;
  g.s2.d = q.lines.d2;
  g.s2.Lp = q.L2p;
  g.sigma_x = q.sigma_x;
  g.theta_z = q.theta_z;
  return g;
}

}  // namespace monge
