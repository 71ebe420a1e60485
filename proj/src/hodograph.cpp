#include "monge/hodograph.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace monge {

namespace {

struct Residual1 {
  cplx g;
  cplx dg;
  double scale;
};

Residual1 implicit_residual(const ImplicitEquation& eq, cplx x, cplx z, cplx l) {
  const SeriesC t = SeriesC::variable(l, 1);
  const SeriesC M = eq.M(t);
  const SeriesC G = eq.G(t);
  const SeriesC r = M * z - G + x;
  const double scale = std::max({1.0, std::abs(x), std::abs(M[0] * z), std::abs(G[0])});
  return {r[0], r[1], scale};
}

bool is_real(cplx v) { return v.imag() == 0.0; }

std::string fmt_point(cplx x, cplx z) {
  std::ostringstream os;
  os.precision(17);
  os << "(x, z) = (" << x.real() << ", " << z.real() << ")";
  return os.str();
}

void check_fold(const Residual1& e, cplx x, cplx z) {
  if (std::abs(e.dg) < 1e-8) throw DomainError("fold point: z = F'(lambda) at " + fmt_point(x, z));
}

// Sign-change search around the seed followed by bisection-guarded Newton.
bool bracket_solve(const ImplicitEquation& eq, double x, double z, double seed, double& out) {
  auto g = [&](double l) { return implicit_residual(eq, x, z, l).g.real(); };
  const double g0 = g(seed);
  double lo = 0.0, hi = 0.0;
  bool found = false;
  for (double r = 1e-3 * std::max(1.0, std::abs(seed)); r < 1e8; r *= 2.0) {
    const double gl = g(seed - r), gr = g(seed + r);
    if (g0 * gr <= 0.0) {
      lo = seed;
      hi = seed + r;
      found = true;
      break;
    }
    if (g0 * gl <= 0.0) {
      lo = seed - r;
      hi = seed;
      found = true;
      break;
    }
  }
  if (!found) return false;
  double glo = g(lo);
  double l = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const Residual1 e = implicit_residual(eq, x, z, l);
    const double gv = e.g.real();
    if (std::abs(gv) <= 1e-15 * e.scale) break;
    if ((gv < 0.0) == (glo < 0.0)) {
      lo = l;
      glo = gv;
    } else {
      hi = l;
    }
    double next = l - gv / e.dg.real();
    if (!(next > std::min(lo, hi) && next < std::max(lo, hi))) next = 0.5 * (lo + hi);
    if (std::abs(next - l) <= 1e-16 * std::max(1.0, std::abs(l))) {
      l = next;
      break;
    }
    l = next;
  }
  out = l;
  return true;
}

}  // namespace

ImplicitEquation monge_implicit(UFn F) { return {identity_fn(), std::move(F)}; }

cplx solve_implicit(const UFn& F, cplx x, cplx z, cplx seed) { return solve_implicit(monge_implicit(F), x, z, seed); }

cplx solve_implicit(const ImplicitEquation& eq, cplx x, cplx z, cplx seed) {
  cplx l = seed;
  bool converged = false;
  for (int it = 0; it < 60; ++it) {
    const Residual1 e = implicit_residual(eq, x, z, l);
    if (std::abs(e.g) <= 1e-14 * e.scale) {
      converged = true;
      break;
    }
    if (e.dg == cplx(0)) break;
    const cplx step = e.g / e.dg;
    double t = 1.0;
    for (int h = 0; h < 30; ++h) {
      if (std::abs(implicit_residual(eq, x, z, l - t * step).g) < std::abs(e.g)) break;
      t *= 0.5;
    }
    l -= t * step;
    if (std::abs(t * step) <= 1e-15 * std::max(1.0, std::abs(l))) {
      converged = std::abs(implicit_residual(eq, x, z, l).g) <= 1e-12 * e.scale;
      break;
    }
  }
  if (!converged && is_real(x) && is_real(z) && is_real(seed)) {
    double r = 0.0;
    if (!bracket_solve(eq, x.real(), z.real(), seed.real(), r))
      throw DomainError("no bracket found for implicit root at " + fmt_point(x, z));
    l = r;
  }
  const Residual1 e = implicit_residual(eq, x, z, l);
  if (!(std::abs(e.g) <= 1e-12 * e.scale)) throw DomainError("implicit solve failed at " + fmt_point(x, z));
  check_fold(e, x, z);
  return l;
}

JetC implicit_jet(const ImplicitEquation& eq, const JetC& X, const JetC& Z, cplx root) {
  const int m = X.order();
  const UFn dM = derivative(eq.M);
  const UFn dG = derivative(eq.G);
  JetC l = JetC::constant(root, m);
  int iters = 1;
  while ((1 << (iters - 1)) <= m) ++iters;
  for (int it = 0; it < iters; ++it) {
    const JetC r = X + monge::apply(eq.M, l) * Z - monge::apply(eq.G, l);
    const JetC d = monge::apply(dM, l) * Z - monge::apply(dG, l);
    l -= r / d;
  }
  return l;
}

cplx continue_branch(const ImplicitEquation& eq, double x0, double z0, cplx seed0, double x, double z) {
  cplx l = solve_implicit(eq, x0, z0, seed0);
  const double dx = x - x0, dz = z - z0;
  if (dx == 0.0 && dz == 0.0) return l;
  double s = 0.0, ds = 0.125;
  while (s < 1.0) {
    const double s1 = std::min(1.0, s + ds);
    const cplx xs = x0 + s * dx, zs = z0 + s * dz;
    const Residual1 e = implicit_residual(eq, xs, zs, l);
    check_fold(e, xs, zs);
    const cplx Mv = value_at(eq.M, l);
    const cplx slope = -(dx + Mv * dz) / e.dg;
    const cplx pred = l + slope * (s1 - s);
    const cplx x1 = x0 + s1 * dx, z1 = z0 + s1 * dz;
    cplx c = pred;
    bool ok = false;
    for (int it = 0; it < 8; ++it) {
      const Residual1 f = implicit_residual(eq, x1, z1, c);
      if (std::abs(f.g) <= 1e-13 * f.scale) {
        ok = true;
        break;
      }
      if (std::abs(f.dg) < 1e-12) break;
      c -= f.g / f.dg;
    }
    const double predicted_move = std::abs(slope * (s1 - s));
    if (ok && std::abs(c - pred) <= 0.5 * predicted_move + 1e-10 * (1.0 + std::abs(l))) {
      l = c;
      s = s1;
      ds = std::min(0.25, ds * 1.5);
    } else {
      ds *= 0.5;
      if (ds < 1e-7)
        throw DomainError("branch continuation failed (fold or branch jump) on the way to " + fmt_point(x, z));
    }
  }
  return solve_implicit(eq, x, z, l);
}

namespace {

struct RDerivs {
  cplx Rb, Rc, Rbb, Rbc, Rcc;
};

RDerivs r_derivs(const RPotential& R, cplx b, cplx c) {
  const auto [B, C] = seed(b, c, 2);
  const JetC r = R(B, C);
  return {r.partial(1, 0), r.partial(0, 1), r.partial(2, 0), r.partial(1, 1), r.partial(0, 2)};
}

}  // namespace

BC invert_hodograph(const RPotential& R, cplx x, cplx z, BC seed_bc) {
  Eigen::Vector2cd v(seed_bc.b, seed_bc.c);
  const double tol = 1e-13 * std::max(1.0, std::abs(x) + std::abs(z));
  auto merit = [&](const RDerivs& d) { return std::abs(d.Rc - x) + std::abs(d.Rb - z); };
  RDerivs d = r_derivs(R, v[0], v[1]);
  for (int it = 0; it < 50; ++it) {
    const double m0 = merit(d);
    if (m0 <= tol) return {v[0], v[1]};
    Eigen::Matrix2cd J;
    J << d.Rbc, d.Rcc, d.Rbb, d.Rbc;
    const cplx det = J.determinant();
    const double jscale = std::abs(d.Rbc) * std::abs(d.Rbc) + std::abs(d.Rcc) * std::abs(d.Rbb);
    if (std::abs(det) <= 1e-12 * std::max(jscale, 1e-300))
      throw DomainError("singular hodograph Jacobian (fold caustic) at " + fmt_point(x, z));
    const Eigen::Vector2cd F(d.Rc - x, d.Rb - z);
    const Eigen::Vector2cd step = J.inverse() * F;
    double t = 1.0;
    Eigen::Vector2cd trial = v - step;
    RDerivs dt = r_derivs(R, trial[0], trial[1]);
    while (merit(dt) >= m0 && t > 1e-10) {
      t *= 0.5;
      trial = v - t * step;
      dt = r_derivs(R, trial[0], trial[1]);
    }
    v = trial;
    d = dt;
  }
  if (merit(d) <= 1e-10) return {v[0], v[1]};
  throw NumericalError("hodograph inversion did not converge in 50 iterations at " + fmt_point(x, z));
}

InverseDerivatives inverse_derivatives(const RPotential& R, BC at) {
  const RDerivs d = r_derivs(R, at.b, at.c);
  // X = R_c, Z = R_b
  const cplx Xb = d.Rbc, Xc = d.Rcc, Zb = d.Rbb, Zc = d.Rbc;
  const cplx D = Xb * Zc - Xc * Zb;
  if (D == cplx(0)) throw DomainError("hodograph Jacobian vanishes");
  return {Zc / D, -Xc / D, -Zb / D, Xb / D, D};
}

std::pair<cplx, cplx> factorization_check(cplx W_b, cplx W_c, cplx nu1, cplx nu2) {
  return {nu1 + nu2 - W_b, nu1 * nu2 + W_c};
}

SeriesC OdeSolution::series(int which, double c0, int m) const {
  if (which != 1 && which != 2) throw std::invalid_argument("fundamental solution index must be 1 or 2");
  if (c.empty()) throw std::logic_error("empty ODE solution");
  const auto it = std::lower_bound(c.begin(), c.end(), c0);
  std::size_t j = static_cast<std::size_t>(it - c.begin());
  if (j == c.size()) j = c.size() - 1;
  if (j > 0 && std::abs(c[j - 1] - c0) < std::abs(c[j] - c0)) --j;
  const int M = m + 20;
  const SeriesC P = expand(profile_, c[j], M);
  std::vector<cplx> a(M + 1, cplx(0));
  a[0] = which == 1 ? w1[j] : w2[j];
  a[1] = which == 1 ? dw1[j] : dw2[j];
  for (int i = 0; i + 2 <= M; ++i) {
    cplx acc(0);
    for (int l = 0; l <= i; ++l) acc += P[l] * a[i - l];
    a[i + 2] = k * k * acc / double((i + 1) * (i + 2));
  }
  const SeriesC shift = SeriesC::variable(c0 - c[j], m);
  SeriesC r = SeriesC::constant(a[M], m);
  for (int i = M - 1; i >= 0; --i) {
    r *= shift;
    r += a[i];
  }
  return r;
}

double OdeSolution::wronskian_drift() const {
  const auto it = std::lower_bound(c.begin(), c.end(), c_init);
  const std::size_t j0 = std::min<std::size_t>(static_cast<std::size_t>(it - c.begin()), c.size() - 1);
  const cplx ref = wronskian(j0);
  double drift = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) drift = std::max(drift, std::abs(wronskian(i) - ref) / std::abs(ref));
  return drift;
}

namespace {

using State = Eigen::Matrix<cplx, 4, 1>;

struct Trajectory {
  std::vector<double> c;
  std::vector<State> y;
};

cplx profile_value(const UFn& p, double c) {
  const cplx v = value_at(p, c);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    std::ostringstream os;
    os.precision(17);
    os << "non-finite W_c profile value at c = " << c;
    throw DomainError(os.str());
  }
  return v;
}

State rhs(const UFn& p, double k, double c, const State& y) {
  const cplx q = k * k * profile_value(p, c);
  State d;
  d << y[1], q * y[0], y[3], q * y[2];
  return d;
}

void rk4_leg(const UFn& p, double k, double from, double to, int n, const State& y0, std::vector<double>& cs,
             std::vector<State>& ys) {
  const double h = (to - from) / n;
  State y = y0;
  for (int i = 0; i < n; ++i) {
    const double ci = from + i * h;
    const State k1 = rhs(p, k, ci, y);
    const State k2 = rhs(p, k, ci + 0.5 * h, y + 0.5 * h * k1);
    const State k3 = rhs(p, k, ci + 0.5 * h, y + 0.5 * h * k2);
    const State k4 = rhs(p, k, ci + h, y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    cs.push_back(from + (i + 1) * h);
    ys.push_back(y);
  }
}

Trajectory integrate_pair(const UFn& p, double k, double lo, double hi, double c0, int steps) {
  const double len = hi - lo;
  int n_lo = c0 > lo ? std::max(1, static_cast<int>(std::lround(steps * (c0 - lo) / len))) : 0;
  int n_hi = hi > c0 ? std::max(1, steps - n_lo) : 0;
  State y0;
  y0 << 1.0, 0.0, 0.0, 1.0;
  std::vector<double> cl, ch;
  std::vector<State> yl, yh;
  if (n_lo > 0) rk4_leg(p, k, c0, lo, n_lo, y0, cl, yl);
  if (n_hi > 0) rk4_leg(p, k, c0, hi, n_hi, y0, ch, yh);
  Trajectory t;
  for (std::size_t i = cl.size(); i-- > 0;) {
    t.c.push_back(cl[i]);
    t.y.push_back(yl[i]);
  }
  t.c.push_back(c0);
  t.y.push_back(y0);
  for (std::size_t i = 0; i < ch.size(); ++i) {
    t.c.push_back(ch[i]);
    t.y.push_back(yh[i]);
  }
  return t;
}

}  // namespace

OdeSolution schrodinger_solve(const UFn& W_c_profile, double k, std::pair<double, double> c_range, int steps,
                              double c_init) {
  const auto [lo, hi] = c_range;
  if (!(hi > lo)) throw ConfigError("c_range must satisfy c_lo < c_hi");
  if (steps < 100) throw ConfigError("schrodinger_solve needs steps >= 100");
  if (c_init < lo || c_init > hi) throw ConfigError("c_init must lie inside c_range");
  int n = steps;
  Trajectory coarse = integrate_pair(W_c_profile, k, lo, hi, c_init, n);
  for (;;) {
    Trajectory fine = integrate_pair(W_c_profile, k, lo, hi, c_init, 2 * n);
    // compare at the endpoints, which every refinement shares
    double err = 0.0;
    for (int side = 0; side < 2; ++side) {
      const State& a = side == 0 ? coarse.y.front() : coarse.y.back();
      const State& b = side == 0 ? fine.y.front() : fine.y.back();
      for (int i = 0; i < 4; ++i) err = std::max(err, std::abs(a[i] - b[i]) / std::max(1.0, std::abs(b[i])));
    }
    if (err <= 1e-8) {
      OdeSolution s;
      s.k = k;
      s.c_init = c_init;
      s.steps = 2 * n;
      s.halving_error = err;
      s.profile_ = W_c_profile;
      s.c = fine.c;
      for (const State& y : fine.y) {
        s.w1.push_back(y[0]);
        s.dw1.push_back(y[1]);
        s.w2.push_back(y[2]);
        s.dw2.push_back(y[3]);
      }
      return s;
    }
    n *= 2;
    if (n > (1 << 22)) throw NumericalError("schrodinger_solve: step halving did not reach 1e-8");
    coarse = std::move(fine);
  }
}

OdeSolution schrodinger_solve(const UFn& W_c_profile, double k, std::pair<double, double> c_range, int steps) {
  const double c0 = (c_range.first <= 0.0 && 0.0 <= c_range.second) ? 0.0 : c_range.first;
  return schrodinger_solve(W_c_profile, k, c_range, steps, c0);
}

namespace {

struct RGrid {
  Eigen::MatrixXcd R;
  double max_res = 0.0, max_norm = 0.0, sum_res = 0.0, drift = 0.0;
  std::pair<double, double> argmax{0.0, 0.0};
};

RGrid evaluate_R(const std::function<cplx(double)>& f1, const std::function<cplx(double)>& f2,
                 const std::vector<double>& ks, const std::vector<double>& ws, const UFn& profile,
                 std::pair<double, double> c_range, const std::vector<double>& bs, const std::vector<double>& cs,
                 int steps) {
  std::vector<OdeSolution> sols;
  sols.reserve(ks.size());
  RGrid g;
  for (double k : ks) {
    sols.push_back(schrodinger_solve(profile, k, c_range, steps));
    g.drift = std::max(g.drift, sols.back().wronskian_drift());
  }
  g.R = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(bs.size()), static_cast<Eigen::Index>(cs.size()));
  for (std::size_t i = 0; i < bs.size(); ++i) {
    for (std::size_t j = 0; j < cs.size(); ++j) {
      const auto [B, C] = seed(cplx(bs[i]), cplx(cs[j]), 2);
      JetC R(2);
      for (std::size_t q = 0; q < ks.size(); ++q) {
        const JetC ek = exp(B * cplx(ks[q]));
        const JetC w1 = compose(sols[q].series(1, cs[j], 2), C);
        const JetC w2 = compose(sols[q].series(2, cs[j], 2), C);
        R += ek * (w1 * f1(ks[q]) + w2 * f2(ks[q])) * cplx(ws[q]);
      }
      const cplx Wc = value_at(profile, cs[j]);
      const cplx Rcc = R.partial(0, 2), Rbb = R.partial(2, 0);
      const double res = std::abs(Rcc - Wc * Rbb);
      const double norm = res / std::max({1.0, std::abs(Rcc), std::abs(Wc * Rbb)});
      g.R(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = R.value();
      g.sum_res += res;
      g.max_res = std::max(g.max_res, res);
      if (norm > g.max_norm || (i == 0 && j == 0)) {
        g.max_norm = std::max(g.max_norm, norm);
        g.argmax = {bs[i], cs[j]};
      }
    }
  }
  return g;
}

std::vector<double> linspace(std::pair<double, double> r, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = n == 1 ? r.first : r.first + (r.second - r.first) * i / (n - 1);
  return v;
}

}  // namespace

RIntegralResult assemble_R_integral(const std::function<cplx(double)>& f1, const std::function<cplx(double)>& f2,
                                    const KQuadrature& k_nodes, const UFn& W_c_profile,
                                    std::pair<double, double> b_range, std::pair<double, double> c_range, int nb,
                                    int nc, int steps) {
  if (nb < 1 || nc < 1) throw ConfigError("R grid needs at least one point per axis");
  RIntegralResult out;
  out.b = linspace(b_range, nb);
  out.c = linspace(c_range, nc);
  RGrid g;
  if (k_nodes.gauss_nodes > 0) {
    auto rule_on = [&](int n, std::vector<double>& ks, std::vector<double>& ws) {
      const GaussRule& r = gauss_legendre(n);
      const double half = 0.5 * (k_nodes.k_hi - k_nodes.k_lo), mid = 0.5 * (k_nodes.k_hi + k_nodes.k_lo);
      for (int i = 0; i < n; ++i) {
        ks.push_back(mid + half * r.nodes[static_cast<std::size_t>(i)]);
        ws.push_back(half * r.weights[static_cast<std::size_t>(i)]);
      }
    };
    std::vector<double> k1, w1, k2, w2;
    rule_on(k_nodes.gauss_nodes, k1, w1);
    rule_on(2 * k_nodes.gauss_nodes, k2, w2);
    const RGrid a = evaluate_R(f1, f2, k1, w1, W_c_profile, c_range, out.b, out.c, steps);
    g = evaluate_R(f1, f2, k2, w2, W_c_profile, c_range, out.b, out.c, steps);
    const double scale = std::max(1.0, g.R.cwiseAbs().maxCoeff());
    out.doubling_change = (a.R - g.R).cwiseAbs().maxCoeff() / scale;
    if (out.doubling_change > 1e-6) {
      std::ostringstream os;
      os << "k-quadrature not converged: node doubling changed R by " << out.doubling_change << " (> 1e-6)";
      throw NumericalError(os.str());
    }
  } else {
    if (k_nodes.nodes.size() != k_nodes.weights.size()) throw ConfigError("k nodes and weights differ in length");
    g = evaluate_R(f1, f2, k_nodes.nodes, k_nodes.weights, W_c_profile, c_range, out.b, out.c, steps);
  }
  out.R = g.R;
  out.max_residual = g.max_res;
  out.max_normalized = g.max_norm;
  out.mean_residual = g.sum_res / double(nb * nc);
  out.wronskian_drift = g.drift;
  out.argmax = g.argmax;
  return out;
}

}  // namespace monge
