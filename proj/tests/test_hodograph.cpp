#include "doctest.h"

#include <cmath>
#include <random>

#include <Eigen/LU>

#include "monge/hodograph.hpp"

using namespace monge;

TEST_CASE("solve_implicit examples") {
  CHECK(std::abs(solve_implicit(zero_fn(), 2.0, 1.0, -1.0) - cplx(-2.0)) < 1e-12);
  CHECK(std::abs(solve_implicit(identity_fn(), 1.0, 0.5, 1.0) - cplx(2.0)) < 1e-12);
  // fold: F(l) = l^2 at z = F'(l)
  CHECK_THROWS(solve_implicit(polynomial({0, 0, 1}), 0.0, 0.0, 0.0));
}

TEST_CASE("implicit jet satisfies the characteristic equation") {
  const UFn F = polynomial({0, 0, 0, 1});
  const ImplicitEquation eq = monge_implicit(F);
  std::mt19937_64 g(1);
  std::uniform_real_distribution<double> ux(0.5, 2.0), uz(-1.0, -0.1);
  for (int i = 0; i < 20; ++i) {
    const double x = ux(g), z = uz(g);
    const cplx root = continue_branch(eq, 1.0, 0.0, 1.0, x, z);
    CHECK(std::abs(x + root * z - root * root * root) <= 1e-12 * std::max(1.0, std::abs(root * root * root)));
    auto [X, Z] = seed(cplx(x), cplx(z), 2);
    const JetC l = implicit_jet(eq, X, Z, root);
    CHECK(std::abs(l.partial(0, 1) - l.value() * l.partial(1, 0)) <= 1e-8);
  }
}

TEST_CASE("hodograph inversion") {
  const RPotential quad = [](const JetC& b, const JetC& c) { return (b * b + c * c) * 0.5; };
  const BC r = invert_hodograph(quad, 0.7, -0.4, {0.1, 0.1});
  CHECK(std::abs(r.b - cplx(-0.4)) < 1e-10);
  CHECK(std::abs(r.c - cplx(0.7)) < 1e-10);

  // R = R1(b - nu1 c) + R2(b - nu2 c) with quadratic R_i: solve the 2x2 system directly
  const double nu1 = 1.0, nu2 = 2.0, p1 = 0.8, q1 = 0.3, p2 = -0.5, q2 = 0.2;
  const RPotential R = [=](const JetC& b, const JetC& c) {
    const JetC s1 = b - c * nu1, s2 = b - c * nu2;
    return s1 * s1 * (0.5 * p1) + s1 * q1 + s2 * s2 * (0.5 * p2) + s2 * q2;
  };
  const double x = 0.4, z = 0.9;
  // R_c = -nu1 R1'(s1) - nu2 R2'(s2) = x, R_b = R1'(s1) + R2'(s2) = z, R_i' = p_i s_i + q_i
  Eigen::Matrix2d A;
  A << -nu1 * p1, -nu2 * p2, p1, p2;
  const Eigen::Vector2d s = A.lu().solve(Eigen::Vector2d(x + nu1 * q1 + nu2 * q2, z - q1 - q2));
  const double b_want = (nu2 * s(0) - nu1 * s(1)) / (nu2 - nu1), c_want = (s(0) - s(1)) / (nu2 - nu1);
  const BC got = invert_hodograph(R, x, z, {0.0, 0.0});
  CHECK(std::abs(got.b - b_want) < 1e-10);
  CHECK(std::abs(got.c - c_want) < 1e-10);

  // inverse derivatives against finite differences of the inversion
  const RPotential cubic = [](const JetC& b, const JetC& c) { return b * b * c * 0.5 + c * c * c / 6.0 + b * b * 0.3; };
  const BC at = invert_hodograph(cubic, 0.9, 0.5, {0.6, 0.9});
  const InverseDerivatives d = inverse_derivatives(cubic, at);
  const double h = 1e-6;
  const BC xp = invert_hodograph(cubic, 0.9 + h, 0.5, at), xm = invert_hodograph(cubic, 0.9 - h, 0.5, at);
  const BC zp = invert_hodograph(cubic, 0.9, 0.5 + h, at), zm = invert_hodograph(cubic, 0.9, 0.5 - h, at);
  CHECK(std::abs(d.bx - (xp.b - xm.b) / (2 * h)) < 1e-8);
  CHECK(std::abs(d.cx - (xp.c - xm.c) / (2 * h)) < 1e-8);
  CHECK(std::abs(d.bz - (zp.b - zm.b) / (2 * h)) < 1e-8);
  CHECK(std::abs(d.cz - (zp.c - zm.c) / (2 * h)) < 1e-8);

  const RPotential linear = [](const JetC& b, const JetC& c) { return b + c; };
  CHECK_THROWS(invert_hodograph(linear, 0.3, 0.3, {0.0, 0.0}));
}

TEST_CASE("factorization residuals") {
  auto [r1, r2] = factorization_check(3.0, -2.0, 1.0, 2.0);
  CHECK(r1 == cplx(0));
  CHECK(r2 == cplx(0));
  auto [s1, s2] = factorization_check(0.0, 0.0, 1.0, 2.0);
  CHECK(s1 == cplx(3));
  CHECK(s2 == cplx(2));
}

TEST_CASE("schrodinger fundamental solutions") {
  const OdeSolution up = schrodinger_solve(constant_fn(1.0), 1.0, {0.0, 1.0});
  CHECK(std::abs(up.w1.back() - std::cosh(1.0)) <= 1e-8);
  CHECK(std::abs(up.w2.back() - std::sinh(1.0)) <= 1e-8);
  CHECK(up.wronskian_drift() <= 1e-8);

  const OdeSolution osc = schrodinger_solve(constant_fn(-1.0), 1.0, {0.0, 1.0});
  CHECK(std::abs(osc.w1.back() - std::cos(1.0)) <= 1e-8);
  CHECK(std::abs(osc.w2.back() - std::sin(1.0)) <= 1e-8);

  const OdeSolution lin = schrodinger_solve(identity_fn(), 1.0, {0.0, 2.0}, 200);
  const OdeSolution lin2 = schrodinger_solve(identity_fn(), 1.0, {0.0, 2.0}, 2 * lin.steps);
  CHECK(std::abs(lin.w1.back() - lin2.w1.back()) <= 1e-7);
  CHECK(std::abs(lin.w2.back() - lin2.w2.back()) <= 1e-7);

  CHECK_THROWS_AS(schrodinger_solve(constant_fn(1.0), 1.0, {0.0, 1.0}, 50), ConfigError);
}

TEST_CASE("R integral") {
  const double k0 = 0.7;
  KQuadrature single;
  single.nodes = {k0};
  single.weights = {1.0};
  const auto one = [](double) { return cplx(1); };
  const auto none = [](double) { return cplx(0); };
  const RIntegralResult r = assemble_R_integral(one, none, single, constant_fn(1.0), {-1, 1}, {0, 1});
  CHECK(r.max_residual <= 1e-10);
  CHECK(std::abs(r.R(3, 4) - std::exp(k0 * r.b[3]) * std::cosh(k0 * r.c[4])) <= 1e-8);

  KQuadrature two;
  two.nodes = {-0.5, 0.5};
  two.weights = {1.0, 1.0};
  const RIntegralResult r2 =
      assemble_R_integral(one, one, two, [](const SeriesC& c) { return c * 0.5 + 1.0; }, {-1, 1}, {0, 1});
  CHECK(r2.max_residual <= 1e-8);

  const RIntegralResult z = assemble_R_integral(none, none, single, constant_fn(1.0), {-1, 1}, {0, 1});
  CHECK(z.R.cwiseAbs().maxCoeff() == 0.0);
  CHECK(z.max_residual == 0.0);
}
