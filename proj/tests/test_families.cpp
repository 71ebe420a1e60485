#include "doctest.h"

#include <cmath>
#include <random>

#include "monge/families.hpp"

using namespace monge;

namespace {

FieldBundle build(const FamilyVariant& v, std::map<std::string, double> mutate = {}) {
  return make_family({v, std::move(mutate), {}});
}

TrivialCfg trivial(int n, std::vector<std::vector<cplx>> f) {
  TrivialCfg c;
  c.n = n;
  c.f = std::move(f);
  return c;
}

}  // namespace

TEST_CASE("Trivial n=2 with quadratic f") {
  const FieldBundle b = build(trivial(2, {{0, 0, 1}, {0, 0, 1}}));
  for (double x : {-0.7, 0.0, 0.9}) {
    const FieldSample s = eval_fields(b, x, 0.3, 2);
    CHECK(std::abs(s.a[0].value() - 4.0) < 1e-14);
    CHECK(std::abs(s.W.value() - 4.0) < 1e-14);
    CHECK(std::abs(b.U(x, 0.3) - ((x + 0.3) * (x + 0.3) + (x - 0.3) * (x - 0.3))) < 1e-14);
  }
  CHECK(b.relation == Relation::Identity);
}

TEST_CASE("Trivial fields are U derivatives") {
  const cplx c(0.3, -0.2);
  const FieldBundle b = build(trivial(3, {{0, 0, 0, 1}, {0, 0, 0, c}, {0, 0, 0, std::conj(c)}}));
  const FieldSample s = eval_fields(b, 1.0, 0.0, 2);
  CHECK(std::abs(s.a[0].value().imag()) <= 1e-12);
  // a^0 = U_zzz = sum lambda^3 f''' = 6 (1 + c + conj c)
  CHECK(std::abs(s.a[0].value() - 6.0 * (1.0 + 2.0 * c.real())) < 1e-12);
  // a^n computed from U equals a^0: U_xxx by central differences on U
  const double h = 1e-2, x = 0.2, z = -0.1;
  auto U = [&](double xx) { return b.U(xx, z); };
  const cplx Uxxx = (U(x + 2 * h) - 2.0 * U(x + h) + 2.0 * U(x - h) - U(x - 2 * h)) / (2 * h * h * h);
  CHECK(std::abs(Uxxx - eval_fields(b, x, z, 1).a[0].value()) < 1e-9);
}

TEST_CASE("Degenerate with C(a) = a and G(a) = a") {
  DegenerateCfg c;
  c.C = {0, 1};
  c.G = {0, 1};
  c.x_ref = 1.5;
  c.seed = 1.5;
  const FieldBundle b = build(c);
  const FieldSample s = eval_fields(b, 1.4, 0.2, 2);
  CHECK(std::abs(s.a[0].value() - 1.6) < 1e-12);
  CHECK(std::abs(s.a[0].partial(1, 0) - 1.0) < 1e-12);
  CHECK(std::abs(s.a[0].partial(0, 1) - 1.0) < 1e-12);
}

TEST_CASE("M1 with F = 0") {
  M1ImplicitCfg c;
  c.F = {0, 0};
  c.x_ref = 2.0;
  c.z_ref = 1.0;
  c.seed = -2.0;
  const FieldBundle b = make_family({c, {}, Rect{1.0, 3.0, 0.5, 1.5}});
  CHECK(std::abs(eval_fields(b, 2.0, 1.0, 1).a[0].value() - cplx(-2.0)) < 1e-12);
  CHECK(std::abs(eval_fields(b, 3.0, 1.5, 1).a[0].value() - cplx(-2.0)) < 1e-12);
}

TEST_CASE("M1 and Degenerate characteristic equations") {
  M1ImplicitCfg m;
  m.F = {0, 0, 0, 1};
  const FieldBundle b = build(m);
  std::mt19937_64 g(2);
  std::uniform_real_distribution<double> ux(0.5, 2.0), uz(-1.0, -0.1);
  for (int i = 0; i < 20; ++i) CHECK(b.characteristic(ux(g), uz(g)).raw <= 1e-8);

  DegenerateCfg d;
  d.C = {0, 0, 1};
  d.G = {0, 1};
  d.x_ref = 1.5;
  d.seed = 1.5;
  const FieldBundle bd = build(d);
  std::uniform_real_distribution<double> dx(1.0, 2.0), dz(-0.3, 0.3);
  for (int i = 0; i < 20; ++i) CHECK(bd.characteristic(dx(g), dz(g)).raw <= 1e-8);
}

TEST_CASE("quadruple constants") {
  const FieldBundle s = build(M3SigmaConstCfg{});
  CHECK(eval_quadruple(s, 1.3, 0.2).sigma_x == cplx(1.0));
  const FieldBundle l = build(M3L1ConstCfg{});
  CHECK(eval_quadruple(l, 3.1, 0.4).L1p == cplx(1.0));
  const FieldBundle t = build(M3ThetaConstCfg{});
  std::mt19937_64 g(9);
  std::uniform_real_distribution<double> ux(t.domain.rect.x_lo, t.domain.rect.x_hi), uz(t.domain.rect.z_lo, t.domain.rect.z_hi);
  for (int i = 0; i < 10; ++i) {
    const double x = ux(g), z = uz(g);
    CHECK(eval_quadruple(t, x, z).theta_z == cplx(1.0));
    CHECK(residual_eq5(*t.quadruple, x, z).normalized <= 1e-9);
  }
  CHECK_THROWS_AS(eval_quadruple(build(trivial(2, {{0, 0, 1}, {0, 0, 1}})), 0.0, 0.0), ConfigError);
}

TEST_CASE("M3General cosh relation at random points") {
  const FieldBundle b = build(M3GeneralCfg{});
  std::mt19937_64 g(4);
  std::uniform_real_distribution<double> ux(b.domain.rect.x_lo, b.domain.rect.x_hi), uz(b.domain.rect.z_lo, b.domain.rect.z_hi);
  int n = 0;
  while (n < 100) {
    const double x = ux(g), z = uz(g);
    if (!b.domain.contains(x, z)) continue;
    const FieldSample s = eval_fields(b, x, z, 0);
    const cplx v = std::exp(-2.0 * s.W.value()) * std::pow(std::cosh(s.f.value()), 2.0);
    CHECK(std::abs(v - 1.0) <= 1e-9);
    ++n;
  }
}

TEST_CASE("MnThetaConst quadruple solves the n-th equation") {
  for (int n : {4, 5}) {
    MnThetaConstCfg c;
    c.n = n;
    const FieldBundle b = build(c);
    CHECK(b.n == n);
    CHECK(residual_eq5(*b.quadruple, -0.7, 0.1).normalized <= 1e-9);
  }
}

TEST_CASE("parameter validation") {
  M3SigmaConstCfg s;
  s.nu2 = s.nu1;
  CHECK_THROWS_AS(build(s), ConfigError);
  M3SigmaConstCfg a;
  a.A = 0.0;
  CHECK_THROWS_AS(build(a), ConfigError);
  CHECK_THROWS_AS(build(M3GeneralCfg{0.0}), ConfigError);
  M3GeneralE0Cfg e;
  e.alpha2 = e.alpha1;
  CHECK_THROWS_AS(build(e), ConfigError);
  M3GeneralE0Cfg e2;
  e2.c = 5.0;
  CHECK_THROWS_AS(build(e2), ConfigError);
  M3HodoExampleCfg h;
  h.alpha = -1.0;
  CHECK_THROWS_AS(build(h), ConfigError);
  CHECK_THROWS_AS(build(trivial(3, {{0, 1}})), ConfigError);
  CHECK_THROWS_AS(build(M3SigmaConstCfg{}, {{"bogus", 1.1}}), ConfigError);
}

TEST_CASE("safe domain is enforced") {
  const FieldBundle b = build(M3HodoExampleCfg{});
  CHECK_THROWS_AS(eval_fields(b, 1.0, 1.0, 1), DomainError);
  CHECK_THROWS_AS(eval_fields(b, -1.5, 0.0, 1), DomainError);
  CHECK_NOTHROW(eval_fields(b, -1.5, 1.0, 1));
  const auto v = b.domain.violation(1.0, 1.0);
  REQUIRE(v);
  CHECK(!v->empty());
}

TEST_CASE("mutation scales the targeted function") {
  const FieldBundle b = build(M3SigmaConstCfg{});
  const FieldBundle m = build(M3SigmaConstCfg{}, {{"theta_z", 1.1}});
  const QuadValues a = eval_quadruple(b, 1.2, 0.3), c = eval_quadruple(m, 1.2, 0.3);
  CHECK(std::abs(c.theta_z - 1.1 * a.theta_z) < 1e-12);
  CHECK(c.sigma_x == a.sigma_x);
  for (const std::string& t : b.mutation_targets) CHECK_NOTHROW(build(M3SigmaConstCfg{}, {{t, 1.1}}));
}
