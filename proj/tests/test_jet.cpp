#include "doctest.h"

#include <random>

#include "monge/series_fn.hpp"

using namespace monge;

namespace {

double err(const JetC& a, const JetC& b) { return (a.coeffs() - b.coeffs()).cwiseAbs().maxCoeff(); }

JetC random_poly_jet(std::mt19937_64& g, int m) {
  std::uniform_real_distribution<double> u(-1, 1);
  JetC r(m);
  for (int d = 0; d <= m; ++d)
    for (int j = 0; j <= d; ++j) r.coeff(d - j, j) = cplx(u(g), u(g));
  return r;
}

}  // namespace

TEST_CASE("seed builds coordinate jets") {
  auto [X, Z] = seed(cplx(2), cplx(3), 2);
  CHECK(X.coeff(0, 0) == cplx(2));
  CHECK(X.coeff(1, 0) == cplx(1));
  CHECK(X.coeff(0, 1) == cplx(0));
  CHECK(Z.coeff(0, 0) == cplx(3));
  CHECK(Z.coeff(0, 1) == cplx(1));
  CHECK(X.coeffs().size() == 6);

  auto [X0, Z0] = seed(cplx(0), cplx(0), 1);
  CHECK(X0.value() == cplx(0));
  CHECK(Z0.value() == cplx(0));
  CHECK(X0.coeff(1, 0) == cplx(1));
  CHECK(Z0.coeff(0, 1) == cplx(1));

  auto [X1, Z1] = seed(cplx(1), cplx(1), 3);
  const JetC s = X1 + Z1;
  CHECK(s.coeff(0, 0) == cplx(2));
  CHECK(s.coeff(1, 0) == cplx(1));
  CHECK(s.coeff(0, 1) == cplx(1));

  CHECK_THROWS_AS(seed(cplx(0), cplx(0), 0), std::invalid_argument);
}

TEST_CASE("jet multiplication") {
  auto [X, Z] = seed(cplx(2), cplx(3), 2);
  const JetC p = X * Z;
  CHECK(p.coeff(0, 0) == cplx(6));
  CHECK(p.coeff(1, 0) == cplx(3));
  CHECK(p.coeff(0, 1) == cplx(2));
  CHECK(p.coeff(1, 1) == cplx(1));
  CHECK(p.coeff(2, 0) == cplx(0));
  CHECK(err(p * JetC::constant(1.0, 2), p) == 0.0);

  auto [X1, Z1] = seed(cplx(1), cplx(0), 3);
  const JetC sq = X1 * X1;
  CHECK(sq.coeff(0, 0) == cplx(1));
  CHECK(sq.coeff(1, 0) == cplx(2));
  CHECK(sq.coeff(2, 0) == cplx(1));
  CHECK(jet_partial(sq, 2, 0) == cplx(2));

  CHECK_THROWS_AS(JetC(2) * JetC(3), std::invalid_argument);
}

TEST_CASE("jet product matches expanded polynomial product") {
  std::mt19937_64 g(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 4;
    const JetC p = random_poly_jet(g, m), q = random_poly_jet(g, m);
    const JetC r = p * q;
    for (int d = 0; d <= m; ++d) {
      for (int j = 0; j <= d; ++j) {
        cplx want(0);
        for (int a = 0; a <= d - j; ++a)
          for (int b = 0; b <= j; ++b) {
            const int i2 = d - j - a, j2 = j - b;
            if (a + b <= m && i2 + j2 <= m) want += p.coeff(a, b) * q.coeff(i2, j2);
          }
        CHECK(std::abs(r.coeff(d - j, j) - want) <= 1e-13 * std::max(1.0, std::abs(want)));
      }
    }
  }
}

TEST_CASE("composition with elementary series") {
  auto [X, Z] = seed(cplx(0), cplx(0), 2);
  const JetC e = exp(X);
  CHECK(std::abs(e.coeff(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(e.coeff(1, 0) - 1.0) < 1e-15);
  CHECK(std::abs(e.coeff(2, 0) - 0.5) < 1e-15);

  CHECK(err(monge::apply(identity_fn(), X + Z), X + Z) == 0.0);

  for (int m = 1; m <= 6; ++m) {
    auto [Xm, Zm] = seed(cplx(0.3), cplx(-0.2), m);
    const JetC a = Xm * Zm + Xm;
    CHECK(err(log(exp(a)), a) <= 1e-12);
  }
}

TEST_CASE("nested composition equals composed function") {
  auto [X, Z] = seed(cplx(0.4), cplx(0.7), 5);
  const JetC a = X * Z + Z * 0.5;
  const UFn h = [](const SeriesC& t) { return sin(t); };
  const UFn gh = [](const SeriesC& t) { return exp(sin(t)); };
  CHECK(err(exp(monge::apply(h, a)), monge::apply(gh, a)) <= 1e-12);
  CHECK(err(sqrt(a) * sqrt(a), a) <= 1e-12);
  CHECK(err(cosh(a) * cosh(a) - sinh(a) * sinh(a), JetC::constant(1.0, 5)) <= 1e-12);
}

TEST_CASE("partials") {
  auto [X, Z] = seed(cplx(0.7), cplx(-1.3), 4);
  const JetC U = (X + Z) * (X + Z) + (X - Z) * (X - Z);
  CHECK(jet_partial(U, 0, 0) == U.value());
  CHECK(std::abs(jet_partial(U, 2, 0) - 4.0) < 1e-14);
  CHECK(std::abs(jet_partial(U, 0, 2) - 4.0) < 1e-14);
  CHECK_THROWS_AS(jet_partial(U, 3, 2), std::invalid_argument);

  const JetC V = sin(X) * Z;
  const JetC L = U * 2.0 + V * cplx(0, 1);
  CHECK(std::abs(jet_partial(L, 1, 1) - (2.0 * jet_partial(U, 1, 1) + cplx(0, 1) * jet_partial(V, 1, 1))) < 1e-14);
}

TEST_CASE("partials agree with central differences") {
  auto field = [](cplx x, cplx z) { return std::exp(x * z) * std::sin(x + 2.0 * z); };
  const double x0 = 0.3, z0 = -0.4, h = 1e-4;
  auto [X, Z] = seed(cplx(x0), cplx(z0), 3);
  const JetC F = exp(X * Z) * sin(X + Z * 2.0);
  const cplx fx = (field(x0 + h, z0) - field(x0 - h, z0)) / (2 * h);
  const cplx fzz = (field(x0, z0 + h) - 2.0 * field(x0, z0) + field(x0, z0 - h)) / (h * h);
  const cplx fxz = (field(x0 + h, z0 + h) - field(x0 + h, z0 - h) - field(x0 - h, z0 + h) + field(x0 - h, z0 - h)) /
                   (4 * h * h);
  CHECK(std::abs(F.partial(1, 0) - fx) <= 1e-5 * std::abs(fx));
  CHECK(std::abs(F.partial(0, 2) - fzz) <= 1e-5 * std::abs(fzz));
  CHECK(std::abs(F.partial(1, 1) - fxz) <= 1e-5 * std::abs(fxz));
}

TEST_CASE("log and pow refuse the branch cut") {
  auto [X, Z] = seed(cplx(0), cplx(1), 2);
  CHECK_THROWS(log(X));
  CHECK_THROWS(log(X - 1.0));
  CHECK_NOTHROW(log(Z));
}
