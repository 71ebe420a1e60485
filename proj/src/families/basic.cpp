#include <cmath>
#include <numbers>

#include "builders.hpp"
#include "monge/hodograph.hpp"

namespace monge::detail {

namespace {

cplx root_of_unity(int k, int n) {
  cplx l = std::polar(1.0, 2.0 * std::numbers::pi * k / n);
  if (std::abs(l.real()) < 1e-15) l.real(0.0);
  if (std::abs(l.imag()) < 1e-15) l.imag(0.0);
  return l;
}

Rect rect(double xl, double xh, double zl, double zh) { return {xl, xh, zl, zh}; }

std::vector<std::string> field_targets(int n) {
  std::vector<std::string> t;
  for (int k = 0; k < n; ++k) t.push_back("a" + std::to_string(k));
  t.push_back("W");
  return t;
}

}  // namespace

FieldBundle build_trivial(const TrivialCfg& c) {
  const int n = c.n;
  if (n < 1 || n > 8) throw ConfigError("Trivial: n must be between 1 and 8");
  if (static_cast<int>(c.f.size()) != n)
    throw ConfigError("Trivial: expected " + std::to_string(n) + " polynomials f_k, got " +
                      std::to_string(c.f.size()));
  std::vector<cplx> lam;
  std::vector<UFn> F, Dn;
  for (int k = 0; k < n; ++k) {
    lam.push_back(root_of_unity(k, n));
    F.push_back(polynomial(c.f[static_cast<std::size_t>(k)]));
    Dn.push_back(polynomial(polynomial_derivative(c.f[static_cast<std::size_t>(k)], n)));
  }

  FieldBundle b;
  b.family = "Trivial";
  b.n = n;
  b.relation = Relation::Identity;
  b.domain.rect = rect(-1, 1, -1, 1);
  b.fields = [n, lam, Dn](const JetC& X, const JetC& Z) {
    FieldSample s;
    s.a.assign(static_cast<std::size_t>(n), JetC::constant(0.0, X.order()));
    s.W = JetC::constant(0.0, X.order());
    for (int k = 0; k < n; ++k) {
      const JetC v = monge::apply(Dn[k], X + Z * lam[k]);
      for (int j = 0; j < n; ++j) s.a[static_cast<std::size_t>(j)] += v * ipow(lam[k], n - j);
      s.W += v;
    }
    s.f = s.a[0];
    return s;
  };
  b.relation_fn = [](const JetC& W, const JetC& f) { return std::vector<JetC>{W, -f}; };
  b.W_explicit = identity_fn();
  b.U = [lam, F](double x, double z) {
    cplx u(0);
    for (std::size_t k = 0; k < lam.size(); ++k) u += value_at(F[k], x + lam[k] * z);
    return u;
  };
  b.mutation_targets = field_targets(n);
  b.f_convention = "f = a0 = U_zz..z";
  return b;
}

FieldBundle build_m1(const M1ImplicitCfg& c) {
  if (c.F.size() < 2) throw ConfigError("M1Implicit: F needs at least a linear term");
  const ImplicitEquation eq = monge_implicit(polynomial(c.F));
  const UFn Fp = polynomial(polynomial_derivative(c.F));

  FieldBundle b;
  b.family = "M1Implicit";
  b.n = 1;
  b.relation = Relation::None;
  b.domain.rect = rect(0.5, 2.0, -1.0, -0.1);
  auto root = [eq, c](double x, double z) { return continue_branch(eq, c.x_ref, c.z_ref, c.seed, x, z); };
  b.domain.predicates.push_back(nonzero("lambda != 0 (W = ln|lambda|)", [root](double x, double z) {
    const cplx l = root(x, z);
    if (std::abs(l.imag()) > 1e-9 * std::max(1.0, std::abs(l))) return 0.0;
    return l.real();
  }));
  b.domain.predicates.push_back(nonzero("no fold (F'(lambda) != z)", [root, Fp](double x, double z) {
    return std::abs(value_at(Fp, root(x, z)) - z);
  }));
  b.fields = [eq, root](const JetC& X, const JetC& Z) {
    const cplx r = root(X.value().real(), Z.value().real());
    FieldSample s;
    const JetC l = implicit_jet(eq, X, Z, r);
    s.a = {l};
    s.W = log_abs(l.with_value(cplx(l.value().real())));
    s.f = l;
    return s;
  };
  b.W_explicit = [](const SeriesC& t) { return log_abs(t.with_value(cplx(t.value().real()))); };
  b.characteristic = [eq, root](double x, double z) {
    const auto [X, Z] = seed(cplx(x), cplx(z), 1);
    const JetC l = implicit_jet(eq, X, Z, root(x, z));
    return make_residual({l.partial(0, 1), -l.value() * l.partial(1, 0)});
  };
  b.mutation_targets = field_targets(1);
  b.f_convention = "f = a0 = lambda";
  return b;
}

FieldBundle build_degenerate(const DegenerateCfg& c) {
  if (c.C.size() < 2) throw ConfigError("Degenerate: C must be non-constant");
  if (c.G.empty()) throw ConfigError("Degenerate: G is required");
  const UFn Cp = polynomial(polynomial_derivative(c.C));
  const UFn M = [Cp](const SeriesC& t) { return sqrt(Cp(t)); };
  const ImplicitEquation eq{M, polynomial(c.G)};
  const UFn B = antiderivative([Cp](const SeriesC& t) { return pow(Cp(t), -0.5); }, c.seed);
  const UFn Phi = antiderivative([Cp](const SeriesC& t) { return reciprocal(Cp(t)); }, c.seed);

  FieldBundle b;
  b.family = "Degenerate";
  b.n = 2;
  b.relation = Relation::None;
  b.domain.rect = rect(1.0, 2.0, -0.3, 0.3);
  auto root = [eq, c](double x, double z) { return continue_branch(eq, c.x_ref, c.z_ref, c.seed, x, z); };
  b.domain.predicates.push_back(positive("C'(a) > 0", [root, Cp](double x, double z) {
    const cplx v = value_at(Cp, root(x, z));
    return std::abs(v.imag()) > 1e-12 ? 0.0 : v.real();
  }));
  b.fields = [eq, root, B, Phi](const JetC& X, const JetC& Z) {
    const JetC a = implicit_jet(eq, X, Z, root(X.value().real(), Z.value().real()));
    FieldSample s;
    s.a = {a, monge::apply(B, a)};
    s.W = monge::apply(Phi, a);
    s.f = a;
    return s;
  };
  b.W_explicit = Phi;
  b.characteristic = [eq, root, M](double x, double z) {
    const auto [X, Z] = seed(cplx(x), cplx(z), 1);
    const JetC a = implicit_jet(eq, X, Z, root(x, z));
    return make_residual({a.partial(0, 1), -value_at(M, a.value()) * a.partial(1, 0)});
  };
  b.mutation_targets = field_targets(2);
  b.f_convention = "f = a0 = a";
  b.notes.push_back("B and Phi are antiderivatives of C'^(-1/2) and 1/C' from the seed value");
  return b;
}

}  // namespace monge::detail
