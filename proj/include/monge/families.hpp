#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "monge/functional_eq.hpp"

namespace monge {

struct Rect {
  double x_lo = 0.0;
  double x_hi = 1.0;
  double z_lo = 0.0;
  double z_hi = 1.0;
};

struct TrivialCfg {
  int n = 2;
  std::vector<std::vector<cplx>> f;  // polynomial coefficients, one list per root of unity
};

struct M1ImplicitCfg {
  std::vector<cplx> F;  // x + l z = F(l)
  double x_ref = 1.0;
  double z_ref = 0.0;
  cplx seed{1.0};
};

struct DegenerateCfg {
  std::vector<cplx> C;  // x + C'(a)^{1/2} z = G(a)
  std::vector<cplx> G;
  double x_ref = 1.0;
  double z_ref = 0.0;
  cplx seed{1.0};
};

struct M3SigmaConstCfg {
  double nu1 = 1.0, nu2 = 2.0;
  double A = 1.0, k = 1.0;
  double d1 = 0.0, d2 = 0.0;
};

enum class DTilde { Sum, Nu2 };

struct M3L1ConstCfg {
  double nu1 = 1.0, nu2 = 2.0;
  double D = 1.0, k = 1.0;
  DTilde dtilde = DTilde::Sum;
};

struct M3ThetaConstCfg {
  double nu1 = 1.0, nu2 = 2.0;
  double E = 1.0, k = 1.0;
};

struct M3HodoExampleCfg {
  double k = 1.0, alpha = 1.0, beta = 2.0;
  double nu1 = 1.0;  // the constant slope; only the implicit-slope residual uses it
};

struct M3GeneralCfg {
  double g = -1.0;
};

struct M3GeneralE0Cfg {
  double a = 1.0;
  double alpha1 = 1.0, alpha2 = 2.0;
  std::optional<double> c;  // must equal a alpha1 alpha2 when given
};

struct MnThetaConstCfg {
  int n = 4;
  double nu1 = 1.0, nu2 = 2.0;
  double E = 1.0, k = 0.1;
  double c = 1.0, cbar = 1.0;
};

using FamilyVariant = std::variant<TrivialCfg, M1ImplicitCfg, DegenerateCfg, M3SigmaConstCfg, M3L1ConstCfg,
                                   M3ThetaConstCfg, M3HodoExampleCfg, M3GeneralCfg, M3GeneralE0Cfg, MnThetaConstCfg>;

struct FamilyConfig {
  FamilyVariant spec;
  std::map<std::string, double> mutate;  // target -> factor
  std::optional<Rect> domain;
};

std::string family_name(const FamilyVariant& v);

enum class Relation { Eq7, Eq9, Eq613, Eq621, Cosh, Eq13, Identity, None };
std::string relation_name(Relation r);

struct FieldSample {
  std::vector<JetC> a;  // a^0 .. a^{n-1}
  JetC W;
  JetC f;  // alias of a^0
};

struct DomainPredicate {
  std::string name;
  std::function<double(double, double)> margin;  // admissible iff margin >= threshold
  double threshold = 1e-6;
};

struct SafeDomain {
  Rect rect;
  std::vector<DomainPredicate> predicates;

  // Empty when admissible, otherwise the name of the first violated condition.
  std::optional<std::string> violation(double x, double z) const;
  bool contains(double x, double z) const { return !violation(x, z); }
  void require(double x, double z) const;
};

// Additive terms of a closed-form relation G(W, f) = 0.
using RelationFn = std::function<std::vector<JetC>(const JetC& W, const JetC& f)>;

struct FieldBundle {
  std::string family;
  int n = 3;
  Relation relation = Relation::None;
  SafeDomain domain;
  std::function<FieldSample(const JetC& x, const JetC& z)> fields;
  RelationFn relation_fn;
  UFn W_explicit;  // W(a^0) when W is an explicit function of a^0
  std::optional<Quadruple> quadruple;
  std::optional<GeneralQuadruple> general;
  std::function<Residual(double, double)> characteristic;  // M1 / Degenerate
  std::function<cplx(double, double)> U;                    // Trivial only
  std::vector<std::string> mutation_targets;
  std::string f_convention;
  std::vector<std::string> notes;
};

FieldBundle make_family(const FamilyConfig& cfg);

FieldSample eval_fields(const FieldBundle& b, double x, double z, int m);

// Errors on families without a constant-nu quadruple.
QuadValues eval_quadruple(const FieldBundle& b, double x, double z);

// W(a^0) as a number: explicit function, Newton on the relation seeded at `seed`, or
// first-order extrapolation from the W field when neither exists.
cplx W_of_a0(const FieldBundle& b, const FieldSample& at, cplx a0);

// dW/da^0 at a sample: explicit, implicit differentiation of the relation, or
// gradient projection grad W . grad a^0 / |grad a^0|^2.
cplx W_prime(const FieldBundle& b, const FieldSample& s);

struct Gradients {
  cplx fx, fz, Wx, Wz;
};

// Gradients of f and W assembled from the derivative-level functions alone.
std::optional<Gradients> derivative_gradients(const FieldBundle& b, double x, double z);

}  // namespace monge
