#pragma once

#include <functional>
#include <vector>

#include "monge/nu_algebra.hpp"

namespace monge {

// A signed residual together with the size of its largest additive term.
struct Residual {
  cplx value{0.0};
  double raw = 0.0;
  double scale = 0.0;
  double normalized = 0.0;
};

Residual make_residual(const std::vector<cplx>& terms);

// sigma_x(x), theta_z(z), L1'(D1), L2'(D2) for constant nu1, nu2.
struct Quadruple {
  int n = 3;
  NuPair nu;
  LineArgs lines;
  UFn sigma_x;
  UFn theta_z;
  UFn L1p;
  UFn L2p;
};

struct QuadValues {
  cplx sigma_x, theta_z, L1p, L2p;
};

QuadValues quadruple_values(const Quadruple& q, double x, double z);

// sigma theta + sigma l^1_n + theta l^1_{-1} - (box_n/(nu1 nu2)) L2' L1'
Residual residual_eq5(const Quadruple& q, double x, double z);
Residual residual_eq5(const QuadValues& v, const NuPair& nu, int n);

// (theta + nu1^{n-1}L1')(L2'/nu2 - nu1 sigma) - (theta + nu2^{n-1}L2')(L1'/nu1 - nu2 sigma)
Residual residual_eq6(const Quadruple& q, double x, double z);
Residual residual_eq6(const QuadValues& v, const NuPair& nu, int n);

enum class DualityVariant { Literal, Symmetric };

Quadruple duality_transform(const Quadruple& q, DualityVariant variant);

// One characteristic family of a general quadruple: either a constant slope nu with
// its line function L'(x + nu z + d), or an implicit slope x + nu z = Theta(nu) with C'(nu).
struct GeneralSide {
  bool constant_nu = false;
  cplx nu{0.0};
  cplx d{0.0};
  UFn Lp;
  UFn Theta;
  UFn Cp;
  std::function<cplx(double, double)> seed;
};

struct GeneralQuadruple {
  int n = 3;
  GeneralSide s1;
  GeneralSide s2;
  UFn sigma_x;
  UFn theta_z;
};

struct NuSolution {
  cplx nu1, nu2;
  cplx q1, q2;  // Theta_i'(nu_i) - z for implicit sides
  cplx w1, w2;  // nu_i,x-weighted C_i' (implicit) or -/+ L'/Delta (constant)
};

NuSolution solve_nus(const GeneralQuadruple& g, double x, double z);

// Delta [theta sigma + sigma sum nu^n w + theta sum w/nu + Delta^2 box_n/(nu1 nu2) w1 w2]
Residual residual_eq10(const GeneralQuadruple& g, double x, double z);

// The constant-nu quadruple seen as a general one (w1 = -L1'/Delta, w2 = L2'/Delta).
GeneralQuadruple as_general(const Quadruple& q);

}  // namespace monge
