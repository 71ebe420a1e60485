#pragma once

#include <Eigen/Core>

#include <functional>
#include <utility>
#include <vector>

#include "monge/series_fn.hpp"

namespace monge {

// x + M(l) z = G(l). The M1 case is M = identity, G = F.
struct ImplicitEquation {
  UFn M;
  UFn G;
};

ImplicitEquation monge_implicit(UFn F);

// Root of x + l z = F(l) on the branch through seed.
cplx solve_implicit(const UFn& F, cplx x, cplx z, cplx seed);
cplx solve_implicit(const ImplicitEquation& eq, cplx x, cplx z, cplx seed);

// Newton in jet arithmetic from a converged root: returns l(x, z) to the order of X, Z.
JetC implicit_jet(const ImplicitEquation& eq, const JetC& X, const JetC& Z, cplx root);

// Predictor-corrector march from (x0, z0, seed0) to (x, z); refuses folds and branch jumps.
cplx continue_branch(const ImplicitEquation& eq, double x0, double z0, cplx seed0, double x, double z);

// R(b, c) evaluated on jets: the b-jet occupies the first slot, the c-jet the second.
using RPotential = std::function<JetC(const JetC& b, const JetC& c)>;

struct BC {
  cplx b;
  cplx c;
};

BC invert_hodograph(const RPotential& R, cplx x, cplx z, BC seed);

struct InverseDerivatives {
  cplx bx, bz, cx, cz;
  cplx D;  // Jacob(X, Z) = X_b Z_c - X_c Z_b
};
InverseDerivatives inverse_derivatives(const RPotential& R, BC at);

// (nu1 + nu2 - W_b, nu1 nu2 + W_c)
std::pair<cplx, cplx> factorization_check(cplx W_b, cplx W_c, cplx nu1, cplx nu2);

// w'' = k^2 W_c(c) w, fundamental pair with data (1,0) and (0,1) at c_init.
class OdeSolution {
 public:
  double k = 0.0;
  double c_init = 0.0;
  std::vector<double> c;
  std::vector<cplx> w1, dw1, w2, dw2;
  int steps = 0;
  double halving_error = 0.0;

  // Taylor series of w_which (1 or 2) about the point c0, order m.
  SeriesC series(int which, double c0, int m) const;
  cplx wronskian(std::size_t i) const { return w1[i] * dw2[i] - w2[i] * dw1[i]; }
  double wronskian_drift() const;

 private:
  friend OdeSolution schrodinger_solve(const UFn&, double, std::pair<double, double>, int, double);
  UFn profile_;
};

OdeSolution schrodinger_solve(const UFn& W_c_profile, double k, std::pair<double, double> c_range, int steps,
                              double c_init);
OdeSolution schrodinger_solve(const UFn& W_c_profile, double k, std::pair<double, double> c_range,
                              int steps = 200);

struct KQuadrature {
  // Explicit nodes: k values with weights. When gauss_nodes > 0 the rule is
  // Gauss-Legendre on [k_lo, k_hi] and convergence is checked by node doubling.
  std::vector<double> nodes;
  std::vector<double> weights;
  double k_lo = 0.0;
  double k_hi = 0.0;
  int gauss_nodes = 0;
};

struct RIntegralResult {
  std::vector<double> b;
  std::vector<double> c;
  Eigen::MatrixXcd R;  // rows b, columns c
  double max_residual = 0.0;
  double max_normalized = 0.0;
  double mean_residual = 0.0;
  double wronskian_drift = 0.0;
  double doubling_change = 0.0;
  std::pair<double, double> argmax{0.0, 0.0};
};

// R = sum_q weight_q e^{k_q b} (f1(k_q) w1 + f2(k_q) w2); residual R_cc - W_c R_bb by jets.
RIntegralResult assemble_R_integral(const std::function<cplx(double)>& f1, const std::function<cplx(double)>& f2,
                                    const KQuadrature& k_nodes, const UFn& W_c_profile,
                                    std::pair<double, double> b_range, std::pair<double, double> c_range,
                                    int nb = 11, int nc = 11, int steps = 200);

}  // namespace monge
