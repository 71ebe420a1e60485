#include "monge/nu_algebra.hpp"

#include <sstream>

namespace monge {

cplx NuPair::box_n(int n) const {
  if (n < 0) throw std::invalid_argument("box_n needs n >= 0");
  cplx sum(0);
  cplx p1(1);
  for (int j = 0; j < n; ++j) {
    sum += p1 * ipow(nu2, n - 1 - j);
    p1 *= nu1;
  }
  return sum;
}

NuPair make_nu_pair(cplx nu1, cplx nu2) {
  if (nu1 == nu2) {
    std::ostringstream os;
    os << "nu1 != nu2 required (delta = nu2 - nu1 must be nonzero), got nu1 = nu2 = " << nu1.real();
    throw ConfigError(os.str());
  }
  if (nu1 == cplx(0) || nu2 == cplx(0)) throw ConfigError("nu1 and nu2 must be nonzero (W-side terms use 1/nu)");
  NuPair p;
  p.nu1 = nu1;
  p.nu2 = nu2;
  p.delta = nu2 - nu1;
  p.box3 = nu1 * nu1 + nu1 * nu2 + nu2 * nu2;
  p.rho = p.box3 == cplx(0) ? cplx(0) : (nu1 + nu2) * nu1 * nu2 / p.box3;
  return p;
}

JetC eval_l(int s, int k, const LPairSpec& L, const NuPair& nu, const JetC& x, const JetC& z,
            const LineArgs& lines) {
  const JetC D1 = line1(nu, lines, x, z);
  const JetC D2 = line2(nu, lines, x, z);
  const JetC v1 = monge::apply(derivative(L.L1, k), D1);
  const JetC v2 = monge::apply(derivative(L.L2, k), D2);
  return (v2 * nu.pow2(s) - v1 * nu.pow1(s)) / nu.delta;
}

cplx l_value(int s, cplx L1k, cplx L2k, const NuPair& nu) {
  return (nu.pow2(s) * L2k - nu.pow1(s) * L1k) / nu.delta;
}

}  // namespace monge
