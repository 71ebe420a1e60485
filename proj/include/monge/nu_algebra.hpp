#pragma once

#include "monge/series_fn.hpp"

namespace monge {

struct NuPair {
  cplx nu1;
  cplx nu2;
  cplx delta;  // nu2 - nu1
  cplx box3;   // nu1^2 + nu1 nu2 + nu2^2
  cplx rho;    // (nu1 + nu2) nu1 nu2 / box3

  // (nu2^n - nu1^n)/(nu2 - nu1), summed as a geometric series.
  cplx box_n(int n) const;
  cplx pow1(int s) const { return ipow(nu1, s); }
  cplx pow2(int s) const { return ipow(nu2, s); }
};

NuPair make_nu_pair(cplx nu1, cplx nu2);

// Phases of D_i = x + nu_i z + d_i.
struct LineArgs {
  cplx d1{0.0};
  cplx d2{0.0};
};

template <JetLike J>
J line1(const NuPair& nu, const LineArgs& lines, const J& x, const J& z) {
  return x + z * nu.nu1 + lines.d1;
}
template <JetLike J>
J line2(const NuPair& nu, const LineArgs& lines, const J& x, const J& z) {
  return x + z * nu.nu2 + lines.d2;
}

struct LPairSpec {
  UFn L1;
  UFn L2;
};

// l_s^k = (nu2^s L2^(k)(D2) - nu1^s L1^(k)(D1)) / (nu2 - nu1) as a jet.
JetC eval_l(int s, int k, const LPairSpec& L, const NuPair& nu, const JetC& x, const JetC& z,
            const LineArgs& lines = {});

// Same combination from already evaluated derivative values.
cplx l_value(int s, cplx L1k, cplx L2k, const NuPair& nu);

}  // namespace monge
