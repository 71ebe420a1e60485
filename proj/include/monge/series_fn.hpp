#pragma once

#include <functional>
#include <vector>

#include "monge/jet.hpp"

namespace monge {

// A one-argument function given by its action on truncated series. Applying it to
// Series::variable(t0, m) yields its Taylor expansion about t0 to order m.
using UFn = std::function<SeriesC(const SeriesC&)>;

SeriesC expand(const UFn& f, cplx center, int m);

template <JetLike J>
J apply(const UFn& f, const J& a) {
  return compose(expand(f, a.value(), a.order()), a);
}

cplx value_at(const UFn& f, cplx t);
cplx derivative_at(const UFn& f, cplx t, int k);

// k-th derivative as a new function.
UFn derivative(const UFn& f, int k = 1);

UFn zero_fn();
UFn constant_fn(cplx c);
UFn identity_fn();
UFn scaled(UFn f, cplx factor);
// sum_j coeffs[j] t^j
UFn polynomial(std::vector<cplx> coeffs);
std::vector<cplx> polynomial_derivative(const std::vector<cplx>& coeffs, int k = 1);

struct GaussRule {
  std::vector<double> nodes;  // on [-1, 1]
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(int n);

// Composite Gauss-Legendre along the straight segment a -> b.
cplx integrate(const std::function<cplx(cplx)>& g, cplx a, cplx b, int panels = 16, int nodes = 8);

// F(t) = int_{t_ref}^{t} g. The value comes from quadrature, the higher Taylor
// coefficients from integrating the series of g, so F composes like any UFn.
UFn antiderivative(UFn integrand, cplx t_ref, int panels = 16);

}  // namespace monge
