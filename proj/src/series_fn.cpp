#include "monge/series_fn.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace monge {

SeriesC expand(const UFn& f, cplx center, int m) {
  SeriesC s = f(SeriesC::variable(center, m));
  if (s.order() != m) throw std::invalid_argument("function returned a series of the wrong order");
  return s;
}

cplx value_at(const UFn& f, cplx t) { return f(SeriesC::constant(t, 0)).value(); }

cplx derivative_at(const UFn& f, cplx t, int k) { return expand(f, t, k).derivative_at_center(k); }

UFn derivative(const UFn& f, int k) {
  if (k == 0) return f;
  return [f, k](const SeriesC& t) {
    const int m = t.order();
    const SeriesC g = expand(f, t.value(), m + k);
    SeriesC d(m);
    for (int j = 0; j <= m; ++j) {
      double fall = 1.0;
      for (int i = 1; i <= k; ++i) fall *= double(j + i);
      d[j] = g[j + k] * fall;
    }
    return compose(d, t);
  };
}

UFn zero_fn() {
  return [](const SeriesC& t) { return SeriesC(t.order()); };
}

UFn constant_fn(cplx c) {
  return [c](const SeriesC& t) { return SeriesC::constant(c, t.order()); };
}

UFn identity_fn() {
  return [](const SeriesC& t) { return t; };
}

UFn scaled(UFn f, cplx factor) {
  if (factor == cplx(1)) return f;
  return [f = std::move(f), factor](const SeriesC& t) { return f(t) * factor; };
}

UFn polynomial(std::vector<cplx> coeffs) {
  return [c = std::move(coeffs)](const SeriesC& t) {
    SeriesC r(t.order());
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
      r *= t;
      r += *it;
    }
    return r;
  };
}

std::vector<cplx> polynomial_derivative(const std::vector<cplx>& coeffs, int k) {
  std::vector<cplx> d = coeffs;
  for (int r = 0; r < k; ++r) {
    if (d.size() <= 1) return {cplx(0)};
    std::vector<cplx> next(d.size() - 1);
    for (std::size_t j = 1; j < d.size(); ++j) next[j - 1] = d[j] * double(j);
    d = std::move(next);
  }
  return d;
}

namespace {

GaussRule build_rule(int n) {
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.nodes[i] = x;
    r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
  return it->second;
}

cplx integrate(const std::function<cplx(cplx)>& g, cplx a, cplx b, int panels, int nodes) {
  const GaussRule& rule = gauss_legendre(nodes);
  const cplx step = (b - a) / double(panels);
  cplx total(0);
  for (int p = 0; p < panels; ++p) {
    const cplx mid = a + step * (p + 0.5);
    for (int i = 0; i < nodes; ++i) total += rule.weights[i] * g(mid + 0.5 * step * rule.nodes[i]);
  }
  return total * (0.5 * step);
}

UFn antiderivative(UFn integrand, cplx t_ref, int panels) {
  return [g = std::move(integrand), t_ref, panels](const SeriesC& t) {
    const int m = t.order();
    const cplx t0 = t.value();
    const cplx v = integrate([&g](cplx s) { return value_at(g, s); }, t_ref, t0, panels);
    if (m == 0) return SeriesC::constant(v, 0);
    const SeriesC tail = expand(g, t0, m - 1).integral(v);
    return compose(tail, t);
  };
}

}  // namespace monge
