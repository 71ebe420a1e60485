#pragma once

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <concepts>
#include <stdexcept>
#include <string>
#include <utility>

#include "monge/errors.hpp"

namespace monge {

using cplx = std::complex<double>;

namespace detail {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const cplx& v) { return std::abs(v); }

inline bool near_real(double) { return true; }
inline bool near_real(const cplx& v) {
  return std::abs(v.imag()) <= 1e-14 * std::max(1.0, std::abs(v));
}
inline double real_part(double v) { return v; }
inline double real_part(const cplx& v) { return v.real(); }

inline void check_order(int order) {
  if (order < 0) throw std::invalid_argument("jet order must be non-negative");
}

}  // namespace detail

// Exact integer power by repeated squaring (std::pow on complex goes through exp/log).
inline cplx ipow(cplx b, int n) {
  if (n < 0) return cplx(1) / ipow(b, -n);
  cplx r(1);
  while (n > 0) {
    if (n & 1) r *= b;
    b *= b;
    n >>= 1;
  }
  return r;
}

// One-variable truncated Taylor expansion sum_k c_k s^k about an implicit center.
template <typename Scalar>
class Series {
 public:
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Series() : c_(Vec::Zero(1)) {}
  explicit Series(int order) : c_((detail::check_order(order), Vec::Zero(order + 1))) {}
  explicit Series(Vec coeffs) : c_(std::move(coeffs)) {
    if (c_.size() == 0) throw std::invalid_argument("series needs at least one coefficient");
  }

  static Series constant(const Scalar& v, int order) {
    Series s(order);
    s.c_[0] = v;
    return s;
  }
  // The identity map t -> center + s.
  static Series variable(const Scalar& center, int order) {
    Series s(order);
    s.c_[0] = center;
    if (order >= 1) s.c_[1] = Scalar(1);
    return s;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const Scalar& value() const { return c_[0]; }
  const Scalar& operator[](int i) const { return c_[i]; }
  Scalar& operator[](int i) { return c_[i]; }
  const Vec& coeffs() const { return c_; }

  Series with_value(const Scalar& v) const {
    Series s(*this);
    s.c_[0] = v;
    return s;
  }

  // k-th derivative at the center.
  Scalar derivative_at_center(int k) const {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return c_[k] * f;
  }

  Series derivative() const {
    const int m = order();
    if (m == 0) return Series(0);
    Series d(m - 1);
    for (int i = 0; i < m; ++i) d.c_[i] = c_[i + 1] * double(i + 1);
    return d;
  }

  Series integral(const Scalar& c0) const {
    const int m = order();
    Series r(m + 1);
    r.c_[0] = c0;
    for (int i = 0; i <= m; ++i) r.c_[i + 1] = c_[i] / double(i + 1);
    return r;
  }

  Series truncated(int order) const {
    Series r(order);
    const int n = std::min(order, this->order());
    r.c_.head(n + 1) = c_.head(n + 1);
    return r;
  }

  Series& operator+=(const Series& o) {
    same_order(o);
    c_ += o.c_;
    return *this;
  }
  Series& operator-=(const Series& o) {
    same_order(o);
    c_ -= o.c_;
    return *this;
  }
  Series& operator*=(const Series& o) {
    same_order(o);
    const int m = order();
    Vec r = Vec::Zero(m + 1);
    for (int i = 0; i <= m; ++i) {
      if (c_[i] == Scalar(0)) continue;
      for (int j = 0; i + j <= m; ++j) r[i + j] += c_[i] * o.c_[j];
    }
    c_ = std::move(r);
    return *this;
  }
  Series& operator/=(const Series& o) { return *this *= reciprocal_of(o); }
  Series& operator+=(const Scalar& s) {
    c_[0] += s;
    return *this;
  }
  Series& operator-=(const Scalar& s) {
    c_[0] -= s;
    return *this;
  }
  Series& operator*=(const Scalar& s) {
    c_ *= s;
    return *this;
  }
  Series& operator/=(const Scalar& s) {
    c_ /= s;
    return *this;
  }

  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(Series a, const Series& b) { return a *= b; }
  friend Series operator/(Series a, const Series& b) { return a /= b; }
  friend Series operator+(Series a, const Scalar& s) { return a += s; }
  friend Series operator+(const Scalar& s, Series a) { return a += s; }
  friend Series operator-(Series a, const Scalar& s) { return a -= s; }
  friend Series operator-(const Scalar& s, const Series& a) { return -a + s; }
  friend Series operator*(Series a, const Scalar& s) { return a *= s; }
  friend Series operator*(const Scalar& s, Series a) { return a *= s; }
  friend Series operator/(Series a, const Scalar& s) { return a /= s; }
  friend Series operator/(const Scalar& s, const Series& a) { return reciprocal_of(a) *= s; }
  friend Series operator-(Series a) {
    a.c_ = -a.c_;
    return a;
  }

 private:
  void same_order(const Series& o) const {
    if (o.order() != order()) throw std::invalid_argument("series order mismatch");
  }
  static Series reciprocal_of(const Series& b) {
    if (b.c_[0] == Scalar(0)) throw DomainError("reciprocal of a series with zero constant term");
    const int m = b.order();
    Series r(m);
    r.c_[0] = Scalar(1) / b.c_[0];
    for (int k = 1; k <= m; ++k) {
      Scalar acc(0);
      for (int j = 1; j <= k; ++j) acc += b.c_[j] * r.c_[k - j];
      r.c_[k] = -acc / b.c_[0];
    }
    return r;
  }

  Vec c_;
};

// Bivariate truncated Taylor expansion sum c[i][j] dx^i dz^j, i+j <= m, in packed
// triangular storage ordered by total degree.
template <typename Scalar>
class Jet2 {
 public:
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Jet2() : Jet2(0) {}
  explicit Jet2(int order) : m_(order), c_((detail::check_order(order), Vec::Zero(size_for(order)))) {}

  static int size_for(int m) { return (m + 1) * (m + 2) / 2; }
  static int index(int i, int j) {
    const int d = i + j;
    return d * (d + 1) / 2 + j;
  }

  static Jet2 constant(const Scalar& v, int order) {
    Jet2 r(order);
    r.c_[0] = v;
    return r;
  }

  int order() const { return m_; }
  const Scalar& value() const { return c_[0]; }
  const Vec& coeffs() const { return c_; }

  const Scalar& coeff(int i, int j) const { return c_[checked_index(i, j)]; }
  Scalar& coeff(int i, int j) { return c_[checked_index(i, j)]; }

  // True mixed partial derivative at the base point.
  Scalar partial(int i, int j) const {
    if (i < 0 || j < 0 || i + j > m_) throw std::invalid_argument("partial order exceeds jet order");
    double f = 1.0;
    for (int k = 2; k <= i; ++k) f *= k;
    for (int k = 2; k <= j; ++k) f *= k;
    return c_[index(i, j)] * f;
  }

  Jet2 with_value(const Scalar& v) const {
    Jet2 r(*this);
    r.c_[0] = v;
    return r;
  }

  Jet2 truncated(int order) const {
    Jet2 r(order);
    const int n = std::min(order, m_);
    r.c_.head(size_for(n)) = c_.head(size_for(n));
    return r;
  }

  Jet2& operator+=(const Jet2& o) {
    same_order(o);
    c_ += o.c_;
    return *this;
  }
  Jet2& operator-=(const Jet2& o) {
    same_order(o);
    c_ -= o.c_;
    return *this;
  }
  Jet2& operator*=(const Jet2& o) {
    same_order(o);
    Vec r = Vec::Zero(c_.size());
    for (int d1 = 0; d1 <= m_; ++d1) {
      for (int j1 = 0; j1 <= d1; ++j1) {
        const Scalar a = c_[index(d1 - j1, j1)];
        if (a == Scalar(0)) continue;
        for (int d2 = 0; d1 + d2 <= m_; ++d2) {
          const int base = (d1 + d2) * (d1 + d2 + 1) / 2 + j1;
          const int src = d2 * (d2 + 1) / 2;
          for (int j2 = 0; j2 <= d2; ++j2) r[base + j2] += a * o.c_[src + j2];
        }
      }
    }
    c_ = std::move(r);
    return *this;
  }
  Jet2& operator/=(const Jet2& o) { return *this *= reciprocal(o); }
  Jet2& operator+=(const Scalar& s) {
    c_[0] += s;
    return *this;
  }
  Jet2& operator-=(const Scalar& s) {
    c_[0] -= s;
    return *this;
  }
  Jet2& operator*=(const Scalar& s) {
    c_ *= s;
    return *this;
  }
  Jet2& operator/=(const Scalar& s) {
    c_ /= s;
    return *this;
  }

  friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
  friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
  friend Jet2 operator*(Jet2 a, const Jet2& b) { return a *= b; }
  friend Jet2 operator/(Jet2 a, const Jet2& b) { return a /= b; }
  friend Jet2 operator+(Jet2 a, const Scalar& s) { return a += s; }
  friend Jet2 operator+(const Scalar& s, Jet2 a) { return a += s; }
  friend Jet2 operator-(Jet2 a, const Scalar& s) { return a -= s; }
  friend Jet2 operator-(const Scalar& s, const Jet2& a) { return -a + s; }
  friend Jet2 operator*(Jet2 a, const Scalar& s) { return a *= s; }
  friend Jet2 operator*(const Scalar& s, Jet2 a) { return a *= s; }
  friend Jet2 operator/(Jet2 a, const Scalar& s) { return a /= s; }
  friend Jet2 operator/(const Scalar& s, const Jet2& a) { return reciprocal(a) *= s; }
  friend Jet2 operator-(Jet2 a) {
    a.c_ = -a.c_;
    return a;
  }

 private:
  int checked_index(int i, int j) const {
    if (i < 0 || j < 0 || i + j > m_) throw std::invalid_argument("coefficient index exceeds jet order");
    return index(i, j);
  }
  void same_order(const Jet2& o) const {
    if (o.m_ != m_) throw std::invalid_argument("jet order mismatch");
  }

  int m_;
  Vec c_;
};

template <typename T>
concept JetLike = requires(const T& a) {
  { a.order() } -> std::convertible_to<int>;
  a.value();
  { a.with_value(a.value()) } -> std::same_as<T>;
};

// Coordinate jets x0 + dx and z0 + dz.
template <typename Scalar>
std::pair<Jet2<Scalar>, Jet2<Scalar>> seed(const Scalar& x0, const Scalar& z0, int m) {
  if (m < 1) throw std::invalid_argument("seed requires order m >= 1");
  Jet2<Scalar> x = Jet2<Scalar>::constant(x0, m);
  Jet2<Scalar> z = Jet2<Scalar>::constant(z0, m);
  x.coeff(1, 0) = Scalar(1);
  z.coeff(0, 1) = Scalar(1);
  return {x, z};
}

// Same as seed() but also admits m = 0 (plain values).
template <typename Scalar>
std::pair<Jet2<Scalar>, Jet2<Scalar>> coordinates(const Scalar& x0, const Scalar& z0, int m) {
  if (m == 0) return {Jet2<Scalar>::constant(x0, 0), Jet2<Scalar>::constant(z0, 0)};
  return seed(x0, z0, m);
}

template <typename Scalar>
Scalar jet_partial(const Jet2<Scalar>& a, int i, int j) {
  return a.partial(i, j);
}

// g(a) for g expanded about a.value(), by Horner in the nilpotent part a - a.value().
template <typename Scalar, JetLike J>
J compose(const Series<Scalar>& g, const J& a) {
  const int m = a.order();
  if (g.order() < m) throw std::invalid_argument("compose: series order below jet order");
  const J delta = a.with_value(Scalar(0));
  J result = J::constant(g[m], m);
  for (int j = m - 1; j >= 0; --j) {
    result *= delta;
    result += g[j];
  }
  return result;
}

namespace series {

template <typename Scalar>
Series<Scalar> reciprocal(const Scalar& c0, int m) {
  if (c0 == Scalar(0)) throw DomainError("reciprocal: argument is zero");
  Series<Scalar> s(m);
  Scalar p = Scalar(1) / c0;
  for (int k = 0; k <= m; ++k) {
    s[k] = (k % 2 == 0) ? p : -p;
    p /= c0;
  }
  return s;
}

template <typename Scalar>
Series<Scalar> exp(const Scalar& c0, int m) {
  Series<Scalar> s(m);
  Scalar term = std::exp(c0);
  for (int k = 0; k <= m; ++k) {
    s[k] = term;
    term /= double(k + 1);
  }
  return s;
}

template <typename Scalar>
Series<Scalar> log_tail(Series<Scalar> s, const Scalar& c0) {
  Scalar p = Scalar(1) / c0;
  Scalar q = p;
  for (int k = 1; k <= s.order(); ++k) {
    s[k] = ((k % 2 == 1) ? q : -q) / double(k);
    q *= p;
  }
  return s;
}

// Principal branch; refuses zero and the negative real cut.
template <typename Scalar>
Series<Scalar> log(const Scalar& c0, int m) {
  if (c0 == Scalar(0)) throw DomainError("ln: argument is zero");
  if (detail::near_real(c0) && detail::real_part(c0) < 0.0)
    throw DomainError("ln: argument on the negative real branch cut");
  Series<Scalar> s(m);
  s[0] = std::log(c0);
  if constexpr (std::is_same_v<Scalar, cplx>) {
    if (detail::near_real(c0)) s[0] = std::log(c0.real());
  }
  return log_tail(s, c0);
}

// ln|t| for real-valued arguments of either sign.
template <typename Scalar>
Series<Scalar> log_abs(const Scalar& c0, int m) {
  if (!detail::near_real(c0)) throw DomainError("ln|.|: argument is not real");
  const double r = detail::real_part(c0);
  if (r == 0.0) throw DomainError("ln|.|: argument is zero");
  Series<Scalar> s(m);
  s[0] = Scalar(std::log(std::abs(r)));
  return log_tail(s, Scalar(r));
}

template <typename Scalar>
Series<Scalar> ipow(const Scalar& c0, int p, int m) {
  if (p < 0 && c0 == Scalar(0)) throw DomainError("pow: zero raised to a negative power");
  Series<Scalar> s(m);
  if (c0 == Scalar(0)) {
    if (p <= m) s[p] = Scalar(1);
    return s;
  }
  Scalar term = Scalar(1);
  for (int i = 0; i < std::abs(p); ++i) term *= c0;
  if (p < 0) term = Scalar(1) / term;
  for (int k = 0; k <= m; ++k) {
    s[k] = term;
    term = term * double(p - k) / (double(k + 1) * c0);
  }
  return s;
}

// Non-integer exponents need a positive-real center.
template <typename Scalar>
Series<Scalar> pow(const Scalar& c0, double p, int m) {
  if (p == std::round(p) && std::abs(p) < 64) return ipow(c0, static_cast<int>(p), m);
  if (!detail::near_real(c0) || detail::real_part(c0) <= 0.0)
    throw DomainError("pow: non-integer exponent needs a positive real base");
  const double r = detail::real_part(c0);
  Series<Scalar> s(m);
  double term = std::pow(r, p);
  for (int k = 0; k <= m; ++k) {
    s[k] = Scalar(term);
    term = term * (p - k) / ((k + 1) * r);
  }
  return s;
}

template <typename Scalar>
Series<Scalar> sin(const Scalar& c0, int m) {
  Series<Scalar> s(m);
  const Scalar sv = std::sin(c0), cv = std::cos(c0);
  double f = 1.0;
  for (int k = 0; k <= m; ++k) {
    if (k > 0) f *= k;
    const Scalar d = (k % 4 == 0) ? sv : (k % 4 == 1) ? cv : (k % 4 == 2) ? -sv : -cv;
    s[k] = d / f;
  }
  return s;
}

template <typename Scalar>
Series<Scalar> cos(const Scalar& c0, int m) {
  Series<Scalar> s(m);
  const Scalar sv = std::sin(c0), cv = std::cos(c0);
  double f = 1.0;
  for (int k = 0; k <= m; ++k) {
    if (k > 0) f *= k;
    const Scalar d = (k % 4 == 0) ? cv : (k % 4 == 1) ? -sv : (k % 4 == 2) ? -cv : sv;
    s[k] = d / f;
  }
  return s;
}

template <typename Scalar>
Series<Scalar> sinh(const Scalar& c0, int m) {
  Series<Scalar> s(m);
  const Scalar sv = std::sinh(c0), cv = std::cosh(c0);
  double f = 1.0;
  for (int k = 0; k <= m; ++k) {
    if (k > 0) f *= k;
    s[k] = ((k % 2 == 0) ? sv : cv) / f;
  }
  return s;
}

template <typename Scalar>
Series<Scalar> cosh(const Scalar& c0, int m) {
  Series<Scalar> s(m);
  const Scalar sv = std::sinh(c0), cv = std::cosh(c0);
  double f = 1.0;
  for (int k = 0; k <= m; ++k) {
    if (k > 0) f *= k;
    s[k] = ((k % 2 == 0) ? cv : sv) / f;
  }
  return s;
}

template <typename Scalar>
Series<Scalar> atan(const Scalar& c0, int m) {
  if (m == 0) return Series<Scalar>::constant(std::atan(c0), 0);
  // d/dt atan t = 1/(1+t^2), expanded about c0 and integrated termwise
  const Series<Scalar> t = Series<Scalar>::variable(c0, m - 1);
  const Series<Scalar> d = Scalar(1) / (t * t + Scalar(1));
  return d.integral(std::atan(c0));
}

}  // namespace series

template <JetLike J>
J exp(const J& a) {
  return compose(series::exp(a.value(), a.order()), a);
}
template <JetLike J>
J log(const J& a) {
  return compose(series::log(a.value(), a.order()), a);
}
template <JetLike J>
J log_abs(const J& a) {
  return compose(series::log_abs(a.value(), a.order()), a);
}
template <JetLike J>
J pow(const J& a, double p) {
  return compose(series::pow(a.value(), p, a.order()), a);
}
template <JetLike J>
J ipow(const J& a, int p) {
  return compose(series::ipow(a.value(), p, a.order()), a);
}
template <JetLike J>
J sqrt(const J& a) {
  return pow(a, 0.5);
}
template <JetLike J>
J reciprocal(const J& a) {
  return compose(series::reciprocal(a.value(), a.order()), a);
}
template <JetLike J>
J sin(const J& a) {
  return compose(series::sin(a.value(), a.order()), a);
}
template <JetLike J>
J cos(const J& a) {
  return compose(series::cos(a.value(), a.order()), a);
}
template <JetLike J>
J sinh(const J& a) {
  return compose(series::sinh(a.value(), a.order()), a);
}
template <JetLike J>
J cosh(const J& a) {
  return compose(series::cosh(a.value(), a.order()), a);
}
template <JetLike J>
J atan(const J& a) {
  return compose(series::atan(a.value(), a.order()), a);
}

using SeriesC = Series<cplx>;
using JetC = Jet2<cplx>;

}  // namespace monge
