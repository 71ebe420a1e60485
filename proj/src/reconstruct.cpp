#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

#include "monge/verifier.hpp"

namespace monge {

namespace {

using LC = std::complex<long double>;

struct Lattice {
  int Nx = 0, Nz = 0;  // intervals
  long double hx = 0, hz = 0;
  double x0 = 0, z0 = 0, x1 = 0, z1 = 0;
  std::vector<LC> UA, UB;  // bottom-row-first and left-column-first paths

  int idx(int i, int k) const { return k * (Nx + 1) + i; }
  double x(int i) const { return i == Nx ? x1 : std::min(x1, x0 + static_cast<double>(i * hx)); }
  double z(int k) const { return k == Nz ? z1 : std::min(z1, z0 + static_cast<double>(k * hz)); }
};

// V^l_j = d^l U / dx^j dz^(l-j): dV^l_j/dx = V^(l+1)_(j+1), dV^l_j/dz = V^(l+1)_j.
std::vector<LC> integrate_levels(std::vector<std::vector<LC>> cur, int n, const Lattice& L, bool row_first) {
  const int W = L.Nx + 1;
  auto at = [W](std::vector<LC>& v, int i, int k) -> LC& { return v[static_cast<std::size_t>(k * W + i)]; };
  const LC hx2(L.hx / 2), hz2(L.hz / 2);
  for (int l = n - 1; l >= 0; --l) {
    std::vector<std::vector<LC>> next(static_cast<std::size_t>(l + 1),
                                      std::vector<LC>(cur[0].size(), LC(0)));
    for (int j = 0; j <= l; ++j) {
      auto& dx = cur[static_cast<std::size_t>(j + 1)];
      auto& dz = cur[static_cast<std::size_t>(j)];
      auto& V = next[static_cast<std::size_t>(j)];
      if (row_first) {
        for (int i = 1; i <= L.Nx; ++i) at(V, i, 0) = at(V, i - 1, 0) + hx2 * (at(dx, i - 1, 0) + at(dx, i, 0));
        for (int i = 0; i <= L.Nx; ++i)
          for (int k = 1; k <= L.Nz; ++k) at(V, i, k) = at(V, i, k - 1) + hz2 * (at(dz, i, k - 1) + at(dz, i, k));
      } else {
        for (int k = 1; k <= L.Nz; ++k) at(V, 0, k) = at(V, 0, k - 1) + hz2 * (at(dz, 0, k - 1) + at(dz, 0, k));
        for (int k = 0; k <= L.Nz; ++k)
          for (int i = 1; i <= L.Nx; ++i) at(V, i, k) = at(V, i - 1, k) + hx2 * (at(dx, i - 1, k) + at(dx, i, k));
      }
    }
    cur = std::move(next);
  }
  return cur[0];
}

Lattice build(const FieldBundle& b, const Rect& r, int Nx, int Nz) {
  Lattice L;
  L.Nx = Nx, L.Nz = Nz;
  L.x0 = r.x_lo, L.z0 = r.z_lo, L.x1 = r.x_hi, L.z1 = r.z_hi;
  L.hx = (static_cast<long double>(r.x_hi) - r.x_lo) / Nx;
  L.hz = (static_cast<long double>(r.z_hi) - r.z_lo) / Nz;
  const int n = b.n;
  const std::size_t size = static_cast<std::size_t>((Nx + 1) * (Nz + 1));
  std::vector<std::vector<LC>> top(static_cast<std::size_t>(n + 1), std::vector<LC>(size));
  for (int k = 0; k <= Nz; ++k) {
    for (int i = 0; i <= Nx; ++i) {
      const FieldSample s = eval_fields(b, L.x(i), L.z(k), 0);
      const std::size_t id = static_cast<std::size_t>(L.idx(i, k));
      for (int j = 0; j < n; ++j) top[static_cast<std::size_t>(j)][id] = LC(s.a[static_cast<std::size_t>(j)].value());
      top[static_cast<std::size_t>(n)][id] = LC(s.W.value());
    }
  }
  L.UA = integrate_levels(top, n, L, true);
  L.UB = integrate_levels(std::move(top), n, L, false);
  return L;
}

// Central second-order stencils for the n-th derivative, offsets -s..s.
std::vector<long double> stencil(int n) {
  switch (n) {
    case 1: return {-0.5L, 0.0L, 0.5L};
    case 2: return {1.0L, -2.0L, 1.0L};
    case 3: return {-0.5L, 1.0L, 0.0L, -1.0L, 0.5L};
    default: return {1.0L, -4.0L, 6.0L, -4.0L, 1.0L};
  }
}

struct FdPair {
  LC dx, dz;
};

// x-differences along rows of the row-last path and z-differences along columns of the
// column-last path only see local trapezoid increments, so rounding does not accumulate.
FdPair fd(const Lattice& L, int i, int k, int n) {
  const auto w = stencil(n);
  const int s = static_cast<int>(w.size()) / 2;
  LC dx(0), dz(0);
  for (int q = -s; q <= s; ++q) {
    dx += w[static_cast<std::size_t>(q + s)] * L.UB[static_cast<std::size_t>(L.idx(i + q, k))];
    dz += w[static_cast<std::size_t>(q + s)] * L.UA[static_cast<std::size_t>(L.idx(i, k + q))];
  }
  return {dx / std::pow(L.hx, static_cast<long double>(n)), dz / std::pow(L.hz, static_cast<long double>(n))};
}

}  // namespace

CheckResult reconstruct_U(const FieldBundle& b, const GridSpec& g, double tol) {
  CheckResult r;
  r.name = "reconstruct";
  r.tolerance = tol;
  if (b.n > 4) {
    r.applicable = false;
    r.details["note"] = "finite-difference oracle implemented for n <= 4";
    return r;
  }
  validate_grid(g);
  const Rect rect = grid_rect(b, g);
  const int n = b.n;
  const int s = static_cast<int>(stencil(n).size()) / 2;
  const int Nx = std::max(4 * s, static_cast<int>(std::lround((rect.x_hi - rect.x_lo) / g.h)));
  const int Nz = std::max(4 * s, static_cast<int>(std::lround((rect.z_hi - rect.z_lo) / g.h)));
  if (static_cast<double>(2 * Nx + 1) * (2 * Nz + 1) > 4e6)
    throw ConfigError("reconstruct: lattice with spacing h over the grid rectangle exceeds 4e6 points; raise h");

  Lattice coarse, fine;
  try {
    coarse = build(b, rect, Nx, Nz);
    fine = build(b, rect, 2 * Nx, 2 * Nz);
  } catch (const std::exception& e) {
    r.pass = false;
    r.max_abs = std::numeric_limits<double>::infinity();
    r.details["error"] = std::string("reconstruction lattice: ") + e.what();
    return r;
  }

  double raw_h = 0, raw_h2 = 0, path_h = 0, path_h2 = 0, path_ex = 0;
  double max_n = -1, sum = 0, max_raw = 0;
  int count = 0, errors = 0;
  std::string first_error;
  for (int k = s; k <= Nz - s; ++k) {
    for (int i = s; i <= Nx - s; ++i) {
      const double x = coarse.x(i), z = coarse.z(k);
      try {
        const FieldSample at = eval_fields(b, x, z, 1);
        const FdPair c = fd(coarse, i, k, n), f = fd(fine, 2 * i, 2 * k, n);
        const cplx Wc = W_of_a0(b, at, cplx(c.dz)), Wf = W_of_a0(b, at, cplx(f.dz));
        const LC rc = c.dx - LC(Wc), rf = f.dx - LC(Wf);
        const LC ex = (4.0L * rf - rc) / 3.0L;
        const double scale = std::max({1.0, std::abs(cplx(f.dx)), std::abs(Wf)});
        const double raw = static_cast<double>(std::abs(ex));
        const double nrm = raw / scale;
        raw_h = std::max(raw_h, static_cast<double>(std::abs(rc)));
        raw_h2 = std::max(raw_h2, static_cast<double>(std::abs(rf)));
        if (!(nrm <= max_n)) max_n = nrm, r.argmax = {x, z};
        max_raw = std::max(max_raw, raw);
        sum += nrm;
        ++count;
        const LC dc = coarse.UA[static_cast<std::size_t>(coarse.idx(i, k))] -
                      coarse.UB[static_cast<std::size_t>(coarse.idx(i, k))];
        const LC df = fine.UA[static_cast<std::size_t>(fine.idx(2 * i, 2 * k))] -
                      fine.UB[static_cast<std::size_t>(fine.idx(2 * i, 2 * k))];
        path_h = std::max(path_h, static_cast<double>(std::abs(dc)));
        path_h2 = std::max(path_h2, static_cast<double>(std::abs(df)));
        path_ex = std::max(path_ex, static_cast<double>(std::abs((4.0L * df - dc) / 3.0L)));
      } catch (const std::exception& e) {
        if (errors++ == 0) {
          std::ostringstream os;
          os.precision(17);
          os << "(" << x << ", " << z << "): " << e.what();
          first_error = os.str();
        }
      }
    }
  }
  r.points = count;
  r.max_abs = count ? max_n : std::numeric_limits<double>::infinity();
  r.mean_abs = count ? sum / count : 0.0;
  r.max_raw = max_raw;
  r.details["h"] = {static_cast<double>(coarse.hx), static_cast<double>(coarse.hz)};
  r.details["lattice"] = {Nx + 1, Nz + 1};
  r.details["raw_h"] = raw_h;
  r.details["raw_h2"] = raw_h2;
  r.details["ratio"] = raw_h2 > 0 ? raw_h / raw_h2 : 0.0;
  r.details["path_difference_h"] = path_h;
  r.details["path_difference_h2"] = path_h2;
  r.details["path_difference_extrapolated"] = path_ex;
  const bool paths_ok = path_ex <= 1e-6;
  if (!paths_ok) r.details["error"] = "integration paths disagree beyond 1e-6: the fields are not integrable";
  if (errors) {
    r.details["point_errors"] = errors;
    r.details["first_error"] = first_error;
  }
  r.pass = count > 0 && errors == 0 && paths_ok && r.max_abs <= tol;
  return r;
}

}  // namespace monge
