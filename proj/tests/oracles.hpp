#pragma once
// Independent reference computations for the test suites.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "dfnls/dispersion.hpp"
#include "dfnls/grid.hpp"
#include "dfnls/lattice_core.hpp"

namespace oracle {

using dfnls::cplx;
using dfnls::lattice_core::Grid;
using dfnls::lattice_core::LatticeField;
using dfnls::lattice_core::SpectralField;

inline LatticeField random_field(const Grid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  LatticeField f(g);
  for (auto& v : f.values) v = cplx(nd(rng), nd(rng));
  return f;
}

// h^2 sum_x f(x) e^{-i x.xi}, O(n^4).
inline SpectralField direct_dft(const LatticeField& f) {
  const Grid& g = f.grid;
  SpectralField out(g);
  for (int k = 0; k < g.n; ++k)
    for (int l = 0; l < g.n; ++l) {
      cplx acc = 0.0;
      for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
          acc += f(i, j) * std::polar(1.0, -(g.site(i) * g.freq(k) + g.site(j) * g.freq(l)));
      out(k, l) = acc * (g.h * g.h);
    }
  return out;
}

inline LatticeField five_point(const LatticeField& f) {
  const Grid& g = f.grid;
  const int n = g.n;
  LatticeField out(g);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out(i, j) = (4.0 * f(i, j) - f((i + 1) % n, j) - f((i + n - 1) % n, j) - f(i, (j + 1) % n) -
                   f(i, (j + n - 1) % n)) / (g.h * g.h);
  return out;
}

// A f(x) = c h^2 sum_{0 < |z| <= R} (f(x) - f(x + z)) / |z|^{2+alpha} on the periodic box,
// z summed over hZ^2 directly (q = 2).
inline LatticeField long_range_direct(const LatticeField& f, double alpha, double radius, double c) {
  const Grid& g = f.grid;
  const int n = g.n;
  const int m = static_cast<int>(std::floor(radius / g.h + 1e-12));
  LatticeField out(g);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx acc = 0.0;
      for (int a = -m; a <= m; ++a)
        for (int b = -m; b <= m; ++b) {
          if (a == 0 && b == 0) continue;
          const double r = g.h * std::hypot(a, b);
          if (r > radius * (1.0 + 1e-12)) continue;
          const int ii = ((i + a) % n + n) % n, jj = ((j + b) % n + n) % n;
          acc += (f(i, j) - f(ii, jj)) / std::pow(r, 2.0 + alpha);
        }
      out(i, j) = c * g.h * g.h * acc;
    }
  return out;
}

// 50-digit gamma.
inline double gamma_hp(double x) {
  using big = boost::multiprecision::cpp_bin_float_50;
  return static_cast<double>(boost::math::tgamma(big(x)));
}

inline double w_fd_dx(dfnls::dispersion::Vec2 xi, double alpha, int axis, double s = 1e-5) {
  auto e = [&](double t) {
    auto p = xi;
    (axis == 0 ? p.x : p.y) += t;
    return dfnls::dispersion::w(p, alpha);
  };
  return (8.0 * (e(s) - e(-s)) - (e(2 * s) - e(-2 * s))) / (12.0 * s);
}

// Second derivative d_ij w by a fourth-order central stencil.
inline double w_fd_d2(dfnls::dispersion::Vec2 xi, double alpha, int i, int j, double s = 1e-3) {
  auto e = [&](double t1, double t2) {
    dfnls::dispersion::Vec2 p = xi;
    (i == 0 ? p.x : p.y) += t1;
    (j == 0 ? p.x : p.y) += t2;
    return dfnls::dispersion::w(p, alpha);
  };
  if (i == j) {
    auto g1 = [&](double t) {
      dfnls::dispersion::Vec2 p = xi;
      (i == 0 ? p.x : p.y) += t;
      return dfnls::dispersion::w(p, alpha);
    };
    return (-g1(2 * s) + 16 * g1(s) - 30 * g1(0) + 16 * g1(-s) - g1(-2 * s)) / (12 * s * s);
  }
  auto mixed = [&](double t) { return (e(t, t) - e(t, -t) - e(-t, t) + e(-t, -t)) / (4 * t * t); };
  return (4 * mixed(s) - mixed(2 * s)) / 3;
}

}  // namespace oracle
