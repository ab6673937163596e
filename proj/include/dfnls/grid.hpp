#pragma once

#include <cstddef>
#include <vector>

#include "dfnls/common.hpp"

namespace dfnls::lattice_core {

// Periodic truncation of hZ^2: n sites per axis at x = h*(i - n/2).
struct Grid {
  double h = 1.0;
  int n = 4;

  double L() const { return n * h; }
  std::size_t size() const { return static_cast<std::size_t>(n) * n; }
  double site(int i) const { return h * (i - n / 2); }
  // Dual frequency (2*pi/L)*(k - n/2); |freq| <= pi/h.
  double freq(int k) const { return 2.0 * pi / L() * (k - n / 2); }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * n + j; }
};

Grid make_grid(double h, int n);

struct LatticeField {
  Grid grid;
  std::vector<cplx> values;

  LatticeField() = default;
  explicit LatticeField(const Grid& g) : grid(g), values(g.size()) {}

  cplx& operator()(int i, int j) { return values[grid.index(i, j)]; }
  const cplx& operator()(int i, int j) const { return values[grid.index(i, j)]; }
};

// Coefficients f^(xi_k) in centered frequency order, scaled by h^2.
struct SpectralField {
  Grid grid;
  std::vector<cplx> coeffs;

  SpectralField() = default;
  explicit SpectralField(const Grid& g) : grid(g), coeffs(g.size()) {}

  cplx& operator()(int k, int l) { return coeffs[grid.index(k, l)]; }
  const cplx& operator()(int k, int l) const { return coeffs[grid.index(k, l)]; }
};

bool all_finite(const LatticeField& f);

}  // namespace dfnls::lattice_core
