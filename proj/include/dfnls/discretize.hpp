#pragma once

#include <functional>
#include <vector>

#include "dfnls/grid.hpp"

namespace dfnls::discretize {

using lattice_core::Grid;
using lattice_core::LatticeField;

struct ContinuumFunction {
  std::function<cplx(double, double)> eval;
  double smoothness = 0.0;  // claimed Sobolev index, reporting only
};

// Gauss-Legendre rule on [0, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_rule(int order);

// d_h u(x) = h^{-2} int_{x + [0,h)^2} u, by tensor Gauss quadrature per cell.
LatticeField discretize_dh(const ContinuumFunction& u, const Grid& g, int quad_order,
                           Exec exec = Exec::parallel);

// Point samples u(x) at the lattice sites.
LatticeField sample(const ContinuumFunction& u, const Grid& g, Exec exec = Exec::parallel);

// p_h f(x) = f(x') + D+_h f(x').(x - x') on x' + [0,h)^2, periodic forward differences.
struct PiecewiseLinearInterpolant {
  LatticeField base;
  std::vector<cplx> d1;
  std::vector<cplx> d2;

  cplx operator()(double x1, double x2) const;
};

PiecewiseLinearInterpolant interpolate_ph(const LatticeField& f);

// Values of a continuum function at the tensor Gauss nodes of every lattice cell:
// values[a * order + b][cell] at x' + h (node_a, node_b).
struct CellNodeValues {
  Grid grid;
  GaussRule rule;
  std::vector<std::vector<cplx>> values;
};

CellNodeValues cell_nodes(const ContinuumFunction& u, const Grid& g, int quad_order,
                          Exec exec = Exec::parallel);

// ||a - u||_{L^2(box)} with per-cell tensor Gauss quadrature.
double continuum_l2_error(const PiecewiseLinearInterpolant& a, const ContinuumFunction& u,
                          int quad_order, Exec exec = Exec::parallel);
double continuum_l2_error(const PiecewiseLinearInterpolant& a, const CellNodeValues& u,
                          Exec exec = Exec::parallel);

// ||u||_{H^s(R^2)} approximated spectrally on a fine periodic sampling grid.
double continuum_sobolev_norm(const ContinuumFunction& u, const Grid& fine, double s);

// Standard complex Gaussian A e^{-|x - c|^2 / width^2 + i x.k}.
ContinuumFunction gaussian(double amplitude, double width, double k1 = 0.0, double k2 = 0.0,
                           double c1 = 0.0, double c2 = 0.0);

}  // namespace dfnls::discretize
