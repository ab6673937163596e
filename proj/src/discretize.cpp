#include "dfnls/discretize.hpp"

#include <gsl/gsl_integration.h>

#include <cmath>
#include <limits>

#include "dfnls/lattice_core.hpp"

namespace dfnls::discretize {

GaussRule gauss_rule(int order) {
  require(order >= 1 && order <= 64, "gauss_rule: order must lie in [1,64]");
  gsl_integration_glfixed_table* t = gsl_integration_glfixed_table_alloc(order);
  GaussRule rule;
  for (int i = 0; i < order; ++i) {
    double x = 0.0, w = 0.0;
    gsl_integration_glfixed_point(0.0, 1.0, i, &x, &w, t);
    rule.nodes.push_back(x);
    rule.weights.push_back(w);
  }
  gsl_integration_glfixed_table_free(t);
  return rule;
}

LatticeField discretize_dh(const ContinuumFunction& u, const Grid& g, int quad_order, Exec exec) {
  require(quad_order >= 2, "discretize_dh: quad_order must be >= 2");
  const GaussRule rule = gauss_rule(quad_order);
  LatticeField out(g);
  const bool par = exec == Exec::parallel;
#pragma omp parallel for if (par) schedule(static)
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j) {
      const double x1 = g.site(i), x2 = g.site(j);
      cplx acc = 0.0;
      for (int a = 0; a < quad_order; ++a) {
        cplx row = 0.0;
        for (int b = 0; b < quad_order; ++b)
          row += rule.weights[b] * u.eval(x1 + g.h * rule.nodes[a], x2 + g.h * rule.nodes[b]);
        acc += rule.weights[a] * row;
      }
      out(i, j) = acc;
    }
  }
  return out;
}

LatticeField sample(const ContinuumFunction& u, const Grid& g, Exec exec) {
  LatticeField out(g);
  const bool par = exec == Exec::parallel;
#pragma omp parallel for if (par) schedule(static)
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) out(i, j) = u.eval(g.site(i), g.site(j));
  return out;
}

PiecewiseLinearInterpolant interpolate_ph(const LatticeField& f) {
  const Grid& g = f.grid;
  PiecewiseLinearInterpolant p{f, std::vector<cplx>(g.size()), std::vector<cplx>(g.size())};
  for (int i = 0; i < g.n; ++i) {
    const int ip = (i + 1) % g.n;
    for (int j = 0; j < g.n; ++j) {
      const int jp = (j + 1) % g.n;
      p.d1[g.index(i, j)] = (f(ip, j) - f(i, j)) / g.h;
      p.d2[g.index(i, j)] = (f(i, jp) - f(i, j)) / g.h;
    }
  }
  return p;
}

cplx PiecewiseLinearInterpolant::operator()(double x1, double x2) const {
  const Grid& g = base.grid;
  const double origin = g.site(0);
  const double u1 = (x1 - origin) / g.h, u2 = (x2 - origin) / g.h;
  const double f1 = std::floor(u1), f2 = std::floor(u2);
  int i = static_cast<int>(f1) % g.n, j = static_cast<int>(f2) % g.n;
  if (i < 0) i += g.n;
  if (j < 0) j += g.n;
  const std::size_t idx = g.index(i, j);
  return base.values[idx] + d1[idx] * ((u1 - f1) * g.h) + d2[idx] * ((u2 - f2) * g.h);
}

CellNodeValues cell_nodes(const ContinuumFunction& u, const Grid& g, int quad_order, Exec exec) {
  CellNodeValues out{g, gauss_rule(quad_order), {}};
  const int q = quad_order;
  out.values.assign(static_cast<std::size_t>(q) * q, std::vector<cplx>(g.size()));
  const bool par = exec == Exec::parallel;
#pragma omp parallel for if (par) schedule(static)
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
          out.values[a * q + b][g.index(i, j)] =
              u.eval(g.site(i) + g.h * out.rule.nodes[a], g.site(j) + g.h * out.rule.nodes[b]);
  return out;
}

double continuum_l2_error(const PiecewiseLinearInterpolant& a, const CellNodeValues& u, Exec exec) {
  const Grid& g = a.base.grid;
  require(g.n == u.grid.n && g.h == u.grid.h, "continuum_l2_error: grid mismatch");
  const int q = static_cast<int>(u.rule.nodes.size());
  std::vector<double> partial(g.n, 0.0);
  const bool par = exec == Exec::parallel;
#pragma omp parallel for if (par) schedule(static)
  for (int i = 0; i < g.n; ++i) {
    double row = 0.0;
    for (int j = 0; j < g.n; ++j) {
      const std::size_t idx = g.index(i, j);
      double cell = 0.0;
      for (int s = 0; s < q; ++s)
        for (int t = 0; t < q; ++t) {
          const cplx lin = a.base.values[idx] + a.d1[idx] * (g.h * u.rule.nodes[s]) +
                           a.d2[idx] * (g.h * u.rule.nodes[t]);
          cell += u.rule.weights[s] * u.rule.weights[t] * std::norm(lin - u.values[s * q + t][idx]);
        }
      row += cell;
    }
    partial[i] = row;
  }
  double total = 0.0;
  for (double v : partial) total += v;
  return std::sqrt(total * g.h * g.h);
}

double continuum_l2_error(const PiecewiseLinearInterpolant& a, const ContinuumFunction& u,
                          int quad_order, Exec exec) {
  return continuum_l2_error(a, cell_nodes(u, a.base.grid, quad_order, exec), exec);
}

double continuum_sobolev_norm(const ContinuumFunction& u, const Grid& fine, double s) {
  return lattice_core::sobolev_norm(sample(u, fine), s);
}

ContinuumFunction gaussian(double amplitude, double width, double k1, double k2, double c1,
                           double c2) {
  ContinuumFunction f;
  f.eval = [=](double x1, double x2) {
    const double y1 = x1 - c1, y2 = x2 - c2;
    const double r2 = (y1 * y1 + y2 * y2) / (width * width);
    return amplitude * std::exp(cplx(-r2, k1 * x1 + k2 * x2));
  };
  f.smoothness = std::numeric_limits<double>::infinity();
  return f;
}

}  // namespace dfnls::discretize
