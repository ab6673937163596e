#include "dfnls/lattice_core.hpp"

#include <algorithm>
#include <cmath>

#include "dfnls/fft.hpp"

namespace dfnls::lattice_core {

namespace {

// (-1)^{i+j} twiddle: moves the centered index origin to FFTW's origin.
void checkerboard(std::vector<cplx>& a, int n, double scale, Exec exec) {
  const bool par = exec == Exec::parallel;
#pragma omp parallel for if (par) schedule(static)
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double s = ((i + j) & 1) ? -scale : scale;
      a[static_cast<std::size_t>(i) * n + j] *= s;
    }
  }
}

double sum_rows(const std::vector<double>& partial) {
  double total = 0.0;
  for (double v : partial) total += v;
  return total;
}

}  // namespace

SpectralField forward_dft(const LatticeField& f, Exec exec) {
  const Grid& g = f.grid;
  SpectralField out(g);
  out.coeffs = f.values;
  checkerboard(out.coeffs, g.n, 1.0, exec);
  fft::transform(out.coeffs, g.n, -1);
  checkerboard(out.coeffs, g.n, g.h * g.h, exec);
  return out;
}

LatticeField inverse_dft(const SpectralField& s, Exec exec) {
  const Grid& g = s.grid;
  LatticeField out(g);
  out.values = s.coeffs;
  checkerboard(out.values, g.n, 1.0, exec);
  fft::transform(out.values, g.n, +1);
  checkerboard(out.values, g.n, 1.0 / (g.L() * g.L()), exec);
  return out;
}

double lp_norm(const LatticeField& f, double p, Exec exec) {
  require(p >= 1.0, "lp_norm: p must be >= 1");
  const Grid& g = f.grid;
  const int n = g.n;
  std::vector<double> partial(n, 0.0);
  const bool par = exec == Exec::parallel;
  const bool inf = std::isinf(p);
#pragma omp parallel for if (par) schedule(static)
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
      const double a = std::abs(f.values[g.index(i, j)]);
      if (inf)
        acc = std::max(acc, a);
      else if (p == 2.0)
        acc += a * a;
      else
        acc += std::pow(a, p);
    }
    partial[i] = acc;
  }
  if (inf) return *std::max_element(partial.begin(), partial.end());
  return std::pow(g.h * g.h * sum_rows(partial), 1.0 / p);
}

double spectral_norm2(const SpectralField& s) {
  const Grid& g = s.grid;
  double acc = 0.0;
  for (const auto& c : s.coeffs) acc += std::norm(c);
  return acc / (g.L() * g.L());
}

double sobolev_norm(const LatticeField& f, double s) {
  SpectralField fh = forward_dft(f);
  const Grid& g = f.grid;
  double acc = 0.0;
  for (int k = 0; k < g.n; ++k) {
    const double x1 = g.freq(k);
    double row = 0.0;
    for (int l = 0; l < g.n; ++l) {
      const double x2 = g.freq(l);
      row += std::pow(1.0 + x1 * x1 + x2 * x2, s) * std::norm(fh(k, l));
    }
    acc += row;
  }
  return std::sqrt(acc / (g.L() * g.L()));
}

void validate(const SymbolSpec& spec, double h) {
  require(spec.alpha > 0.0 && spec.alpha <= 2.0, "symbol: alpha must lie in (0,2]");
  if (spec.kind == SymbolKind::long_range) {
    require(spec.alpha < 2.0, "long-range symbol: alpha must lie in (0,2)");
    require(spec.q >= 1.0, "long-range symbol: q must lie in [1,inf]");
    require(spec.radius >= 8.0 * h, "long-range symbol: truncation radius R must be >= 8h");
  }
}

double long_range_coeff(double alpha) {
  require(alpha > 0.0 && alpha < 2.0, "long_range_coeff: alpha must lie in (0,2)");
  return std::pow(4.0, alpha / 2.0) * std::tgamma((2.0 + alpha) / 2.0) /
         (pi * std::abs(std::tgamma(-alpha / 2.0)));
}

double long_range_tail_bound(const SymbolSpec& spec) {
  return std::pow(spec.radius, -spec.alpha);
}

namespace {

double qnorm(double a, double b, double q) {
  a = std::abs(a);
  b = std::abs(b);
  if (std::isinf(q)) return std::max(a, b);
  if (q == 1.0) return a + b;
  if (q == 2.0) return std::hypot(a, b);
  return std::pow(std::pow(a, q) + std::pow(b, q), 1.0 / q);
}

double long_range_value(const SymbolSpec& spec, double xi1, double xi2, double h) {
  const int m = static_cast<int>(std::floor(spec.radius / h + 1e-12));
  const double expo = 2.0 + spec.alpha;
  double acc = 0.0;
  for (int a = -m; a <= m; ++a) {
    const double z1 = a * h;
    double row = 0.0;
    for (int b = -m; b <= m; ++b) {
      if (a == 0 && b == 0) continue;
      const double z2 = b * h;
      const double r = qnorm(z1, z2, spec.q);
      if (r > spec.radius * (1.0 + 1e-12)) continue;
      const double s = std::sin(0.5 * (xi1 * z1 + xi2 * z2));
      row += 2.0 * s * s / std::pow(r, expo);
    }
    acc += row;
  }
  acc *= h * h;
  if (spec.q == 2.0) acc *= long_range_coeff(spec.alpha);
  return acc;
}

}  // namespace

double symbol_value(const SymbolSpec& spec, double xi1, double xi2, double h) {
  validate(spec, h);
  switch (spec.kind) {
    case SymbolKind::discrete_fractional: {
      const double s1 = std::sin(0.5 * h * xi1);
      const double s2 = std::sin(0.5 * h * xi2);
      const double base = 4.0 / (h * h) * (s1 * s1 + s2 * s2);
      return std::pow(base, spec.alpha / 2.0);
    }
    case SymbolKind::continuum_fractional:
      return std::pow(xi1 * xi1 + xi2 * xi2, spec.alpha / 2.0);
    case SymbolKind::long_range:
      return long_range_value(spec, xi1, xi2, h);
  }
  return 0.0;
}

std::vector<double> symbol_table(const SymbolSpec& spec, const Grid& g, Exec exec) {
  validate(spec, g.h);
  std::vector<double> table(g.size());
  const bool par = exec == Exec::parallel;
#pragma omp parallel for if (par) schedule(dynamic)
  for (int k = 0; k < g.n; ++k)
    for (int l = 0; l < g.n; ++l)
      table[g.index(k, l)] = symbol_value(spec, g.freq(k), g.freq(l), g.h);
  return table;
}

LatticeField apply_table(const std::vector<double>& table, const LatticeField& f, Exec exec) {
  require(table.size() == f.grid.size(), "apply_table: size mismatch");
  SpectralField fh = forward_dft(f, exec);
  const bool par = exec == Exec::parallel;
  const long total = static_cast<long>(table.size());
#pragma omp parallel for if (par) schedule(static)
  for (long idx = 0; idx < total; ++idx) fh.coeffs[idx] *= table[idx];
  return inverse_dft(fh, exec);
}

LatticeField apply_multiplier(const SymbolSpec& spec, const LatticeField& f, Exec exec) {
  return apply_table(symbol_table(spec, f.grid, exec), f, exec);
}

cplx inner(const LatticeField& f, const LatticeField& g) {
  require(f.values.size() == g.values.size(), "inner: size mismatch");
  cplx acc = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) acc += f.values[i] * std::conj(g.values[i]);
  return acc * (f.grid.h * f.grid.h);
}

}  // namespace dfnls::lattice_core
