#pragma once

#include <limits>
#include <vector>

#include "dfnls/grid.hpp"

namespace dfnls::lattice_core {

// f^(xi) = h^2 sum_x f(x) e^{-i x.xi}, evaluated on the dual grid.
SpectralField forward_dft(const LatticeField& f, Exec exec = Exec::parallel);

// f(x) = (2 pi)^{-2} (2 pi / L)^2 sum_xi f^(xi) e^{i x.xi}.
LatticeField inverse_dft(const SpectralField& g, Exec exec = Exec::parallel);

// h^{2/p} (sum |f|^p)^{1/p}; p = infinity gives max |f|.
double lp_norm(const LatticeField& f, double p, Exec exec = Exec::parallel);

// L^2_h norm of <grad>^s f with <xi> = (1 + |xi|^2)^{1/2}, computed spectrally.
double sobolev_norm(const LatticeField& f, double s);

// Parseval weight (2 pi)^{-2} (2 pi / L)^2 sum |g|^2, the squared L^2_h norm.
double spectral_norm2(const SpectralField& g);

enum class SymbolKind { discrete_fractional, continuum_fractional, long_range };

struct SymbolSpec {
  SymbolKind kind = SymbolKind::discrete_fractional;
  double alpha = 1.5;
  // Long-range only: |z|_q with q in [1, inf], truncation radius R >= 8h.
  double q = 2.0;
  double radius = 0.0;
};

inline constexpr double q_infinity = std::numeric_limits<double>::infinity();

void validate(const SymbolSpec& spec, double h);

// c_{2,alpha} = 4^{alpha/2} Gamma((2+alpha)/2) / (pi |Gamma(-alpha/2)|).
double long_range_coeff(double alpha);

// Tail of the truncated long-range sum, reported as R^{-alpha}.
double long_range_tail_bound(const SymbolSpec& spec);

double symbol_value(const SymbolSpec& spec, double xi1, double xi2, double h);

// Symbol tabulated on the dual grid (centered order).
std::vector<double> symbol_table(const SymbolSpec& spec, const Grid& g,
                                 Exec exec = Exec::parallel);

LatticeField apply_multiplier(const SymbolSpec& spec, const LatticeField& f,
                              Exec exec = Exec::parallel);
LatticeField apply_table(const std::vector<double>& table, const LatticeField& f,
                         Exec exec = Exec::parallel);

// <f, g>_{L^2_h} = h^2 sum f conj(g).
cplx inner(const LatticeField& f, const LatticeField& g);

}  // namespace dfnls::lattice_core
