#pragma once

#include <vector>

#include "dfnls/manifold.hpp"
#include "dfnls/oscillatory.hpp"

// Drivers that combine the manifold and oscillatory modules: critical-point search,
// isolating bumps, asymptotic verification and constant scans.
namespace dfnls::studies {

using dispersion::Vec2;
using manifold::CriticalPoint;
using oscillatory::Band;
using oscillatory::LocalBump;
using oscillatory::QuadratureOptions;

// All real solutions of grad w(xi) = v on the torus (Newton from a seed lattice), xi != 0.
std::vector<Vec2> critical_points(Vec2 v, double alpha, int seeds = 32);

// Elliptic bump in the principal frame of p, radii (s, 2s) with s = min(0.85, 0.9 rho_min),
// rho = |(d.k1, d.k2 / 2)| over other critical points of Phi_{v_xi} and the origin.
struct IsolatedBump {
  LocalBump bump;
  double s = 0.0;
  double nearest = 0.0;  // Euclidean distance to the nearest obstacle
  std::vector<Vec2> obstacles;
};
IsolatedBump isolating_bump(const CriticalPoint& p);

// Representative critical points used per band.
Vec2 cusp_xi();
Vec2 fold_xi_am(double alpha);  // a = a_m = sqrt((2-alpha)/alpha) on Gamma^2
// Nondegenerate point (2.5, 2.9): off the symmetry lines, isolating radius at the 0.85 cap.
Vec2 k1_xi();
Vec2 representative_xi(Band band, double alpha);
double representative_N(Band band, double alpha);

struct AsymptoticsRow {
  double tau = 0.0;
  cplx J;
  double scaled = 0.0;  // |J| tau^{sigma0}
  double ratio = 0.0;   // scaled / |d0|
  double quad_error = 0.0;
};

struct AsymptoticsReport {
  CriticalPoint point;
  IsolatedBump bump;
  double zeta = 1.0;
  std::vector<AsymptoticsRow> rows;
  DecayFit fit;
  double last_ratio = 0.0;
  std::vector<double> cauchy;  // successive differences of the scaled sequence
  double geometric_mean = 0.0;  // of the scaled sequence
};

// |J(tau)| tau^{sigma0} at v = grad w(xi) with the isolating bump; fit over every tau given.
AsymptoticsReport verify_asymptotics(const CriticalPoint& p, const std::vector<double>& taus,
                                     const QuadratureOptions& opt = {});

struct ScanOptions {
  double tau_lo = 50.0;
  double tau_hi = 800.0;
  int samples = 9;
  // Stretch the window by q(alpha_ref) / q(alpha), q = |c20| d^2, d the distance to the
  // nearest obstacle: keeps tau on the same side of the crossover to the neighbour.
  bool scale_window = false;
  double alpha_ref = 1.5;
  QuadratureOptions quad;
};

struct ScanRow {
  double alpha = 0.0;
  double N = 0.0;
  Band band = Band::S1;
  CriticalPoint point;
  double window_scale = 1.0;
  AsymptoticsReport report;
};

std::vector<ScanRow> constant_scan(const std::vector<double>& alphas, Band band,
                                   const ScanOptions& opt = {});

// Coarse 16 x 16 sweep of v around v0 at one tau: largest |J| and where.
struct SweepResult {
  Vec2 v_best;
  double J_best = 0.0;
  double J_at_v0 = 0.0;
};
SweepResult velocity_sweep(double alpha, const oscillatory::Cutoff& c, Vec2 v0, double radius,
                           double tau, const QuadratureOptions& opt = {});

}  // namespace dfnls::studies
