#include "dfnls/polar.hpp"

#include <cmath>

#include "dfnls/common.hpp"

namespace dfnls::oscillatory::polar {

namespace {

double q(const Params& p, double t) {
  const double u = 0.5 * p.N * p.rho * t;
  return 1.0 - u * u;
}

void check(const Params& p) {
  require(p.rho > 0.0 && p.N > 0.0 && p.N * p.rho < 2.0, "polar: need 0 < N rho < 2");
}

}  // namespace

double phi_G(const Params& p, double phi) {
  check(p);
  const double k = 0.5 * p.N * p.rho;
  return 2.0 / (p.rho * p.N) *
         (std::cos(p.theta) * std::asin(k * std::cos(phi)) +
          std::sin(p.theta) * std::asin(k * std::sin(phi)));
}

double dphi_G(const Params& p, double phi) {
  check(p);
  return -std::cos(p.theta) * std::sin(phi) / std::sqrt(q(p, std::cos(phi))) +
         std::sin(p.theta) * std::cos(phi) / std::sqrt(q(p, std::sin(phi)));
}

double d2phi_G(const Params& p, double phi) {
  check(p);
  const double k = 0.5 * p.N * p.rho;
  return -(1.0 - k * k) * (std::cos(p.theta) * std::cos(phi) / std::pow(q(p, std::cos(phi)), 1.5) +
                           std::sin(p.theta) * std::sin(phi) / std::pow(q(p, std::sin(phi)), 1.5));
}

double g(const Params& p, double phi) {
  check(p);
  return std::sqrt(q(p, std::sin(phi)) / q(p, std::cos(phi)));
}

double slope_at_quarter(const Params& p) {
  check(p);
  const double m = p.N * p.N * p.rho * p.rho;
  return 4.0 - 16.0 / (8.0 - m);
}

double phi_plus(const Params& p) {
  check(p);
  require(p.theta >= 0.0 && p.theta <= 0.5 * pi, "phi_plus: theta must lie in [0, pi/2]");
  if (p.theta == 0.0) return 0.0;
  if (p.theta == 0.5 * pi) return 0.5 * pi;
  const double target = std::tan(p.theta);
  double lo = 0.0, hi = 0.5 * pi;
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (g(p, mid) * std::tan(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double dphi_plus_drho(const Params& p) {
  const double f = phi_plus(p);
  const double k = 0.5 * p.N * p.rho;
  const double m = p.N * p.N * p.rho * p.rho;
  return p.N * p.N * p.rho * std::sin(4.0 * f) / ((1.0 - k * k) * (16.0 - m * (1.0 - std::cos(4.0 * f))));
}

double drho_phase(const Params& p) {
  const double f = phi_plus(p);
  return std::cos(p.theta) * std::cos(f) / std::sqrt(q(p, std::cos(f))) +
         std::sin(p.theta) * std::sin(f) / std::sqrt(q(p, std::sin(f)));
}

Diagnostic diagnose(const Params& p) {
  Diagnostic d;
  d.phi_plus = phi_plus(p);
  d.phi_minus = d.phi_plus + pi;
  d.residual = std::abs(g(p, d.phi_plus) * std::tan(d.phi_plus) - std::tan(p.theta));
  d.gap = std::abs(d.phi_plus - p.theta);
  d.curvature_ratio = std::abs(d2phi_G(p, d.phi_plus)) / std::cos(d.phi_plus - p.theta);
  return d;
}

}  // namespace dfnls::oscillatory::polar
