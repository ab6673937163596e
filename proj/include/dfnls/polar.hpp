#pragma once

// Polar-coordinate stationary phase for the small-N regime: the angular phase
// Phi_G(phi) after z_i = (2/N) sin(N xi_i / 2), its critical points phi_+- and
// their rho-dependence. Verification-only diagnostics.
namespace dfnls::oscillatory::polar {

struct Params {
  double rho = 1.0;
  double theta = 0.5;  // polar angle of x
  double N = 0.125;
};

// (2/(rho N)) (cos theta asin(N rho cos phi / 2) + sin theta asin(N rho sin phi / 2)).
double phi_G(const Params& p, double phi);
double dphi_G(const Params& p, double phi);   // closed form
double d2phi_G(const Params& p, double phi);  // closed form

// g(rho, phi) = sqrt((1 - (N rho sin phi / 2)^2) / (1 - (N rho cos phi / 2)^2)).
double g(const Params& p, double phi);

// d/dphi (g tan phi) at phi = pi/4, closed form 4 - 16 / (8 - N^2 rho^2).
double slope_at_quarter(const Params& p);

// Root phi_+ in [0, pi/2] of g tan phi = tan theta, by bisection; phi_- = phi_+ + pi.
double phi_plus(const Params& p);

// d phi_+ / d rho from implicit differentiation, as printed.
double dphi_plus_drho(const Params& p);

// d/drho (Phi_G(phi_+) rho), closed form.
double drho_phase(const Params& p);

struct Diagnostic {
  double phi_plus = 0.0;
  double phi_minus = 0.0;
  double residual = 0.0;         // |g tan phi_+ - tan theta|
  double gap = 0.0;              // |phi_+ - theta|, at most pi/4
  double curvature_ratio = 0.0;  // |d2 Phi_G(phi_+)| / cos(phi_+ - theta)
};
Diagnostic diagnose(const Params& p);

}  // namespace dfnls::oscillatory::polar
