#pragma once

#include <variant>
#include <vector>

#include "dfnls/dispersion.hpp"
#include "dfnls/fit.hpp"

namespace dfnls::oscillatory {

using dispersion::group_velocity;
using dispersion::Vec2;

// Smooth step S(s) = g(s) / (g(s) + g(1 - s)), g(s) = e^{-1/s} for s > 0.
double smooth_step(double s);

// psi(r) = 1 on |r| <= pi, S((2 pi - |r|)/pi) on pi < |r| < 2 pi, 0 beyond.
double psi(double r);

struct BumpSpec {
  double N = 1.0;
};

// eta(xi) = psi(|xi|) - psi(2|xi|), supported in pi/2 <= |xi| <= 2 pi.
double eta(Vec2 xi);
// eta(xi / N).
double eta(Vec2 xi, const BumpSpec& b);

struct PhaseSpec {
  double alpha = 1.5;
  Vec2 v;
};

// Phi_v(xi) = v.xi - w(xi).
double phase(const PhaseSpec& ph, Vec2 xi);

// eta(./N) restricted to the torus [-pi, pi]^2.
struct DyadicCutoff {
  double N = 1.0;
};

// psi(2 pi rho), rho = |(x / rx, y / ry)| in the frame (k1, k1 rotated by +90 degrees)
// centred at `center`: 1 for rho <= 1/2, 0 for rho >= 1.
struct LocalBump {
  Vec2 center;
  Vec2 k1{1.0, 0.0};
  double rx = 1.0;
  double ry = 1.0;
};

using Cutoff = std::variant<DyadicCutoff, LocalBump>;

double cutoff_value(const Cutoff& c, Vec2 xi);

struct QuadratureOptions {
  double tol = 1e-6;
  int max_points = 8192;  // per axis
  Exec exec = Exec::parallel;
};

struct JResult {
  cplx value;
  double error = 0.0;  // |fine - coarse| where coarse uses every other node
  int nx = 0;
  int ny = 0;
};

// Tau beyond the quadrature budget.
struct ResolutionError : NumericalAbort {
  using NumericalAbort::NumericalAbort;
};

// J(tau) = int e^{i tau Phi_v(xi)} zeta(xi) d xi by tensor trapezoid in the cutoff's frame.
JResult eval_J(const PhaseSpec& ph, const Cutoff& c, double tau,
               const QuadratureOptions& opt = {});

// K_{t,N,h}(x) = (2 pi h)^{-2} J(tau), tau = 2^alpha t / h^alpha, v = x / (h tau).
cplx kernel_K(Vec2 x, double t, double N, double h, double alpha,
              const QuadratureOptions& opt = {});

// max over lattice sites x in hZ^2 of |K_{t,N,h}(x)|, by an M x M FFT of the dual samples.
struct KernelSup {
  double value = 0.0;
  int M = 0;
};
KernelSup kernel_sup(double t, double N, double h, double alpha, int max_M = 4096);

DecayFit fit_decay(const std::vector<std::pair<double, double>>& samples, double lo, double hi);

enum class Band { S1, S2, S3 };
const char* to_string(Band b);

// r_alpha = arccos((2 - alpha)/alpha).
double r_alpha(double alpha);
// Largest dyadic N with 2 pi N < r_alpha.
double N_alpha(double alpha);
Band band_classify(double N, double alpha);

}  // namespace dfnls::oscillatory
