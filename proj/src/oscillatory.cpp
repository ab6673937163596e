#include "dfnls/oscillatory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dfnls/fft.hpp"

namespace dfnls::oscillatory {

using dispersion::w;

double smooth_step(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  const double g0 = std::exp(-1.0 / s), g1 = std::exp(-1.0 / (1.0 - s));
  return g0 / (g0 + g1);
}

double psi(double r) {
  r = std::abs(r);
  if (r <= pi) return 1.0;
  if (r >= 2.0 * pi) return 0.0;
  return smooth_step((2.0 * pi - r) / pi);
}

double eta(Vec2 xi) {
  const double r = dispersion::norm(xi);
  return psi(r) - psi(2.0 * r);
}

double eta(Vec2 xi, const BumpSpec& b) {
  require(b.N > 0.0, "eta: N must be positive");
  return eta((1.0 / b.N) * xi);
}

double phase(const PhaseSpec& ph, Vec2 xi) { return dispersion::dot(ph.v, xi) - w(xi, ph.alpha); }

namespace {

struct Frame {
  Vec2 origin;
  Vec2 e1{1.0, 0.0};
  Vec2 e2{0.0, 1.0};
  double ax = pi;  // half extents
  double ay = pi;
};

Frame frame_of(const Cutoff& c) {
  Frame f;
  if (const auto* d = std::get_if<DyadicCutoff>(&c)) {
    require(d->N > 0.0 && d->N <= 1.0, "dyadic cutoff: N must lie in (0,1]");
    f.ax = f.ay = std::min(pi, 2.0 * pi * d->N);
  } else {
    const auto& b = std::get<LocalBump>(c);
    require(b.rx > 0.0 && b.ry > 0.0, "local bump: radii must be positive");
    f.origin = b.center;
    f.e1 = (1.0 / dispersion::norm(b.k1)) * b.k1;
    f.e2 = {-f.e1.y, f.e1.x};
    f.ax = b.rx;
    f.ay = b.ry;
  }
  return f;
}

// Cutoff value in frame coordinates; avoids recomputing the rotation.
double frame_cutoff(const Cutoff& c, const Frame& f, double x, double y) {
  if (const auto* d = std::get_if<DyadicCutoff>(&c)) {
    return eta(Vec2{f.origin.x + x, f.origin.y + y}, BumpSpec{d->N});
  }
  const auto& b = std::get<LocalBump>(c);
  const double rho = std::hypot(x / b.rx, y / b.ry);
  return psi(2.0 * pi * rho);
}

struct Sums {
  cplx fine;
  cplx coarse;
};

Sums trapezoid(const PhaseSpec& ph, const Cutoff& c, const Frame& f, double tau, int mx, int my,
               Exec exec) {
  const double hx = 2.0 * f.ax / mx, hy = 2.0 * f.ay / my;
  std::vector<cplx> row_fine(mx + 1), row_coarse(mx + 1);
  const bool par = exec == Exec::parallel;
#pragma omp parallel for if (par) schedule(static)
  for (int i = 0; i <= mx; ++i) {
    const double x = -f.ax + i * hx;
    const double wx = (i == 0 || i == mx) ? 0.5 : 1.0;
    cplx acc_f = 0.0, acc_c = 0.0;
    for (int j = 0; j <= my; ++j) {
      const double y = -f.ay + j * hy;
      const double z = frame_cutoff(c, f, x, y);
      if (z == 0.0) continue;
      const Vec2 xi = f.origin + x * f.e1 + y * f.e2;
      const double arg = tau * phase(ph, xi);
      const cplx val = z * cplx(std::cos(arg), std::sin(arg));
      const double wy = (j == 0 || j == my) ? 0.5 : 1.0;
      acc_f += wy * val;
      if ((j & 1) == 0) acc_c += wy * val;
    }
    row_fine[i] = wx * acc_f;
    row_coarse[i] = (i & 1) == 0 ? wx * acc_c : 0.0;
  }
  Sums s;
  for (int i = 0; i <= mx; ++i) {
    s.fine += row_fine[i];
    s.coarse += row_coarse[i];
  }
  s.fine *= hx * hy;
  s.coarse *= 4.0 * hx * hy;
  return s;
}

// Largest |e . grad Phi| over a coarse sample of the box, per frame axis.
std::pair<double, double> max_slopes(const PhaseSpec& ph, const Cutoff& c, const Frame& f) {
  double gx = 0.0, gy = 0.0;
  const int m = 64;
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= m; ++j) {
      const double x = -f.ax + 2.0 * f.ax * i / m, y = -f.ay + 2.0 * f.ay * j / m;
      if (frame_cutoff(c, f, x, y) == 0.0) continue;
      const Vec2 xi = f.origin + x * f.e1 + y * f.e2;
      const Vec2 g = ph.v - group_velocity(xi, ph.alpha);
      gx = std::max(gx, std::abs(dispersion::dot(g, f.e1)));
      gy = std::max(gy, std::abs(dispersion::dot(g, f.e2)));
    }
  return {gx, gy};
}

int intervals(double extent, double tau, double slope) {
  double step = extent / 64.0;
  if (tau * slope > 0.0) step = std::min(step, 2.0 * pi / (10.0 * tau * slope));
  int m = static_cast<int>(std::ceil(extent / step - 1e-9));
  m = std::max(m, 64);
  return m + (m & 1);
}

}  // namespace

double cutoff_value(const Cutoff& c, Vec2 xi) {
  const Frame f = frame_of(c);
  const Vec2 d = xi - f.origin;
  const double x = dispersion::dot(d, f.e1), y = dispersion::dot(d, f.e2);
  if (std::abs(x) > f.ax || std::abs(y) > f.ay) return 0.0;
  return frame_cutoff(c, f, x, y);
}

JResult eval_J(const PhaseSpec& ph, const Cutoff& c, double tau, const QuadratureOptions& opt) {
  require(ph.alpha > 0.0 && ph.alpha <= 2.0, "eval_J: alpha must lie in (0,2]");
  require(opt.tol > 0.0, "eval_J: tol must be positive");
  const Frame f = frame_of(c);
  const auto [gx, gy] = max_slopes(ph, c, f);
  const double at = std::abs(tau);
  int mx = intervals(2.0 * f.ax, at, gx), my = intervals(2.0 * f.ay, at, gy);
  while (true) {
    if (mx > opt.max_points || my > opt.max_points)
      throw ResolutionError("eval_J: tau = " + std::to_string(tau) + " needs a " +
                            std::to_string(mx) + " x " + std::to_string(my) +
                            " grid, beyond the budget of " + std::to_string(opt.max_points) +
                            " points per axis");
    const Sums s = trapezoid(ph, c, f, tau, mx, my, opt.exec);
    const double err = std::abs(s.fine - s.coarse);
    if (err <= opt.tol) return {s.fine, err, mx, my};
    mx *= 2;
    my *= 2;
  }
}

cplx kernel_K(Vec2 x, double t, double N, double h, double alpha, const QuadratureOptions& opt) {
  require(h > 0.0, "kernel_K: h must be positive");
  const double tau = std::pow(2.0, alpha) * t / std::pow(h, alpha);
  PhaseSpec ph{alpha, {0.0, 0.0}};
  if (tau != 0.0) ph.v = (1.0 / (h * tau)) * x;
  const JResult j = eval_J(ph, DyadicCutoff{N}, tau, opt);
  return j.value / std::pow(2.0 * pi * h, 2);
}

KernelSup kernel_sup(double t, double N, double h, double alpha, int max_M) {
  require(h > 0.0 && N > 0.0 && N <= 1.0, "kernel_sup: bad arguments");
  const double tau = std::pow(2.0, alpha) * t / std::pow(h, alpha);
  double G = 0.0;
  for (int i = 0; i <= 128; ++i)
    for (int j = 0; j <= 128; ++j) {
      const Vec2 xi{-pi + 2.0 * pi * i / 128, -pi + 2.0 * pi * j / 128};
      G = std::max(G, dispersion::norm(group_velocity(xi, alpha)));
    }
  int M = 256;
  while (M < 4.0 * std::abs(tau) * G + 64.0) M *= 2;
  if (M > max_M)
    throw ResolutionError("kernel_sup: needs an FFT of size " + std::to_string(M) +
                          ", beyond the budget " + std::to_string(max_M));
  std::vector<cplx> g(static_cast<std::size_t>(M) * M);
  for (int k = 0; k < M; ++k)
    for (int l = 0; l < M; ++l) {
      const Vec2 xi{2.0 * pi * (k - M / 2) / M, 2.0 * pi * (l - M / 2) / M};
      const double z = eta(xi, BumpSpec{N});
      const double s = ((k + l) & 1) ? -z : z;
      g[static_cast<std::size_t>(k) * M + l] = s == 0.0 ? cplx(0.0) : s * std::polar(1.0, -tau * w(xi, alpha));
    }
  fft::transform(g, M, +1);
  double best = 0.0;
  for (const auto& v : g) best = std::max(best, std::abs(v));
  const double scale = std::pow(2.0 * pi / M, 2) / std::pow(2.0 * pi * h, 2);
  return {best * scale, M};
}

DecayFit fit_decay(const std::vector<std::pair<double, double>>& samples, double lo, double hi) {
  return fit_power_law(samples, lo, hi, 6, 1.0);
}

const char* to_string(Band b) {
  switch (b) {
    case Band::S1: return "S1";
    case Band::S2: return "S2";
    case Band::S3: return "S3";
  }
  return "?";
}

double r_alpha(double alpha) {
  require(alpha > 1.0 && alpha <= 2.0, "r_alpha: alpha must lie in (1,2]");
  return std::acos((2.0 - alpha) / alpha);
}

double N_alpha(double alpha) {
  const double r = r_alpha(alpha);
  double N = 1.0;
  while (!(2.0 * pi * N < r)) N *= 0.5;
  return N;
}

Band band_classify(double N, double alpha) {
  require(N > 0.0 && N <= 1.0, "band_classify: N must lie in (0,1]");
  int e = 0;
  require(std::frexp(N, &e) == 0.5, "band_classify: N must be dyadic");
  if (N == 1.0 || N == 0.5) return Band::S3;
  const double r = r_alpha(alpha);
  if (N >= r / (2.0 * pi) && N <= 2.0 * std::sqrt(2.0) / pi * r) return Band::S2;
  return Band::S1;
}

}  // namespace dfnls::oscillatory
