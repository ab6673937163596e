#include "dfnls/studies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dfnls::studies {

using namespace dispersion;

std::vector<Vec2> critical_points(Vec2 v, double alpha, int seeds) {
  std::vector<Vec2> found;
  for (int i = 0; i < seeds; ++i)
    for (int j = 0; j < seeds; ++j) {
      Vec2 xi{-pi + 2.0 * pi * (i + 0.5) / seeds, -pi + 2.0 * pi * (j + 0.5) / seeds};
      bool ok = false;
      for (int it = 0; it < 80; ++it) {
        if (base(xi) < 1e-12) break;
        const Vec2 r = group_velocity(xi, alpha) - v;
        if (norm(r) < 1e-13) {
          ok = true;
          break;
        }
        const Mat2 H = hessian_w(xi, alpha);
        const double det = H.det();
        if (std::abs(det) < 1e-300) break;
        Vec2 step{(H.yy * r.x - H.xy * r.y) / det, (-H.xy * r.x + H.xx * r.y) / det};
        const double len = norm(step);
        if (len > 0.5) step = (0.5 / len) * step;
        xi = wrap(xi - step);
      }
      if (!ok) continue;
      if (norm(group_velocity(xi, alpha) - v) > 1e-10) continue;
      bool dup = false;
      for (const auto& q : found)
        if (norm(wrap(q - xi)) < 1e-6) dup = true;
      if (!dup) found.push_back(xi);
    }
  std::sort(found.begin(), found.end(),
            [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  return found;
}

IsolatedBump isolating_bump(const CriticalPoint& p) {
  IsolatedBump out;
  const Vec2 v = group_velocity(p.xi, p.alpha);
  for (const auto& q : critical_points(v, p.alpha))
    if (norm(wrap(q - p.xi)) > 0.05) out.obstacles.push_back(q);
  out.obstacles.push_back({0.0, 0.0});
  double rho_min = std::numeric_limits<double>::infinity();
  out.nearest = std::numeric_limits<double>::infinity();
  for (const auto& o : out.obstacles) {
    const Vec2 d = wrap(o - p.xi);
    rho_min = std::min(rho_min, std::hypot(dot(d, p.k1), 0.5 * dot(d, p.k2)));
    out.nearest = std::min(out.nearest, norm(d));
  }
  out.s = std::min(0.85, 0.9 * rho_min);
  out.bump = LocalBump{p.xi, p.k1, out.s, 2.0 * out.s};
  return out;
}

Vec2 cusp_xi() { return {0.5 * pi, 0.5 * pi}; }

Vec2 fold_xi_am(double alpha) {
  const double am = std::sqrt((2.0 - alpha) / alpha);
  return manifold::xi_from_ab(am, manifold::curve_B(am, alpha));
}

Vec2 k1_xi() { return {2.5, 2.9}; }

Vec2 representative_xi(Band band, double alpha) {
  switch (band) {
    case Band::S3: return cusp_xi();
    case Band::S2: return fold_xi_am(alpha);
    case Band::S1: return k1_xi();
  }
  return k1_xi();
}

double representative_N(Band band, double alpha) {
  if (band == Band::S3) return 0.5;
  if (band == Band::S1) return oscillatory::N_alpha(alpha);
  for (double N = 0.25; N > 1e-6; N *= 0.5)
    if (oscillatory::band_classify(N, alpha) == Band::S2) return N;
  return 0.25;
}

AsymptoticsReport verify_asymptotics(const CriticalPoint& p, const std::vector<double>& taus,
                                     const QuadratureOptions& opt) {
  require(taus.size() >= 2, "verify_asymptotics: need at least two tau values");
  AsymptoticsReport rep;
  rep.point = p;
  rep.bump = isolating_bump(p);
  rep.zeta = oscillatory::cutoff_value(rep.bump.bump, p.xi);
  const cplx d0 = manifold::leading_d0(p, rep.zeta);
  const oscillatory::PhaseSpec ph{p.alpha, group_velocity(p.xi, p.alpha)};
  std::vector<std::pair<double, double>> samples;
  double logsum = 0.0;
  for (double tau : taus) {
    const auto j = oscillatory::eval_J(ph, rep.bump.bump, tau, opt);
    AsymptoticsRow row;
    row.tau = tau;
    row.J = j.value;
    row.quad_error = j.error;
    row.scaled = std::abs(j.value) * std::pow(tau, p.sigma0);
    row.ratio = row.scaled / std::abs(d0);
    if (!rep.rows.empty()) rep.cauchy.push_back(row.scaled - rep.rows.back().scaled);
    rep.rows.push_back(row);
    samples.emplace_back(tau, std::abs(j.value));
    logsum += std::log(row.scaled);
  }
  rep.geometric_mean = std::exp(logsum / taus.size());
  rep.last_ratio = rep.rows.back().ratio;
  const double lo = *std::min_element(taus.begin(), taus.end());
  const double hi = *std::max_element(taus.begin(), taus.end());
  rep.fit = fit_power_law(samples, lo, hi, std::min<int>(6, taus.size()), 0.0);
  return rep;
}

namespace {

double window_q(double alpha, Band band) {
  const CriticalPoint p = manifold::analyze(representative_xi(band, alpha), alpha);
  const IsolatedBump b = isolating_bump(p);
  return std::abs(p.nf.c20) * b.nearest * b.nearest;
}

}  // namespace

std::vector<ScanRow> constant_scan(const std::vector<double>& alphas, Band band,
                                   const ScanOptions& opt) {
  require(opt.tau_lo > 0.0 && opt.tau_hi > opt.tau_lo && opt.samples >= 2,
          "constant_scan: bad tau window");
  const double q_ref = opt.scale_window ? window_q(opt.alpha_ref, band) : 1.0;
  std::vector<ScanRow> rows;
  for (double alpha : alphas) {
    ScanRow row;
    row.alpha = alpha;
    row.band = band;
    row.N = representative_N(band, alpha);
    row.point = manifold::analyze(representative_xi(band, alpha), alpha);
    if (opt.scale_window) row.window_scale = q_ref / window_q(alpha, band);
    const auto taus = log_spaced(opt.tau_lo * row.window_scale, opt.tau_hi * row.window_scale,
                                 opt.samples);
    row.report = verify_asymptotics(row.point, taus, opt.quad);
    rows.push_back(std::move(row));
  }
  return rows;
}

SweepResult velocity_sweep(double alpha, const oscillatory::Cutoff& c, Vec2 v0, double radius,
                           double tau, const QuadratureOptions& opt) {
  SweepResult out;
  out.v_best = v0;
  const oscillatory::PhaseSpec ph0{alpha, v0};
  out.J_at_v0 = std::abs(oscillatory::eval_J(ph0, c, tau, opt).value);
  out.J_best = out.J_at_v0;
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) {
      const Vec2 v{v0.x + radius * (-1.0 + 2.0 * i / 15.0), v0.y + radius * (-1.0 + 2.0 * j / 15.0)};
      const double m = std::abs(oscillatory::eval_J({alpha, v}, c, tau, opt).value);
      if (m > out.J_best) {
        out.J_best = m;
        out.v_best = v;
      }
    }
  return out;
}

}  // namespace dfnls::studies
