// Acceptance suite: one PASS/FAIL line per criterion, diagnostics indented below it.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dfnls/dynamics.hpp"
#include "dfnls/manifold.hpp"
#include "dfnls/studies.hpp"
#include "oracles.hpp"

using namespace dfnls;
using dispersion::Vec2;
using oscillatory::Band;

namespace {

struct Outcome {
  bool pass = false;
  std::string summary;
  std::vector<std::string> notes;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

template <class... T>
std::string fmtn(const char* f, T... a) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a...);
  return buf;
}

double rel_max(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double d = 0.0, r = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = std::max(d, std::abs(a[i] - b[i]));
    r = std::max(r, std::abs(b[i]));
  }
  return d / r;
}

const std::vector<double> window = log_spaced(50.0, 800.0, 9);

Outcome decay_at(Vec2 xi, double expect, double alpha = 1.5) {
  const auto p = manifold::analyze(xi, alpha);
  const auto rep = studies::verify_asymptotics(p, window);
  Outcome o;
  o.pass = std::abs(rep.fit.sigma() - expect) <= 0.05;
  o.summary = fmtn("exponent %.4f (target %.4f +- 0.05)", -rep.fit.sigma(), -expect);
  o.notes.push_back(fmtn("class %s, point (%.6f, %.6f), bump radii (%.4f, %.4f)",
                         manifold::to_string(p.cls).c_str(), xi.x, xi.y, rep.bump.bump.rx, rep.bump.bump.ry));
  o.notes.push_back(fmtn("fit residual %.3e, |J| tau^sigma0 / |d0| at tau = 800: %.4f",
                         rep.fit.residual, rep.last_ratio));
  return o;
}

Outcome ac1() { return decay_at(studies::cusp_xi(), 0.75); }

Outcome ac2() {
  const double alpha = 1.5;
  Outcome o = decay_at(studies::fold_xi_am(alpha), 5.0 / 6.0);
  // Same point further out: the leading coefficient is reached, the free fit over [50, 800] is
  // biased by the slowly decaying corrections.
  const auto p = manifold::analyze(studies::fold_xi_am(alpha), alpha);
  const auto far = studies::verify_asymptotics(p, {800.0, 1600.0, 3200.0});
  std::vector<double> x, y;
  for (const auto& r : far.rows) {
    x.push_back(1.0 / r.tau);
    y.push_back(r.scaled);
  }
  o.notes.push_back(fmtn("ratio to |d0| at tau = 800, 1600, 3200: %.5f %.5f %.5f; 1/tau extrapolation / |d0| = %.5f",
                         far.rows[0].ratio, far.rows[1].ratio, far.rows[2].ratio,
                         fit_line(x, y).intercept / std::abs(p.d0)));
  return o;
}

Outcome ac3() {
  const auto p = manifold::analyze(studies::k1_xi(), 1.5);
  const auto rep = studies::verify_asymptotics(p, window);
  Outcome o;
  const bool rate = std::abs(rep.fit.sigma() - 1.0) <= 0.05;
  const bool amp = std::abs(rep.last_ratio - 1.0) <= 0.10;
  o.pass = rate && amp;
  o.summary = fmtn("exponent %.4f (target -1 +- 0.05), |J| tau / |a0| at tau = 800 = %.4f (within 10%%)",
                   -rep.fit.sigma(), rep.last_ratio);
  o.notes.push_back(fmtn("|a0| = 2 pi / sqrt|det D2w| = %.6f; the printed sqrt(2 pi / |det|) = %.6f would give ratio %.4f",
                         std::abs(p.d0), std::sqrt(2 * pi / std::abs(p.hessian.det())),
                         rep.rows.back().scaled / std::sqrt(2 * pi / std::abs(p.hessian.det()))));
  return o;
}

Outcome ac4() {
  const std::vector<double> alphas{1.5, 1.6, 1.7, 1.8, 1.9};
  studies::ScanOptions opt;
  opt.scale_window = true;
  const auto rows = studies::constant_scan(alphas, Band::S3, opt);
  std::vector<double> x, y, yc, yd;
  Outcome o;
  for (const auto& r : rows) {
    const double C = r.report.geometric_mean;
    x.push_back(std::log(2 - r.alpha));
    y.push_back(std::log(C));
    yc.push_back(std::log(C * std::pow(r.alpha, 0.75)));
    yd.push_back(std::log(std::abs(r.point.d0)));
    o.notes.push_back(fmtn("alpha %.2f: C = %.5f, |d0| = %.5f, sigma fit %.4f, window x%.3f", r.alpha, C,
                           std::abs(r.point.d0), r.report.fit.sigma(), r.window_scale));
  }
  const double slope = fit_line(x, y).slope;
  o.pass = std::abs(slope + 0.25) <= 0.10;
  o.summary = fmtn("slope of log C vs log(2 - alpha) = %.4f (target -0.25 +- 0.10)", slope);
  o.notes.push_back(fmtn("closed-form |d0| gives slope %.4f; C alpha^{3/4} gives slope %.4f",
                         fit_line(x, yd).slope, fit_line(x, yc).slope));
  return o;
}

Outcome ac5() {
  std::vector<double> x, y;
  Outcome o;
  for (double a : {1.05, 1.1, 1.15, 1.2}) {
    const auto pp = manifold::fold_proxy(a);
    x.push_back((2.0 / 3 - 5 * a / 12) * std::log(a - 1));
    y.push_back(std::log(pp.d0));
    o.notes.push_back(fmtn("alpha %.2f: proxy |d0| = %.5f at (a, b) = (%.5f, %.5f)", a, pp.d0, pp.a, pp.b));
  }
  const double slope = fit_line(x, y).slope;
  o.pass = std::abs(slope - 1.0) <= 0.15;
  o.summary = fmtn("measured-vs-predicted log-log slope %.4f (target 1 +- 0.15)", slope);
  return o;
}

Outcome ac6() {
  dynamics::SimConfig c;
  c.alpha = 1.5;
  c.p = 3;
  c.mu = 1;
  c.h = 0.125;
  c.n = 128;
  c.T = 0.5;
  c.dt = 1e-3;
  c.initial = discretize::gaussian(1.0, 1.0);
  dynamics::LimitOptions opt;
  opt.refinement = 4;
  const auto s = dynamics::continuum_limit_study(c, {0.125, 0.0625, 0.03125, 0.015625}, opt);
  Outcome o;
  const double order = s.fit.slope;
  o.pass = s.monotone && order >= 0.40;
  o.summary = fmtn("errors %s decreasing, fitted order %.4f (need >= 0.40; rate alpha/(2+alpha) = %.4f)",
                   s.monotone ? "strictly" : "NOT strictly", order, 1.5 / 3.5);
  for (const auto& r : s.rows)
    o.notes.push_back(fmtn("h = %.6f: error %.6e, mass drift %.2e, boundary fraction %.2e", r.h, r.error,
                           r.mass_drift, r.boundary_fraction));
  o.notes.push_back(fmtn("reference h = %.6f, box 16, dt = 1e-3", s.reference_h));
  return o;
}

Outcome ac7() {
  dynamics::SimConfig c;
  c.h = 0.25;
  c.n = 64;
  c.initial = discretize::gaussian(1.0, 1.0, 0.5, -0.25);
  c.dt = 1e-3;
  c.T = 1.0;
  c.stride = 100;
  const auto r = dynamics::simulate(c);
  auto drift = [](const dynamics::SimResult& s) {
    double d = 0.0;
    for (double e : s.obs.energy) d = std::max(d, std::abs(e - s.obs.energy.front()));
    return d;
  };
  c.T = 0.5;
  c.stride = 1;
  c.dt = 0.01;
  const double d1 = drift(dynamics::simulate(c));
  c.dt = 0.005;
  const double d2 = drift(dynamics::simulate(c));
  Outcome o;
  o.pass = r.monitors.steps == 1000 && r.monitors.max_mass_drift <= 1e-8 && d1 / d2 >= 3 && d1 / d2 <= 5;
  o.summary = fmtn("mass drift %.3e over %d steps (<= 1e-8), energy drift ratio %.4f (in [3, 5])",
                   r.monitors.max_mass_drift, r.monitors.steps, d1 / d2);
  return o;
}

Outcome ac8() {
  using namespace lattice_core;
  const Grid g = make_grid(0.25, 16);
  const auto f = oracle::random_field(g, 17);
  const double e_lr = rel_max(apply_multiplier({SymbolKind::long_range, 1.5, 2.0, 2.0}, f).values,
                              oracle::long_range_direct(f, 1.5, 2.0, long_range_coeff(1.5)).values);
  const double e_dft = rel_max(forward_dft(f).coeffs, oracle::direct_dft(f).coeffs);
  const double e_st = rel_max(apply_multiplier({SymbolKind::discrete_fractional, 2.0}, f).values,
                              oracle::five_point(f).values);
  Outcome o;
  o.pass = e_lr <= 1e-6 && e_dft <= 1e-12 && e_st <= 1e-10;
  o.summary = fmtn("lattice sum %.2e (<= 1e-6), direct DFT %.2e (<= 1e-12), 5-point stencil %.2e (<= 1e-10)",
                   e_lr, e_dft, e_st);
  return o;
}

Outcome ac9() {
  double e_b = 0.0, e_res = 0.0, e_hess = 0.0, e_k3 = 0.0, min_fold = 1e300;
  for (int k = 1; k <= 100; ++k) {
    const double a = 1.0 + k / 101.0;
    e_b = std::max(e_b, std::abs(manifold::curve_B(1.0, a) - (2 - a) / a));
  }
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-pi, pi);
  for (double a : {1.2, 1.5, 1.8}) {
    for (auto br : {manifold::Branch::gamma1, manifold::Branch::gamma2})
      for (const auto& s : manifold::sample_curve(a, br, 64)) e_res = std::max(e_res, s.residual);
    for (const auto& s : manifold::sample_curve(a, manifold::Branch::gamma2, 20))
      min_fold = std::min(min_fold, std::abs(manifold::d3_formula(manifold::xi_from_ab(s.a, s.b), a)));
    for (Vec2 c : {Vec2{pi / 2, pi / 2}, Vec2{-pi / 2, pi / 2}})
      e_k3 = std::max(e_k3, std::abs(manifold::d3_fd(c, a)));
    for (int k = 0; k < 50; ++k) {
      const Vec2 xi{u(rng), u(rng)};
      if (dispersion::norm(xi) < 0.5) continue;
      const auto H = dispersion::hessian_w(xi, a);
      e_hess = std::max({e_hess, std::abs(H.xx - oracle::w_fd_d2(xi, a, 0, 0)),
                         std::abs(H.xy - oracle::w_fd_d2(xi, a, 0, 1)),
                         std::abs(H.yy - oracle::w_fd_d2(xi, a, 1, 1))});
    }
  }
  Outcome o;
  o.pass = e_b <= 1e-12 && e_res <= 1e-10 && e_hess <= 1e-7 && e_k3 <= 1e-6 && min_fold >= 1e-3;
  o.summary = fmtn("B(1) %.1e, residual %.1e, Hessian %.1e, d3 at K3 %.1e, min |d3| on folds %.3e",
                   e_b, e_res, e_hess, e_k3, min_fold);
  return o;
}

Outcome ac10() {
  using namespace oscillatory;
  bool ok = N_alpha(2.0) == 0.125 && band_classify(1.0, 1.5) == Band::S3 &&
            band_classify(0.5, 1.5) == Band::S3 && band_classify(0.25, 1.5) != Band::S3;
  int checked = 0;
  for (double a : {1.2, 1.5, 1.8}) {
    const double r = r_alpha(a), Na = N_alpha(a);
    ok = ok && 2 * pi * Na < r && 4 * pi * Na >= r;
    for (double N = 1.0; N >= std::ldexp(1.0, -12); N *= 0.5, ++checked) {
      const Band b = band_classify(N, a);
      const Band want = N >= 0.5 ? Band::S3 : (N <= Na ? Band::S1 : Band::S2);
      ok = ok && b == want;
      if (b == Band::S2) ok = ok && N >= r / (2 * pi) && N <= 2 * std::sqrt(2.0) * r / pi;
    }
  }
  Outcome o;
  o.pass = ok;
  o.summary = fmtn("N_2 = %g, S3 = {1, 1/2}, %d dyadic classifications checked", N_alpha(2.0), checked);
  return o;
}

Outcome ac11() {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double r = pi * std::max(u(rng), 1e-6), t = 2 * pi * u(rng);
    const Vec2 xi{r * std::cos(t), r * std::sin(t)};
    double s = 0.0;
    for (double N = 1.0; N >= std::ldexp(1.0, -40); N *= 0.5) s += oscillatory::eta(xi, oscillatory::BumpSpec{N});
    worst = std::max(worst, std::abs(s - 1.0));
  }
  Outcome o;
  o.pass = worst <= 1e-10;
  o.summary = fmtn("max |sum - 1| = %.2e over 100 points (<= 1e-10)", worst);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"AC1 cusp decay", ac1},          {"AC2 fold decay", ac2},
      {"AC3 nondegenerate decay", ac3}, {"AC4 Schroedinger-limit constant", ac4},
      {"AC5 wave-limit law", ac5},      {"AC6 continuum limit", ac6},
      {"AC7 conservation", ac7},        {"AC8 oracle equivalence", ac8},
      {"AC9 manifold exactness", ac9},  {"AC10 band bookkeeping", ac10},
      {"AC11 Littlewood-Paley partition", ac11}};
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.summary = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::printf("%s %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", name, o.summary.c_str(), secs);
    for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
