#include "dfnls/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace dfnls::manifold {

using namespace dispersion;

std::string to_string(PointClass c) {
  switch (c) {
    case PointClass::K1: return "K1";
    case PointClass::K2_fold: return "K2";
    case PointClass::K3_cusp: return "K3";
  }
  return "?";
}

std::string to_string(Branch b) { return b == Branch::gamma1 ? "gamma1" : "gamma2"; }

namespace {

// h(a, b) = (alpha a) b^2 + beta b + c as a quadratic in b.
struct Quadratic {
  double lead, beta, c, disc;
};

Quadratic quadratic_in_b(double a, double alpha) {
  Quadratic q;
  q.lead = alpha * a;
  q.beta = alpha * a * a - 4.0 * a + 2.0 - alpha;
  q.c = (2.0 - alpha) * a;
  q.disc = q.beta * q.beta - 4.0 * q.lead * q.c;
  if (q.disc < 0.0) throw std::logic_error("curve: negative discriminant on the branch domain");
  return q;
}

void check_alpha(double alpha) {
  require(alpha > 1.0 && alpha < 2.0, "alpha must lie in (1,2)");
}

}  // namespace

double curve_BP(double a, double alpha) {
  check_alpha(alpha);
  require(a >= -1.0 && a < 0.0, "curve_BP: a must lie in [-1,0)");
  const Quadratic q = quadratic_in_b(a, alpha);
  // beta > 0 here; the small root c / qq is the one vanishing as a -> 0-.
  const double qq = -0.5 * (q.beta + std::sqrt(q.disc));
  return q.c / qq;
}

double curve_B(double a, double alpha) {
  check_alpha(alpha);
  const double r = (2.0 - alpha) / alpha;
  require(a >= r * (1.0 - 1e-15) && a <= 1.0, "curve_B: a must lie in [(2-alpha)/alpha, 1]");
  const Quadratic q = quadratic_in_b(a, alpha);
  // beta < 0 on this domain.
  const double qq = 0.5 * (std::sqrt(q.disc) - q.beta);
  return q.c / qq;
}

std::vector<double> chebyshev(double lo, double hi, int count) {
  require(count >= 1 && hi > lo, "chebyshev: bad interval");
  std::vector<double> out(count);
  for (int k = 0; k < count; ++k)
    out[k] = 0.5 * (lo + hi) - 0.5 * (hi - lo) * std::cos(pi * (2 * k + 1) / (2.0 * count));
  return out;
}

std::vector<CurveSample> sample_curve(double alpha, Branch branch, int count) {
  check_alpha(alpha);
  std::vector<CurveSample> out;
  const bool g1 = branch == Branch::gamma1;
  const double lo = g1 ? -1.0 : (2.0 - alpha) / alpha;
  const double hi = g1 ? 0.0 : 1.0;
  for (double a : chebyshev(lo, hi, count)) {
    CurveSample s;
    s.alpha = alpha;
    s.branch = branch;
    s.a = a;
    s.b = g1 ? curve_BP(a, alpha) : curve_B(a, alpha);
    s.residual = std::abs(h_poly(s.a, s.b, alpha));
    out.push_back(s);
  }
  return out;
}

Vec2 xi_from_ab(double a, double b) {
  return {std::acos(std::clamp(a, -1.0, 1.0)), std::acos(std::clamp(b, -1.0, 1.0))};
}

Vec2 degenerate_direction(Vec2 xi, double alpha) {
  require(std::abs(h_xi(xi, alpha)) <= 1e-8, "degenerate_direction: xi is not on E_alpha");
  const Mat2 m = hessian_core(xi, alpha);
  const Vec2 va{-m.xy, m.xx}, vb{m.yy, -m.xy};
  Vec2 v = norm(va) >= norm(vb) ? va : vb;
  if (norm(v) < 1e-12) throw std::logic_error("degenerate_direction: both null-vector candidates vanish");
  v = (1.0 / norm(v)) * v;
  if (v.y < 0.0 || (v.y == 0.0 && v.x < 0.0)) v = -1.0 * v;
  return v;
}

double d3_formula(Vec2 xi, double alpha) {
  const Vec2 k2 = degenerate_direction(xi, alpha);
  const double tr = hessian_w(xi, alpha).trace();
  require(std::abs(tr) >= 1e-12, "d3_formula: Tr D^2 w vanishes");
  return htilde(xi, alpha) * dot(k2, h_xi_grad(xi, alpha)) / tr;
}

namespace {

double stencil(const std::function<double(double)>& f, int j, double s) {
  switch (j) {
    case 1: return (-f(2 * s) + 8 * f(s) - 8 * f(-s) + f(-2 * s)) / (12 * s);
    case 2:
      return (-f(2 * s) + 16 * f(s) - 30 * f(0) + 16 * f(-s) - f(-2 * s)) / (12 * s * s);
    case 3:
      return (-f(3 * s) + 8 * f(2 * s) - 13 * f(s) + 13 * f(-s) - 8 * f(-2 * s) + f(-3 * s)) /
             (8 * s * s * s);
    case 4:
      return (-f(3 * s) + 12 * f(2 * s) - 39 * f(s) + 56 * f(0) - 39 * f(-s) + 12 * f(-2 * s) -
              f(-3 * s)) /
             (6 * s * s * s * s);
  }
  throw DomainError("directional_fd: derivative order must lie in 1..4");
}

}  // namespace

double directional_fd(Vec2 xi, Vec2 dir, double alpha, int j, double step) {
  const std::function<double(double)> f = [&](double s) { return w(xi + s * dir, alpha); };
  const double coarse = stencil(f, j, step);
  const double fine = stencil(f, j, 0.5 * step);
  return (16.0 * fine - coarse) / 15.0;
}

double d3_fd(Vec2 xi, double alpha, double step) {
  return directional_fd(xi, degenerate_direction(xi, alpha), alpha, 3, step);
}

PointClass classify(Vec2 xi, double alpha, double tol) {
  require(base(xi) > 0.0, "classify: xi = 0 is excluded");
  if (std::abs(std::cos(xi.x)) <= 1e-9 && std::abs(std::cos(xi.y)) <= 1e-9)
    return PointClass::K3_cusp;
  if (std::abs(h_xi(xi, alpha)) <= tol) return PointClass::K2_fold;
  return PointClass::K1;
}

double newton_distance(const std::vector<std::pair<int, int>>& exps) {
  require(!exps.empty(), "newton_distance: empty exponent set");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [p1, p2] : exps) best = std::min(best, static_cast<double>(std::max(p1, p2)));
  for (std::size_t i = 0; i < exps.size(); ++i)
    for (std::size_t j = i + 1; j < exps.size(); ++j) {
      const double x1 = exps[i].first, y1 = exps[i].second;
      const double x2 = exps[j].first, y2 = exps[j].second;
      // lambda p + (1 - lambda) q on the diagonal.
      const double den = (x1 - y1) - (x2 - y2);
      if (den == 0.0) continue;
      const double lam = (y2 - x2) / den;
      if (lam < 0.0 || lam > 1.0) continue;
      best = std::min(best, lam * x1 + (1.0 - lam) * x2);
    }
  return best;
}

NormalForm normal_form(const CriticalPoint& p) {
  NormalForm nf;
  const Mat2& hs = p.hessian;
  const double hnorm = std::max({std::abs(hs.xx), std::abs(hs.xy), std::abs(hs.yy), 1.0});
  switch (p.cls) {
    case PointClass::K1: {
      require(std::abs(hs.det()) > 1e-14 * hnorm * hnorm, "normal_form: K1 point with singular Hessian");
      nf.c20 = -0.5 * dot(p.k1, hs * p.k1);
      nf.c02 = -0.5 * dot(p.k2, hs * p.k2);
      nf.exponents = {{2, 0}, {0, 2}};
      break;
    }
    case PointClass::K2_fold:
    case PointClass::K3_cusp: {
      require(norm(hs * p.k2) <= 1e-8 * hnorm, "normal_form: k2 is not a null direction");
      nf.c20 = -0.5 * dot(p.k1, hs * p.k1);
      if (p.cls == PointClass::K3_cusp) {
        require(std::abs(std::cos(p.xi.x)) <= 1e-9 && std::abs(std::cos(p.xi.y)) <= 1e-9,
                "normal_form: cusp class away from (+-pi/2, +-pi/2)");
        nf.c12 = -0.5 * third_derivative(p.xi, p.alpha, p.k1, p.k2, p.k2);
        nf.exponents = {{2, 0}, {1, 2}};
      } else {
        require(std::abs(p.d3) > 0.0, "normal_form: fold with vanishing third derivative");
        nf.c03 = -p.d3 / 6.0;
        nf.exponents = {{2, 0}, {0, 3}};
      }
      break;
    }
  }
  nf.distance = newton_distance(nf.exponents);
  nf.sigma0 = 1.0 / nf.distance;
  return nf;
}

namespace {

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

}  // namespace

cplx leading_d0(const CriticalPoint& p, double zeta) {
  const NormalForm& nf = p.nf;
  switch (p.cls) {
    case PointClass::K1: {
      const double mag = pi / std::sqrt(std::abs(nf.c20 * nf.c02));
      return zeta * std::polar(mag, 0.25 * pi * (sgn(nf.c20) + sgn(nf.c02)));
    }
    case PointClass::K2_fold: {
      const double mag = std::sqrt(3.0 * pi / std::abs(nf.c20)) * std::tgamma(4.0 / 3.0) *
                         std::pow(std::abs(nf.c03), -1.0 / 3.0);
      return zeta * std::polar(mag, 0.25 * pi * sgn(nf.c20));
    }
    case PointClass::K3_cusp: {
      // Completing the square leaves the quartic q4 y^4 with q4 = -c12^2 / (4 c20).
      const double q4 = -nf.c12 * nf.c12 / (4.0 * nf.c20);
      const double mag = std::sqrt(pi / std::abs(nf.c20)) * 2.0 * std::tgamma(1.25) *
                         std::pow(std::abs(q4), -0.25);
      return zeta * std::polar(mag, 0.25 * pi * sgn(nf.c20) + 0.125 * pi * sgn(q4));
    }
  }
  return 0.0;
}

CriticalPoint analyze(Vec2 xi, double alpha) {
  check_alpha(alpha);
  CriticalPoint p;
  p.alpha = alpha;
  p.xi = xi;
  p.ab = {std::cos(xi.x), std::cos(xi.y)};
  p.cls = classify(xi, alpha);
  p.hessian = hessian_w(xi, alpha);
  if (p.cls == PointClass::K1) {
    const Eigen2 e = eigen(p.hessian);
    p.k1 = e.v1;
    p.k2 = e.v2;
  } else {
    p.k2 = degenerate_direction(xi, alpha);
    p.k1 = {p.k2.y, -p.k2.x};
    if (p.k1.x < 0.0 || (p.k1.x == 0.0 && p.k1.y < 0.0)) p.k1 = -1.0 * p.k1;
    if (p.cls == PointClass::K2_fold) p.d3 = d3_formula(xi, alpha);
  }
  p.nf = normal_form(p);
  p.sigma0 = p.nf.sigma0;
  p.d0 = leading_d0(p, 1.0);
  return p;
}

double cusp_c0(double alpha) {
  return std::pow(2.0, 19.0 / 4.0) * std::sqrt(pi) * std::tgamma(0.25) /
         (3.0 * std::tgamma(0.75)) * std::pow(alpha, -0.75) * std::pow(2.0 - alpha, -0.25);
}

double cusp_c0_printed(double alpha) { return 4.0 * cusp_c0(alpha); }

double branch_separation(double alpha1, double alpha2, int count, double exclude) {
  auto points = [&](double alpha) {
    std::vector<Vec2> pts;
    for (Branch br : {Branch::gamma1, Branch::gamma2})
      for (const auto& s : sample_curve(alpha, br, count)) {
        if (std::hypot(s.a, s.b) < exclude) continue;
        pts.push_back({s.a, s.b});
        pts.push_back({s.b, s.a});
      }
    return pts;
  };
  const auto p1 = points(alpha1), p2 = points(alpha2);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& u : p1)
    for (const auto& v : p2) best = std::min(best, norm(u - v));
  return best;
}

SmaReport small_angle_check(int samples) {
  SmaReport r;
  r.samples = samples;
  r.worst_margin = std::numeric_limits<double>::infinity();
  const double slack = 1e-15;
  auto track = [&](double lo, double mid, double hi) {
    const double m = std::min(mid - lo, hi - mid);
    r.worst_margin = std::min(r.worst_margin, m);
    if (m < -slack) ++r.violations;
  };
  for (int i = 0; i < samples; ++i) {
    const double z = 0.5 * pi * i / (samples - 1);
    track(0.5 * z, std::sin(z), z);
    track(1.0 - 0.5 * z * z, std::cos(z), 1.0 - 0.25 * z * z);
    if (z <= 2.0) track(std::sqrt(2.0 * z), std::acos(1.0 - z), 2.0 * std::sqrt(z));
  }
  return r;
}

ProxyPoint fold_proxy(double alpha, int count) {
  ProxyPoint best;
  for (const auto& s : sample_curve(alpha, Branch::gamma2, count)) {
    const CriticalPoint p = analyze(xi_from_ab(s.a, s.b), alpha);
    const double m = std::abs(p.d0);
    if (m > best.d0) best = {s.a, s.b, m};
  }
  return best;
}

}  // namespace dfnls::manifold
