#include "dfnls/dispersion.hpp"

namespace dfnls::dispersion {

Eigen2 eigen(const Mat2& m) {
  const double mean = 0.5 * (m.xx + m.yy);
  const double half = 0.5 * (m.xx - m.yy);
  const double rad = std::hypot(half, m.xy);
  double l1 = mean + rad, l2 = mean - rad;
  if (std::abs(l2) > std::abs(l1)) std::swap(l1, l2);
  // Eigenvector of l1 from whichever row of (m - l1 I) is better conditioned.
  Vec2 a{m.xy, l1 - m.xx}, b{l1 - m.yy, m.xy};
  Vec2 v = norm(a) >= norm(b) ? a : b;
  if (norm(v) == 0.0) v = {1.0, 0.0};
  v = (1.0 / norm(v)) * v;
  return {l1, l2, v, {-v.y, v.x}};
}

double wrap(double t) {
  double r = std::remainder(t, 2.0 * pi);
  if (r <= -pi) r += 2.0 * pi;
  return r;
}

Vec2 wrap(Vec2 v) { return {wrap(v.x), wrap(v.y)}; }

Vec2 group_velocity(Vec2 xi, double alpha) {
  const double s = base(xi);
  if (s == 0.0) return {0.0, 0.0};
  const double f = 0.25 * alpha * std::pow(s, 0.5 * alpha - 1.0);
  return {f * std::sin(xi.x), f * std::sin(xi.y)};
}

Mat2 hessian_core(Vec2 xi, double alpha) {
  const double a = std::cos(xi.x), b = std::cos(xi.y);
  Mat2 m;
  m.xx = alpha * a * a + 2.0 * (b - 2.0) * a + 2.0 - alpha;
  m.yy = alpha * b * b + 2.0 * (a - 2.0) * b + 2.0 - alpha;
  m.xy = (2.0 - alpha) * std::sin(xi.x) * std::sin(xi.y);
  return m;
}

Mat2 hessian_w(Vec2 xi, double alpha) {
  const double s = base(xi);
  require(s > 0.0, "hessian_w: D^2 w is singular at xi = 0");
  // w^{4/alpha - 1} = S^{2 - alpha/2}
  const double pre = -alpha / 16.0 * std::pow(s, 0.5 * alpha - 2.0);
  Mat2 m = hessian_core(xi, alpha);
  return {pre * m.xx, pre * m.xy, pre * m.yy};
}

Vec2 h_poly_grad(double a, double b, double alpha) {
  return {alpha * b * (2.0 * a + b) - 4.0 * b + 2.0 - alpha,
          alpha * a * (a + 2.0 * b) - 4.0 * a + 2.0 - alpha};
}

Vec2 h_xi_grad(Vec2 xi, double alpha) {
  const Vec2 g = h_poly_grad(std::cos(xi.x), std::cos(xi.y), alpha);
  return {-std::sin(xi.x) * g.x, -std::sin(xi.y) * g.y};
}

double htilde(Vec2 xi, double alpha) {
  const double s = base(xi);
  require(s > 0.0, "htilde: undefined at xi = 0");
  return alpha * alpha / 128.0 * std::pow(s, alpha - 4.0) *
         (std::cos(xi.x) + std::cos(xi.y) - 2.0);
}

double third_derivative(Vec2 xi, double alpha, Vec2 a, Vec2 b, Vec2 c) {
  const double s = base(xi);
  require(s > 0.0, "third_derivative: undefined at xi = 0");
  const double e = 0.5 * alpha;
  const double f1 = e * std::pow(s, e - 1.0);
  const double f2 = e * (e - 1.0) * std::pow(s, e - 2.0);
  const double f3 = e * (e - 1.0) * (e - 2.0) * std::pow(s, e - 3.0);
  const double s1 = 0.5 * std::sin(xi.x), s2 = 0.5 * std::sin(xi.y);
  const double c1 = 0.5 * std::cos(xi.x), c2 = 0.5 * std::cos(xi.y);
  auto g = [&](Vec2 u) { return s1 * u.x + s2 * u.y; };
  auto hh = [&](Vec2 u, Vec2 v) { return c1 * u.x * v.x + c2 * u.y * v.y; };
  return f3 * g(a) * g(b) * g(c) + f2 * (hh(a, b) * g(c) + hh(a, c) * g(b) + hh(b, c) * g(a)) -
         f1 * (s1 * a.x * b.x * c.x + s2 * a.y * b.y * c.y);
}

}  // namespace dfnls::dispersion
