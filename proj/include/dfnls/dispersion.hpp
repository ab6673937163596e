#pragma once

#include <cmath>

#include "dfnls/common.hpp"

// Dispersion relation of the lattice flow and its derivatives.
namespace dfnls::dispersion {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

// Symmetric 2x2 matrix [[xx, xy], [xy, yy]].
struct Mat2 {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;

  Vec2 operator*(Vec2 v) const { return {xx * v.x + xy * v.y, xy * v.x + yy * v.y}; }
  double det() const { return xx * yy - xy * xy; }
  double trace() const { return xx + yy; }
};

// Eigenpairs of a symmetric matrix, |lambda1| >= |lambda2|.
struct Eigen2 {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  Vec2 v1;
  Vec2 v2;
};
Eigen2 eigen(const Mat2& m);

// Wraps an angle to (-pi, pi].
double wrap(double t);
Vec2 wrap(Vec2 v);

// S(xi) = sin^2(xi_1/2) + sin^2(xi_2/2), so that w = S^{alpha/2}.
inline double base(Vec2 xi) {
  const double s1 = std::sin(0.5 * xi.x), s2 = std::sin(0.5 * xi.y);
  return s1 * s1 + s2 * s2;
}

inline double w(Vec2 xi, double alpha) { return std::pow(base(xi), 0.5 * alpha); }

// (alpha/4) w^{1 - 2/alpha} (sin xi_1, sin xi_2); zero at xi = 0.
Vec2 group_velocity(Vec2 xi, double alpha);

// Closed-form D^2 w; rejects xi = 0 (mod 2 pi).
Mat2 hessian_w(Vec2 xi, double alpha);

// Bracketed entries of D^2 w without the prefactor -alpha / (16 w^{4/alpha - 1}).
Mat2 hessian_core(Vec2 xi, double alpha);

// h(a, b, alpha) = alpha ab(a+b) - 4ab + (2-alpha)(a+b).
inline double h_poly(double a, double b, double alpha) {
  return alpha * a * b * (a + b) - 4.0 * a * b + (2.0 - alpha) * (a + b);
}
// (d/da h, d/db h).
Vec2 h_poly_grad(double a, double b, double alpha);

inline double h_xi(Vec2 xi, double alpha) {
  return h_poly(std::cos(xi.x), std::cos(xi.y), alpha);
}
// Gradient of xi -> h(cos xi_1, cos xi_2, alpha).
Vec2 h_xi_grad(Vec2 xi, double alpha);

// h~ = alpha^2 / (128 w^{8/alpha - 2}) (cos xi_1 + cos xi_2 - 2), so det D^2 w = h~ h.
double htilde(Vec2 xi, double alpha);

}  // namespace dfnls::dispersion

namespace dfnls::dispersion {

// Trilinear third derivative D^3 w[a, b, c] from the chain rule in S.
double third_derivative(Vec2 xi, double alpha, Vec2 a, Vec2 b, Vec2 c);

}  // namespace dfnls::dispersion
