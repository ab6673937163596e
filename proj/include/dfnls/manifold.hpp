#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dfnls/dispersion.hpp"

namespace dfnls::manifold {

using dispersion::Mat2;
using dispersion::Vec2;

enum class PointClass { K1, K2_fold, K3_cusp };
enum class Branch { gamma1, gamma2 };

std::string to_string(PointClass c);
std::string to_string(Branch b);

// Principal part of Phi = v.xi - w in the eigenframe (x along k1, y along k2):
// c20 x^2 + c12 x y^2 + c03 y^3 + c02 y^2, only the monomials of the class set.
struct NormalForm {
  double c20 = 0.0;
  double c02 = 0.0;  // K1 only
  double c12 = 0.0;  // cusp only
  double c03 = 0.0;  // fold only
  std::vector<std::pair<int, int>> exponents;
  double distance = 1.0;  // Newton distance on the bisectrix
  double sigma0 = 1.0;
};

struct CriticalPoint {
  double alpha = 1.5;
  Vec2 xi;
  Vec2 ab;  // (cos xi_1, cos xi_2)
  PointClass cls = PointClass::K1;
  Mat2 hessian;
  Vec2 k1;  // eigenvector of the nonzero (largest) eigenvalue
  Vec2 k2;  // degenerate direction (K2/K3), other eigenvector for K1
  double d3 = 0.0;  // d_y^3 w, fold only
  NormalForm nf;
  double sigma0 = 1.0;
  cplx d0;  // leading coefficient with zeta = 1, without the e^{i tau Phi(xi)} factor
};

// Roots of h(a, ., alpha) = 0. B_P on [-1, 0) (through the origin), B on [(2-alpha)/alpha, 1].
double curve_BP(double a, double alpha);
double curve_B(double a, double alpha);

struct CurveSample {
  double alpha = 0.0;
  Branch branch = Branch::gamma1;
  double a = 0.0;
  double b = 0.0;
  double residual = 0.0;
};

// Chebyshev-spaced parameters on the branch domain.
std::vector<CurveSample> sample_curve(double alpha, Branch branch, int count = 64);

// xi in the first quadrant with (cos xi_1, cos xi_2) = (a, b).
Vec2 xi_from_ab(double a, double b);

// Unit null direction of D^2 w at xi on E_alpha; second component > 0 (tie: first > 0).
Vec2 degenerate_direction(Vec2 xi, double alpha);

// d_y^3 w = h~ d_y h / Tr D^2 w.
double d3_formula(Vec2 xi, double alpha);
// Fourth-order central differences of s -> w(xi + s k2) with one Richardson level.
double d3_fd(Vec2 xi, double alpha, double step = 1e-2);
// j-th derivative of s -> w(xi + s dir) at 0 (j in 1..4), same scheme.
double directional_fd(Vec2 xi, Vec2 dir, double alpha, int j, double step = 1e-2);

PointClass classify(Vec2 xi, double alpha, double tol = 1e-8);

// Newton distance of the polygon generated by the exponent set on the bisectrix.
double newton_distance(const std::vector<std::pair<int, int>>& exponents);

NormalForm normal_form(const CriticalPoint& p);

// Leading coefficient of J ~ d0 tau^{-sigma0} for a bump with value zeta at xi.
cplx leading_d0(const CriticalPoint& p, double zeta);

// Fully populated record for a critical point of Phi_{v} with v = grad w(xi).
CriticalPoint analyze(Vec2 xi, double alpha);

// Corrected cusp coefficient c0 / zeta and the expression as printed in the paper (4x larger).
double cusp_c0(double alpha);
double cusp_c0_printed(double alpha);

// Minimum distance between sampled E_{alpha1} and E_{alpha2} in the (a,b) square,
// ignoring samples within `exclude` of the origin.
double branch_separation(double alpha1, double alpha2, int count = 256, double exclude = 0.05);

struct SmaReport {
  int samples = 0;
  int violations = 0;
  double worst_margin = 0.0;
};
// Small-angle brackets z/2 <= sin z <= z, 1 - z^2/2 <= cos z <= 1 - z^2/4,
// sqrt(2) z^{1/2} <= acos(1 - z) <= 2 z^{1/2} on [0, pi/2].
SmaReport small_angle_check(int samples = 10001);

// Chebyshev points on [lo, hi], interior.
std::vector<double> chebyshev(double lo, double hi, int count);

// sup over Gamma^2 samples of the fold |d0| (zeta = 1): the wave-limit proxy.
struct ProxyPoint {
  double a = 0.0;
  double b = 0.0;
  double d0 = 0.0;
};
ProxyPoint fold_proxy(double alpha, int count = 64);

}  // namespace dfnls::manifold
