#include <cmath>

#include "doctest.h"
#include "dfnls/lattice_core.hpp"
#include "oracles.hpp"

using namespace dfnls;
using namespace dfnls::lattice_core;

namespace {

double rel_max(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double d = 0.0, r = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = std::max(d, std::abs(a[i] - b[i]));
    r = std::max(r, std::abs(b[i]));
  }
  return d / r;
}

}  // namespace

TEST_SUITE("lattice_core") {

TEST_CASE("grid geometry") {
  const Grid g = make_grid(0.5, 4);
  CHECK(g.L() == 2.0);
  CHECK(g.site(0) == -1.0);
  CHECK(g.site(1) == -0.5);
  CHECK(g.site(2) == 0.0);
  CHECK(g.site(3) == 0.5);
  const Grid g8 = make_grid(1.0, 8);
  double fmax = 0.0;
  for (int k = 0; k < 8; ++k) fmax = std::max(fmax, std::abs(g8.freq(k)));
  CHECK(fmax == doctest::Approx(pi));
  CHECK(std::abs(g8.freq(7)) == doctest::Approx(pi * (1.0 - 2.0 / 8)));
  CHECK(make_grid(std::ldexp(1.0, -6), 4096).L() == 64.0);
  CHECK_THROWS_AS(make_grid(0.5, 5), DomainError);
  CHECK_THROWS_AS(make_grid(-1.0, 4), DomainError);
}

TEST_CASE("dft of delta and constant") {
  const Grid g = make_grid(0.25, 16);
  LatticeField d(g);
  d(8, 8) = 1.0;
  const auto dh = forward_dft(d);
  for (const auto& c : dh.coeffs) CHECK(std::abs(c - cplx(g.h * g.h)) < 1e-15);

  LatticeField one(g);
  for (auto& v : one.values) v = 1.0;
  const auto oh = forward_dft(one);
  for (int k = 0; k < g.n; ++k)
    for (int l = 0; l < g.n; ++l) {
      const double expect = (k == 8 && l == 8) ? g.L() * g.L() : 0.0;
      CHECK(std::abs(oh(k, l) - expect) < 1e-12);
    }
}

TEST_CASE("dft matches direct summation on 16x16") {
  const Grid g = make_grid(0.3, 16);
  const auto f = oracle::random_field(g, 11);
  CHECK(rel_max(forward_dft(f).coeffs, oracle::direct_dft(f).coeffs) <= 1e-12);
}

TEST_CASE("dft round trip up to n = 1024") {
  for (int n : {16, 128, 1024}) {
    const Grid g = make_grid(1.0 / 16, n);
    const auto f = oracle::random_field(g, n);
    CHECK(rel_max(inverse_dft(forward_dft(f)).values, f.values) <= 1e-12);
  }
}

TEST_CASE("serial and parallel kernels agree") {
  const Grid g = make_grid(1.0 / 8, 64);
  const auto f = oracle::random_field(g, 3);
  const SymbolSpec s{SymbolKind::discrete_fractional, 1.3};
  CHECK(forward_dft(f, Exec::serial).coeffs == forward_dft(f, Exec::parallel).coeffs);
  CHECK(apply_multiplier(s, f, Exec::serial).values == apply_multiplier(s, f, Exec::parallel).values);
  CHECK(lp_norm(f, 3.0, Exec::serial) == lp_norm(f, 3.0, Exec::parallel));
}

TEST_CASE("lp norms and Parseval") {
  const Grid g = make_grid(0.5, 8);
  LatticeField one(g);
  for (auto& v : one.values) v = 1.0;
  CHECK(lp_norm(one, 2.0) == doctest::Approx(g.L()).epsilon(1e-14));
  LatticeField d(g);
  d(3, 5) = 1.0;
  CHECK(lp_norm(d, 1.0) == doctest::Approx(g.h * g.h));
  CHECK(lp_norm(d, q_infinity) == 1.0);
  CHECK_THROWS_AS(lp_norm(d, 0.5), DomainError);

  const Grid gr = make_grid(0.2, 32);
  const auto f = oracle::random_field(gr, 5);
  const double lhs = std::pow(lp_norm(f, 2.0), 2);
  CHECK(spectral_norm2(forward_dft(f)) == doctest::Approx(lhs).epsilon(1e-12));
}

TEST_CASE("sobolev norm") {
  const Grid g = make_grid(0.25, 32);
  const auto f = oracle::random_field(g, 9);
  CHECK(sobolev_norm(f, 0.0) == doctest::Approx(lp_norm(f, 2.0)).epsilon(1e-12));

  LatticeField mode(g);
  const double x1 = g.freq(19), x2 = g.freq(13);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) mode(i, j) = std::polar(1.0, g.site(i) * x1 + g.site(j) * x2);
  const double s = 0.7;
  CHECK(sobolev_norm(mode, s) ==
        doctest::Approx(g.L() * std::pow(1.0 + x1 * x1 + x2 * x2, s / 2)).epsilon(1e-12));

  // ||f||_{H^1}^2 = ||f||^2 + || |xi| f ||^2 with |xi| applied as a multiplier.
  const SymbolSpec abs_xi{SymbolKind::continuum_fractional, 1.0};
  const double grad = lp_norm(apply_multiplier(abs_xi, f), 2.0);
  const double l2 = lp_norm(f, 2.0);
  CHECK(std::pow(sobolev_norm(f, 1.0), 2) ==
        doctest::Approx(l2 * l2 + grad * grad).epsilon(1e-10));
}

TEST_CASE("symbol values") {
  const SymbolSpec s{SymbolKind::discrete_fractional, 1.5};
  const double h = 0.1;
  CHECK(symbol_value(s, 0.0, 0.0, h) == 0.0);
  CHECK(symbol_value(s, pi / h, pi / h, h) == doctest::Approx(std::pow(8.0 / (h * h), 0.75)));

  // sigma_h(1,1) -> 2^{0.75} with O(h^2) error.
  double prev = 0.0;
  for (int e = 2; e <= 6; ++e) {
    const double hh = std::ldexp(1.0, -e);
    const double err = std::abs(symbol_value(s, 1.0, 1.0, hh) - std::pow(2.0, 0.75));
    if (prev > 0.0) CHECK(prev / err == doctest::Approx(4.0).epsilon(0.05));
    prev = err;
  }

  CHECK_THROWS_AS(symbol_value({SymbolKind::discrete_fractional, 2.5}, 0.0, 0.0, h), DomainError);
  CHECK_THROWS_AS(symbol_value({SymbolKind::long_range, 1.5, 2.0, 0.5}, 0.0, 0.0, h), DomainError);
}

TEST_CASE("symbols are even and nonnegative") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-pi / 0.25, pi / 0.25);
  const SymbolSpec specs[] = {{SymbolKind::discrete_fractional, 1.3},
                              {SymbolKind::continuum_fractional, 1.7},
                              {SymbolKind::long_range, 1.5, 2.0, 2.0},
                              {SymbolKind::long_range, 1.2, 1.0, 2.0},
                              {SymbolKind::long_range, 0.8, q_infinity, 2.0}};
  for (const auto& s : specs)
    for (int k = 0; k < 30; ++k) {
      const double a = u(rng), b = u(rng);
      const double v = symbol_value(s, a, b, 0.25);
      CHECK(v >= 0.0);
      CHECK(std::abs(v - symbol_value(s, -a, -b, 0.25)) <= 1e-12 * std::max(1.0, v));
    }
}

TEST_CASE("sup of the discrete symbol sits at the corner") {
  for (double h : {0.5, 0.125}) {
    const Grid g = make_grid(h, 16);
    const SymbolSpec s{SymbolKind::discrete_fractional, 1.5};
    const auto t = symbol_table(s, g);
    CHECK(*std::max_element(t.begin(), t.end()) == doctest::Approx(std::pow(8.0 / (h * h), 0.75)));
  }
}

TEST_CASE("long-range coefficient") {
  CHECK(long_range_coeff(1.0) == doctest::Approx(1.0 / (2.0 * pi)).epsilon(1e-14));
  CHECK(long_range_coeff(1e-6) < 1e-5);
  const double a = 1.5;
  const double ref = std::pow(4.0, a / 2) * oracle::gamma_hp((2 + a) / 2) /
                     (pi * std::abs(oracle::gamma_hp(-a / 2)));
  CHECK(std::abs(long_range_coeff(a) - ref) <= 1e-10 * ref);
  CHECK_THROWS_AS(long_range_coeff(2.0), DomainError);
}

TEST_CASE("multiplier against stencil and lattice-sum oracles") {
  const Grid g = make_grid(0.25, 16);
  const auto f = oracle::random_field(g, 17);
  const auto a = apply_multiplier({SymbolKind::discrete_fractional, 2.0}, f);
  CHECK(rel_max(a.values, oracle::five_point(f).values) <= 1e-10);

  const double alpha = 1.5, R = 2.0;
  const auto lr = apply_multiplier({SymbolKind::long_range, alpha, 2.0, R}, f);
  const auto direct = oracle::long_range_direct(f, alpha, R, long_range_coeff(alpha));
  CHECK(rel_max(lr.values, direct.values) <= 1e-6);
}

TEST_CASE("constants are annihilated") {
  const Grid g = make_grid(0.25, 16);
  LatticeField c(g);
  for (auto& v : c.values) v = cplx(2.0, -1.0);
  const SymbolSpec specs[] = {{SymbolKind::discrete_fractional, 1.5},
                              {SymbolKind::continuum_fractional, 1.5},
                              {SymbolKind::long_range, 1.5, 2.0, 2.0}};
  for (const auto& s : specs) CHECK(lp_norm(apply_multiplier(s, c), q_infinity) < 1e-12);
}

TEST_CASE("multiplier is nonnegative and self-adjoint") {
  const Grid g = make_grid(0.25, 32);
  const SymbolSpec specs[] = {{SymbolKind::discrete_fractional, 1.5},
                              {SymbolKind::continuum_fractional, 1.1},
                              {SymbolKind::long_range, 1.5, 2.0, 2.0}};
  for (int seed = 0; seed < 4; ++seed) {
    const auto f = oracle::random_field(g, 100 + seed);
    const auto h = oracle::random_field(g, 200 + seed);
    for (const auto& s : specs) {
      const double nf = lp_norm(f, 2.0), nh = lp_norm(h, 2.0);
      CHECK(inner(apply_multiplier(s, f), f).real() >= -1e-10 * nf * nf);
      const cplx d = inner(apply_multiplier(s, f), h) - inner(f, apply_multiplier(s, h));
      CHECK(std::abs(d) <= 1e-10 * nf * nh * std::pow(8.0 / (g.h * g.h), s.alpha / 2));
    }
  }
}

TEST_CASE("long-range anisotropy only for q != 2") {
  const double alpha = 1.5, h = 1.0 / 16, R = 6.0;
  const double r = 0.5;
  auto ratio = [&](double q, double c1, double c2) {
    const SymbolSpec s{SymbolKind::long_range, alpha, q, R};
    return symbol_value(s, r * c1, r * c2, h) / std::pow(r, alpha);
  };
  const double d = 1.0 / std::sqrt(2.0);
  for (double q : {1.0, q_infinity}) {
    const double x = ratio(q, 1.0, 0.0), y = ratio(q, d, d);
    CHECK(std::abs(x - y) / x > 0.01);
  }
  const double x = ratio(2.0, 1.0, 0.0), y = ratio(2.0, d, d);
  CHECK(std::abs(x - y) / x < 0.01);
  CHECK(long_range_tail_bound({SymbolKind::long_range, alpha, 2.0, R}) == std::pow(R, -alpha));
}

}  // TEST_SUITE
