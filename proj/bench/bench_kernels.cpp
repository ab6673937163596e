// Serial reference vs OpenMP kernels: wall time per call and max deviation.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>

#include "dfnls/discretize.hpp"
#include "dfnls/dynamics.hpp"
#include "dfnls/lattice_core.hpp"
#include "dfnls/oscillatory.hpp"
#include "dfnls/studies.hpp"

using namespace dfnls;

namespace {

double seconds(const std::function<void()>& fn, int reps) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

void report(const char* name, double serial, double parallel, double diff) {
  std::printf("%-28s serial %10.3e s  parallel %10.3e s  speedup %5.2f  max|diff| %.1e\n", name,
              serial, parallel, serial / parallel, diff);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  const auto g = lattice_core::make_grid(1.0 / 32, 512);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  lattice_core::LatticeField f(g);
  for (auto& v : f.values) v = cplx(nd(rng), nd(rng));

  {
    lattice_core::SpectralField a, b;
    const double s = seconds([&] { a = lattice_core::forward_dft(f, Exec::serial); }, 5);
    const double p = seconds([&] { b = lattice_core::forward_dft(f, Exec::parallel); }, 5);
    report("forward_dft 512^2", s, p, max_diff(a.coeffs, b.coeffs));
  }
  {
    lattice_core::SymbolSpec spec{lattice_core::SymbolKind::discrete_fractional, 1.5};
    lattice_core::LatticeField a, b;
    const double s = seconds([&] { a = lattice_core::apply_multiplier(spec, f, Exec::serial); }, 3);
    const double p = seconds([&] { b = lattice_core::apply_multiplier(spec, f, Exec::parallel); }, 3);
    report("apply_multiplier 512^2", s, p, max_diff(a.values, b.values));
  }
  {
    const auto u = discretize::gaussian(1.0, 1.0);
    lattice_core::LatticeField a, b;
    const double s = seconds([&] { a = discretize::discretize_dh(u, g, 4, Exec::serial); }, 2);
    const double p = seconds([&] { b = discretize::discretize_dh(u, g, 4, Exec::parallel); }, 2);
    report("discretize_dh 512^2 q=4", s, p, max_diff(a.values, b.values));
  }
  {
    dynamics::SimConfig cfg;
    cfg.h = 1.0 / 16;
    cfg.n = 256;
    cfg.T = 0.05;
    cfg.dt = 1e-3;
    cfg.initial = discretize::gaussian(1.0, 1.0);
    dynamics::SimResult a, b;
    cfg.exec = Exec::serial;
    const double s = seconds([&] { a = dynamics::simulate(cfg); }, 1);
    cfg.exec = Exec::parallel;
    const double p = seconds([&] { b = dynamics::simulate(cfg); }, 1);
    report("simulate 256^2, 50 steps", s, p, max_diff(a.final.values, b.final.values));
  }
  {
    const auto pt = manifold::analyze(studies::k1_xi(), 1.5);
    const auto bump = studies::isolating_bump(pt).bump;
    const oscillatory::PhaseSpec ph{1.5, dispersion::group_velocity(pt.xi, 1.5)};
    oscillatory::QuadratureOptions q;
    oscillatory::JResult a, b;
    q.exec = Exec::serial;
    const double s = seconds([&] { a = oscillatory::eval_J(ph, bump, 400.0, q); }, 2);
    q.exec = Exec::parallel;
    const double p = seconds([&] { b = oscillatory::eval_J(ph, bump, 400.0, q); }, 2);
    report("eval_J tau=400", s, p, std::abs(a.value - b.value));
  }
  return 0;
}
