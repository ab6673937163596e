#include "dfnls/dynamics.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <string>

namespace dfnls::dynamics {

using namespace lattice_core;

double limit_alpha_floor(int p) {
  return std::max(8.0 / 7.0, 2.0 * (p - 1.0) / (p + 1.0));
}

void validate(const SimConfig& cfg, bool limit) {
  require(cfg.alpha > 1.0 && cfg.alpha < 2.0, "alpha must lie in (1,2)");
  require(cfg.p >= 3, "p must be >= 3");
  require(cfg.mu == 1 || cfg.mu == -1, "mu must be +1 or -1");
  require(cfg.h > 0.0 && cfg.h <= 1.0, "h must lie in (0,1]");
  require(cfg.n >= 4 && cfg.n % 2 == 0, "n must be even and >= 4");
  require(cfg.dt >= 0.0, "dt must be positive (0 selects the default)");
  require(cfg.T > 0.0, "T must be positive");
  require(cfg.dt == 0.0 || cfg.T >= cfg.dt, "T must be >= dt");
  require(cfg.stride >= 1, "stride must be >= 1");
  require(cfg.quad_order >= 2, "quad_order must be >= 2");
  require(cfg.initial.has_value() || cfg.initial_field.has_value(), "initial data missing");
  if (limit) {
    const double floor = limit_alpha_floor(cfg.p);
    require(cfg.alpha > floor, "continuum limit needs alpha in (max(8/7, 2(p-1)/(p+1)), 2) = (" +
                                   std::to_string(floor) + ", 2)");
  }
  SymbolSpec s = cfg.symbol;
  s.alpha = cfg.alpha;
  lattice_core::validate(s, cfg.h);
}

namespace {

SymbolSpec symbol_of(const SimConfig& cfg) {
  SymbolSpec s = cfg.symbol;
  s.alpha = cfg.alpha;
  return s;
}

double symbol_sup(const SimConfig& cfg, const Grid& g) {
  const auto table = symbol_table(symbol_of(cfg), g, cfg.exec);
  return *std::max_element(table.begin(), table.end());
}

}  // namespace

double default_dt(const SimConfig& cfg) {
  const Grid g = make_grid(cfg.h, cfg.n);
  const double s = symbol_sup(cfg, g);
  return s > 0.0 ? 0.5 / s : cfg.T;
}

int step_count(const SimConfig& cfg) {
  const double dt = cfg.dt > 0.0 ? cfg.dt : default_dt(cfg);
  return std::max(1, static_cast<int>(std::ceil(cfg.T / dt - 1e-9)));
}

double effective_dt(const SimConfig& cfg) { return cfg.T / step_count(cfg); }

Stepper::Stepper(const SimConfig& cfg, const Grid& g) : cfg_(cfg), grid_(g) {
  dt_ = effective_dt(cfg);
  const auto table = symbol_table(symbol_of(cfg), g, cfg.exec);
  phase_.resize(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) phase_[i] = std::polar(1.0, -dt_ * table[i]);
}

void Stepper::linear(LatticeField& f) const {
  SpectralField s = forward_dft(f, cfg_.exec);
  const long total = static_cast<long>(phase_.size());
  const bool par = cfg_.exec == Exec::parallel;
#pragma omp parallel for if (par) schedule(static)
  for (long i = 0; i < total; ++i) s.coeffs[i] *= phase_[i];
  f = inverse_dft(s, cfg_.exec);
}

void Stepper::nonlinear_half(LatticeField& f) const {
  if (!cfg_.nonlinear) return;
  const double c = -cfg_.mu * 0.5 * dt_;
  const double e = 0.5 * (cfg_.p - 1);
  const long total = static_cast<long>(f.values.size());
  const bool par = cfg_.exec == Exec::parallel;
#pragma omp parallel for if (par) schedule(static)
  for (long i = 0; i < total; ++i) {
    const double m2 = std::norm(f.values[i]);
    const double amp = cfg_.p == 3 ? m2 : std::pow(m2, e);
    f.values[i] *= std::polar(1.0, c * amp);
  }
}

void Stepper::step(LatticeField& f) const {
  nonlinear_half(f);
  linear(f);
  nonlinear_half(f);
}

LatticeField step_strang(const LatticeField& f, const SimConfig& cfg) {
  Stepper st(cfg, f.grid);
  LatticeField out = f;
  st.step(out);
  if (!all_finite(out)) throw NumericalAbort("step_strang: non-finite values after one step");
  return out;
}

double mass(const LatticeField& f) {
  const double n2 = lp_norm(f, 2.0, Exec::serial);
  return n2 * n2;
}

double energy(const LatticeField& f, const SimConfig& cfg) {
  const Grid& g = f.grid;
  const auto table = symbol_table(symbol_of(cfg), g, Exec::serial);
  const SpectralField s = forward_dft(f, Exec::serial);
  double kin = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i) kin += table[i] * std::norm(s.coeffs[i]);
  kin *= 0.5 / (g.L() * g.L());
  double pot = 0.0;
  for (const auto& v : f.values) pot += std::pow(std::abs(v), cfg.p + 1);
  pot *= g.h * g.h * cfg.mu / (cfg.p + 1.0);
  return kin + pot;
}

double boundary_fraction(const LatticeField& f) {
  const Grid& g = f.grid;
  const double q = 0.25 * g.L();
  double inside = 0.0, total = 0.0;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      const double m = std::norm(f(i, j));
      total += m;
      if (std::abs(g.site(i)) <= q && std::abs(g.site(j)) <= q) inside += m;
    }
  return total > 0.0 ? (total - inside) / total : 0.0;
}

LatticeField initial_field(const SimConfig& cfg, const Grid& g) {
  if (cfg.initial_field) {
    require(cfg.initial_field->grid.n == g.n && cfg.initial_field->grid.h == g.h,
            "initial field does not match the simulation grid");
    return *cfg.initial_field;
  }
  return discretize::discretize_dh(*cfg.initial, g, cfg.quad_order, cfg.exec);
}

SimResult simulate(const SimConfig& cfg) {
  validate(cfg);
  const Grid g = make_grid(cfg.h, cfg.n);
  SimResult res;
  res.threads = cfg.exec == Exec::parallel ? omp_get_max_threads() : 1;
  LatticeField f = initial_field(cfg, g);
  if (!all_finite(f)) throw NumericalAbort("simulate: initial data not finite");
  const Stepper st(cfg, g);
  res.dt = st.dt();
  const int steps = step_count(cfg);
  const double m0 = mass(f);
  auto record = [&](double t) {
    res.obs.times.push_back(t);
    res.obs.mass.push_back(mass(f));
    res.obs.energy.push_back(energy(f, cfg));
    res.obs.supnorm.push_back(lp_norm(f, INFINITY, Exec::serial));
  };
  record(0.0);
  res.monitors.max_boundary_fraction = boundary_fraction(f);
  res.monitors.max_supnorm = res.obs.supnorm.back();
  for (int k = 1; k <= steps; ++k) {
    st.step(f);
    const double sup = lp_norm(f, INFINITY, Exec::serial);
    if (!std::isfinite(sup))
      throw NumericalAbort("simulate: non-finite field at step " + std::to_string(k) +
                           " (h = " + std::to_string(cfg.h) + ")");
    const double m = mass(f);
    const double drift = m0 > 0.0 ? std::abs(m - m0) / m0 : std::abs(m);
    if (drift > cfg.mass_abort)
      throw NumericalAbort("simulate: relative mass drift " + std::to_string(drift) +
                           " at step " + std::to_string(k) + " (h = " + std::to_string(cfg.h) +
                           "), under-resolved");
    const double bf = boundary_fraction(f);
    if (bf > cfg.boundary_fraction)
      throw NumericalAbort("simulate: boundary mass fraction " + std::to_string(bf) +
                           " exceeds the limit; enlarge the box");
    res.monitors.max_mass_drift = std::max(res.monitors.max_mass_drift, drift);
    res.monitors.max_boundary_fraction = std::max(res.monitors.max_boundary_fraction, bf);
    res.monitors.max_supnorm = std::max(res.monitors.max_supnorm, sup);
    if (k % cfg.stride == 0 || k == steps) record(k * res.dt);
  }
  res.monitors.steps = steps;
  res.final = std::move(f);
  return res;
}

SimResult continuum_reference(const SimConfig& cfg, int refinement) {
  require(refinement >= 1, "continuum_reference: refinement must be >= 1");
  require(cfg.initial.has_value(), "continuum_reference: needs continuum initial data");
  SimConfig fine = cfg;
  fine.h = cfg.h / refinement;
  fine.n = cfg.n * refinement;
  fine.symbol = SymbolSpec{};
  fine.symbol.kind = SymbolKind::continuum_fractional;
  const Grid g = make_grid(fine.h, fine.n);
  fine.initial_field = discretize::sample(*cfg.initial, g, cfg.exec);
  if (cfg.dt == 0.0) fine.dt = default_dt(fine);
  return simulate(fine);
}

namespace {

// Spectrum of `f` re-embedded on an n_w x n_w dual grid of the same box.
SpectralField embed(const SpectralField& s, int nw) {
  const Grid& g = s.grid;
  SpectralField out(make_grid(g.L() / nw, nw));
  const int off = nw / 2 - g.n / 2;
  for (int k = 0; k < g.n; ++k)
    for (int l = 0; l < g.n; ++l) {
      const int kk = k + off, ll = l + off;
      if (kk < 0 || kk >= nw || ll < 0 || ll >= nw) continue;
      out(kk, ll) = s(k, l);
    }
  return out;
}

}  // namespace

discretize::CellNodeValues resample_nodes(const LatticeField& fine, const Grid& target,
                                          int quad_order, Exec exec) {
  const Grid& gf = fine.grid;
  require(std::abs(gf.L() - target.L()) <= 1e-12 * gf.L(), "resample_nodes: boxes differ");
  SpectralField s = forward_dft(fine, exec);
  int m = 1;
  if (target.n <= gf.n) {
    require(gf.n % target.n == 0, "resample_nodes: grids are not nested");
    m = gf.n / target.n;
  } else {
    s = embed(s, target.n);
  }
  const Grid& gw = s.grid;
  discretize::CellNodeValues out{target, discretize::gauss_rule(quad_order), {}};
  const int q = quad_order;
  out.values.assign(static_cast<std::size_t>(q) * q, std::vector<cplx>(target.size()));
  SpectralField shifted(gw);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) {
      const double s1 = target.h * out.rule.nodes[a], s2 = target.h * out.rule.nodes[b];
      for (int k = 0; k < gw.n; ++k) {
        const cplx e1 = std::polar(1.0, gw.freq(k) * s1);
        for (int l = 0; l < gw.n; ++l)
          shifted(k, l) = s(k, l) * e1 * std::polar(1.0, gw.freq(l) * s2);
      }
      const LatticeField vals = inverse_dft(shifted, exec);
      auto& dst = out.values[a * q + b];
      for (int i = 0; i < target.n; ++i)
        for (int j = 0; j < target.n; ++j) dst[target.index(i, j)] = vals(m * i, m * j);
    }
  return out;
}

double spectral_distance(const LatticeField& a, const LatticeField& b) {
  require(std::abs(a.grid.L() - b.grid.L()) <= 1e-12 * a.grid.L(), "spectral_distance: boxes differ");
  const int nw = std::max(a.grid.n, b.grid.n);
  const SpectralField sa = embed(forward_dft(a), nw), sb = embed(forward_dft(b), nw);
  double acc = 0.0;
  for (std::size_t i = 0; i < sa.coeffs.size(); ++i) acc += std::norm(sa.coeffs[i] - sb.coeffs[i]);
  return std::sqrt(acc) / a.grid.L();
}

LimitStudy continuum_limit_study(const SimConfig& base, const std::vector<double>& hs,
                                 const LimitOptions& opt) {
  validate(base, true);
  require(base.initial.has_value(), "limit study: needs continuum initial data");
  require(hs.size() >= 4, "limit study: need at least 4 mesh sizes");
  for (double h : hs) {
    int e = 0;
    require(std::frexp(h, &e) == 0.5, "limit study: mesh sizes must be dyadic");
  }
  const double L = base.n * base.h;
  const double hmax = *std::max_element(hs.begin(), hs.end());
  require(opt.refinement >= 4, "limit study: reference refinement must be >= 4");
  SimConfig ref_cfg = base;
  ref_cfg.h = hmax;
  ref_cfg.n = static_cast<int>(std::lround(L / hmax));
  if (ref_cfg.dt == 0.0) throw DomainError("limit study: give an explicit common dt");
  LimitStudy study;
  const SimResult ref = continuum_reference(ref_cfg, opt.refinement);
  study.reference_h = hmax / opt.refinement;
  study.reference_mass = mass(ref.final);
  if (opt.check_reference)
    study.reference_change =
        spectral_distance(ref.final, continuum_reference(ref_cfg, 2 * opt.refinement).final);

  std::vector<std::pair<double, double>> samples;
  for (double h : hs) {
    SimConfig c = base;
    c.h = h;
    c.n = static_cast<int>(std::lround(L / h));
    require(std::abs(c.n * h - L) <= 1e-12 * L && c.n % 2 == 0,
            "limit study: h = " + std::to_string(h) + " does not tile the box");
    SimResult r;
    try {
      r = simulate(c);
    } catch (const NumericalAbort& e) {
      throw NumericalAbort(std::string(e.what()) + " [limit study, h = " + std::to_string(h) + "]");
    }
    const auto nodes = resample_nodes(ref.final, r.final.grid, opt.quad_order, base.exec);
    LimitRow row;
    row.h = h;
    row.n = c.n;
    row.error = discretize::continuum_l2_error(discretize::interpolate_ph(r.final), nodes, base.exec);
    row.mass_drift = r.monitors.max_mass_drift;
    row.boundary_fraction = r.monitors.max_boundary_fraction;
    row.steps = r.monitors.steps;
    study.rows.push_back(row);
    samples.emplace_back(h, row.error);
  }
  std::sort(study.rows.begin(), study.rows.end(),
            [](const LimitRow& a, const LimitRow& b) { return a.h > b.h; });
  study.monotone = true;
  for (std::size_t i = 1; i < study.rows.size(); ++i)
    if (!(study.rows[i].error < study.rows[i - 1].error)) study.monotone = false;
  const double lo = *std::min_element(hs.begin(), hs.end());
  study.fit = fit_power_law(samples, lo, hmax, 4, 0.0);
  return study;
}

}  // namespace dfnls::dynamics
