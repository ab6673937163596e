#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dfnls/discretize.hpp"
#include "dfnls/fit.hpp"
#include "dfnls/lattice_core.hpp"

namespace dfnls::dynamics {

using discretize::ContinuumFunction;
using lattice_core::Grid;
using lattice_core::LatticeField;
using lattice_core::SymbolSpec;

struct SimConfig {
  double alpha = 1.5;
  int p = 3;
  int mu = 1;
  double h = 1.0 / 32;
  int n = 512;
  double dt = 0.0;  // 0: default, dt * sup symbol <= 0.5
  double T = 0.5;
  SymbolSpec symbol;  // symbol.alpha follows alpha
  bool nonlinear = true;
  std::optional<ContinuumFunction> initial;
  std::optional<LatticeField> initial_field;
  int quad_order = 4;
  int stride = 1;
  double mass_abort = 1e-6;      // relative mass drift that aborts
  double boundary_fraction = 1.0;  // mass fraction outside |x|_inf <= L/4 that aborts; 1 = record only
  Exec exec = Exec::parallel;
};

// Checks module preconditions; `limit` adds alpha > max(8/7, 2(p-1)/(p+1)).
void validate(const SimConfig& cfg, bool limit = false);
double limit_alpha_floor(int p);

double default_dt(const SimConfig& cfg);
// Step actually used: dt (or default) adjusted down so that T / dt is an integer.
double effective_dt(const SimConfig& cfg);
int step_count(const SimConfig& cfg);

struct Observables {
  std::vector<double> times;
  std::vector<double> mass;
  std::vector<double> energy;
  std::vector<double> supnorm;
};

struct Monitors {
  double max_mass_drift = 0.0;  // relative
  double max_boundary_fraction = 0.0;
  double max_supnorm = 0.0;
  int steps = 0;
};

struct SimResult {
  LatticeField final;
  Observables obs;
  Monitors monitors;
  double dt = 0.0;
  int threads = 1;
};

// Precomputed linear propagator e^{-i dt symbol} on the dual grid.
class Stepper {
 public:
  Stepper(const SimConfig& cfg, const Grid& g);
  void step(LatticeField& f) const;
  void linear(LatticeField& f) const;
  void nonlinear_half(LatticeField& f) const;
  double dt() const { return dt_; }

 private:
  SimConfig cfg_;
  Grid grid_;
  double dt_;
  std::vector<cplx> phase_;
};

// One Strang step: half nonlinear phase, linear flow, half nonlinear phase.
LatticeField step_strang(const LatticeField& f, const SimConfig& cfg);

double mass(const LatticeField& f);
double energy(const LatticeField& f, const SimConfig& cfg);
// Fraction of mass outside the central square |x|_inf <= L/4.
double boundary_fraction(const LatticeField& f);

LatticeField initial_field(const SimConfig& cfg, const Grid& g);

SimResult simulate(const SimConfig& cfg);

// Same scheme with |xi|^alpha on the refined grid (h / refinement, same box), started
// from point samples of the continuum data.
SimResult continuum_reference(const SimConfig& cfg, int refinement);

// Spectral evaluation of a fine periodic field at the tensor Gauss nodes of each cell of
// `target` (same box), by phase shifts of its DFT.
discretize::CellNodeValues resample_nodes(const LatticeField& fine, const Grid& target,
                                          int quad_order, Exec exec = Exec::parallel);

// ||a - b||_{L^2} between two fields on the same box via their spectra (zero-padded).
double spectral_distance(const LatticeField& a, const LatticeField& b);

struct LimitRow {
  double h = 0.0;
  int n = 0;
  double error = 0.0;
  double mass_drift = 0.0;
  double boundary_fraction = 0.0;
  int steps = 0;
};

struct LimitOptions {
  int refinement = 4;        // reference mesh = coarsest h / refinement
  int quad_order = 4;
  bool check_reference = false;  // also run the reference at twice the refinement
};

struct LimitStudy {
  std::vector<LimitRow> rows;
  DecayFit fit;
  bool monotone = false;
  double reference_h = 0.0;
  double reference_change = -1.0;  // spectral distance between refinements, if checked
  double reference_mass = 0.0;
};

// Error ||p_h u_h(T) - u(T)||_{L^2} per h against the continuum reference; log-log fit.
LimitStudy continuum_limit_study(const SimConfig& base, const std::vector<double>& hs,
                                 const LimitOptions& opt = {});

}  // namespace dfnls::dynamics
