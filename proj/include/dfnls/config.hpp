#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dfnls/dynamics.hpp"
#include "dfnls/oscillatory.hpp"

namespace dfnls::harness {

enum class Experiment { simulate, limit_study, dispersion_scan, manifold_scan, asymptotics };

std::string to_string(Experiment e);
Experiment experiment_from(const std::string& name);

// [simulate]: physics shared by simulate and limit-study.
struct SimBlock {
  double alpha = 1.5;
  int p = 3;
  int mu = 1;
  double h = 1.0 / 32;
  int n = 0;         // 0: box / h
  double box = 16.0;
  double dt = 0.0;   // 0: dt * sup symbol <= 0.5
  double T = 0.5;
  int stride = 10;
  std::string symbol = "discrete";  // discrete | continuum | long_range
  double q = 2.0;
  double radius = 0.0;
  bool nonlinear = true;
  double amplitude = 1.0;
  double width = 1.0;
  double k1 = 0.0;
  double k2 = 0.0;
  int quad_order = 4;
};

// [limit]
struct LimitBlock {
  std::vector<int> h_exponents{3, 4, 5, 6};  // h = 2^-e
  int refinement = 4;
  bool check_reference = false;
};

// [dispersion]
struct DispersionBlock {
  std::vector<double> alphas{1.5};
  std::string band = "S3";  // S1 | S2 | S3
  double tau_lo = 50.0;
  double tau_hi = 800.0;
  int samples = 9;
  double tol = 1e-6;
  bool scale_window = false;
  bool sweep = false;  // 16 x 16 velocity sanity sweep at tau_lo
};

// [manifold]
struct ManifoldBlock {
  std::vector<double> alphas{1.2, 1.5, 1.8};
  int count = 64;
};

// [asymptotics]
struct AsymptoticsBlock {
  double alpha = 1.5;
  std::string point = "cusp";  // cusp | fold | k1
  double tau_lo = 50.0;
  double tau_hi = 800.0;
  int samples = 9;
  double tol = 1e-6;
};

struct ExperimentConfig {
  Experiment experiment = Experiment::simulate;
  std::string out_dir = "out";
  std::uint64_t seed = 1;
  int threads = 0;  // 0: OpenMP default
  bool plot = false;
  SimBlock sim;
  LimitBlock limit;
  DispersionBlock dispersion;
  ManifoldBlock manifold;
  AsymptoticsBlock asymptotics;
  // Every resolved setting as "section.key" -> text, for output echoes.
  std::map<std::string, std::string> echo;
};

// key = value lines under [section] headers; '#' or ';' start comments.
// Unknown sections or keys, malformed values and violated preconditions throw ConfigError.
ExperimentConfig parse_config(const std::string& text,
                              std::optional<Experiment> experiment = std::nullopt);

// Re-validates after command-line overrides and refreshes the echo.
void finalize(ExperimentConfig& cfg);

dynamics::SimConfig to_sim_config(const ExperimentConfig& cfg);
oscillatory::Band band_from(const std::string& s);

}  // namespace dfnls::harness
