#pragma once

#include <utility>
#include <vector>

namespace dfnls {

// Least-squares power law y = C x^slope fitted in log-log coordinates.
struct DecayFit {
  double slope = 0.0;
  double constant = 0.0;
  double residual = 0.0;  // RMS of log-deviations
  double window_lo = 0.0;
  double window_hi = 0.0;
  int count = 0;

  // Decay rate sigma in |J| ~ C tau^{-sigma}.
  double sigma() const { return -slope; }
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Fits samples (x, |y|) whose x lies in [lo, hi]. Requires >= min_count samples
// spanning >= min_decades; rejects zero or non-finite magnitudes.
DecayFit fit_power_law(const std::vector<std::pair<double, double>>& samples, double lo,
                       double hi, int min_count = 6, double min_decades = 1.0);

std::vector<double> log_spaced(double lo, double hi, int count);

}  // namespace dfnls
