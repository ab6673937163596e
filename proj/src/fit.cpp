#include "dfnls/fit.hpp"

#include <cmath>

#include "dfnls/common.hpp"

namespace dfnls {

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2, "fit_line: need >= 2 paired samples");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  require(sxx > 0.0, "fit_line: abscissae are all equal");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = y[i] - (f.intercept + f.slope * x[i]);
    ss += d * d;
  }
  f.residual = std::sqrt(ss / n);
  return f;
}

DecayFit fit_power_law(const std::vector<std::pair<double, double>>& samples, double lo,
                       double hi, int min_count, double min_decades) {
  std::vector<double> lx, ly;
  double xmin = INFINITY, xmax = 0.0;
  for (const auto& [x, y] : samples) {
    if (x < lo || x > hi) continue;
    const double m = std::abs(y);
    if (!(m > 0.0) || !std::isfinite(m) || !(x > 0.0))
      throw DomainError("fit_power_law: degenerate sample (zero or non-finite magnitude)");
    lx.push_back(std::log(x));
    ly.push_back(std::log(m));
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
  }
  if (static_cast<int>(lx.size()) < min_count)
    throw DomainError("fit_power_law: too few samples in the fit window");
  if (std::log10(xmax / xmin) < min_decades - 1e-9)
    throw DomainError("fit_power_law: samples span less than the required decades");
  const LineFit line = fit_line(lx, ly);
  DecayFit fit;
  fit.slope = line.slope;
  fit.constant = std::exp(line.intercept);
  fit.residual = line.residual;
  fit.window_lo = xmin;
  fit.window_hi = xmax;
  fit.count = static_cast<int>(lx.size());
  return fit;
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  require(lo > 0.0 && hi >= lo && count >= 1, "log_spaced: bad range");
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < count; ++i) out[i] = std::exp(a + (b - a) * i / (count - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

}  // namespace dfnls
