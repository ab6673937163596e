#include "dfnls/grid.hpp"

#include <cmath>

namespace dfnls::lattice_core {

Grid make_grid(double h, int n) {
  require(n >= 4 && n % 2 == 0, "grid: n must be even and >= 4");
  require(h > 0.0 && std::isfinite(h), "grid: h must be positive");
  return Grid{h, n};
}

bool all_finite(const LatticeField& f) {
  for (const auto& z : f.values)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

}  // namespace dfnls::lattice_core
