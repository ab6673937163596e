#include "dfnls/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace dfnls::fft {

namespace {

std::mutex planner_mutex;

// Plans are created once per (n, sign) with FFTW_ESTIMATE so the chosen
// algorithm, and therefore the rounding, does not depend on timing.
fftw_plan plan_for(int n, int sign) {
  static std::map<std::pair<int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(planner_mutex);
  auto key = std::make_pair(n, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<cplx> scratch(static_cast<std::size_t>(n) * n);
  auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
  fftw_plan plan = fftw_plan_dft_2d(n, n, p, p, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(key, plan);
  return plan;
}

}  // namespace

void transform(std::vector<cplx>& data, int n, int sign) {
  require(data.size() == static_cast<std::size_t>(n) * n, "fft: size mismatch");
  fftw_plan plan = plan_for(n, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD);
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, p, p);
}

}  // namespace dfnls::fft
