#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dfnls {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

// Selects between the OpenMP kernel and its serial reference twin.
// Both paths reduce in the same fixed order, so results are identical.
enum class Exec { serial, parallel };

// Violated operation precondition (bad argument, out-of-domain input).
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Run aborted for numerical reasons (NaN, drift, resolution budget).
struct NumericalAbort : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent experiment configuration.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

}  // namespace dfnls
