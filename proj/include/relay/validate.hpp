#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace relay {

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::string detail;
};

struct ValidationOptions {
  std::uint64_t seed = 1;
  /// Samples for the Monte Carlo checks (sandwich pairs, SISO realizations, quadrature grid).
  std::size_t samples = 100'000;
  /// Q-function under test; replaced by the test harness for negative controls.
  std::function<double(double)> q_function;
};

/// Runs the invariant suite:
///   q-function              vs Simpson integration of the normal density
///   sandwich-bound          Fiedler bounds enclose the exact log-det, 2x2
///   density-normalization   marginal eigenvalue density integrates to 1
///   siso-rayleigh-oracle    HD SISO Monte Carlo outage vs closed form
///   quadrature-vs-mc        expected_logdet vs Monte Carlo means
///   moments-vs-quadrature   RSI-free hop moments vs expected_logdet
std::vector<CheckResult> run_validation(const ValidationOptions& options);

}  // namespace relay
