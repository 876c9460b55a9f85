#pragma once

#include <string>
#include <vector>

#include "qecwit/special_fn.hpp"

namespace qecwit {

struct SelfTestOptions {
  /// Crossover radius used by the Bessel dispatch check; exposed so a harness
  /// can confirm that a wrong value is caught.
  double bessel_crossover = kI0SeriesCrossover;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Runs the oracle cross-checks: Bessel dispatch and J0 identity, exponent
/// collapse, witness normalization, quadrature vs Bessel agreement, tangent
/// accuracy, omega-invariance and sign stability.
std::vector<CheckResult> run_selftest(const SelfTestOptions& options = {});

}  // namespace qecwit
