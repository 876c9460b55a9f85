#pragma once

#include <complex>

namespace qecwit {

using Complex = std::complex<double>;

/// Radius |z| at which I0 evaluation switches from the power series to the
/// large-argument expansion. Both branches are accurate to ~1e-12 here for
/// every argument direction; the series degrades near the imaginary axis
/// beyond it because of cancellation.
inline constexpr double kI0SeriesCrossover = 17.0;

/// Largest |Re z| accepted by the unscaled bessel_i0. exp(700) is close to
/// the double overflow threshold.
inline constexpr double kI0UnscaledLimit = 700.0;

/// Modified Bessel function I0(z) for complex z.
///
/// Throws std::domain_error when |Re z| > kI0UnscaledLimit; callers in that
/// regime must use bessel_i0_scaled or bessel_i0_scaled_log.
Complex bessel_i0(Complex z);

/// Exponentially scaled I0: returns e^{-z} I0(z) when Re z >= 0 and
/// e^{z} I0(z) otherwise (I0 is even). The result stays O(|z|^{-1/2}) for any
/// magnitude of z, so overlap formulas can fold the exponent in analytically.
Complex bessel_i0_scaled(Complex z);

struct LogModulusPhase {
  double log_magnitude;
  double phase;  // principal value in (-pi, pi]
};

/// log|I0(z)| and arg I0(z), evaluated without forming I0(z).
/// Valid for |z| up to (at least) 1e12. NaN input propagates.
LogModulusPhase bessel_i0_scaled_log(Complex z);

namespace detail {

/// Power series sum_k (z^2/4)^k / (k!)^2, accumulated in long double.
Complex i0_series(Complex z);

/// e^{-z} I0(z) from the large-argument expansion, summed to its smallest
/// term. Requires Re z >= 0.
Complex i0_asymptotic_scaled(Complex z);

/// bessel_i0_scaled with an explicit crossover radius (test hook).
Complex bessel_i0_scaled(Complex z, double crossover);

}  // namespace detail
}  // namespace qecwit
