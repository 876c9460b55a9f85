#include "qecwit/special_fn.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qecwit {
namespace detail {

Complex i0_series(Complex z) {
  using LComplex = std::complex<long double>;
  const LComplex zl(z.real(), z.imag());
  const LComplex quarter_z2 = zl * zl / 4.0L;
  const long double half_modulus = std::abs(zl) / 2.0L;

  LComplex term(1.0L, 0.0L);
  LComplex sum = term;
  for (int k = 1; k < 10000; ++k) {
    const long double kk = static_cast<long double>(k);
    term *= quarter_z2 / (kk * kk);
    sum += term;
    // Terms grow until k ~ |z|/2; only test for convergence past the peak.
    if (kk > half_modulus &&
        std::abs(term) <= std::numeric_limits<long double>::epsilon() * std::abs(sum)) {
      break;
    }
  }
  return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

namespace {

// Sums sum_k sign^k c_k / z^k with c_k = ((2k-1)!!)^2 / (k! 8^k), stopping at
// the smallest term (optimal truncation of the asymptotic series).
Complex asymptotic_sum(Complex z, double sign) {
  const Complex inv_z = 1.0 / z;
  Complex term(1.0, 0.0);
  Complex sum = term;
  double previous = std::abs(term);
  for (int k = 0; k < 200; ++k) {
    const double odd = 2.0 * k + 1.0;
    const Complex next = term * (sign * odd * odd / (8.0 * (k + 1.0))) * inv_z;
    const double magnitude = std::abs(next);
    if (magnitude >= previous) break;
    sum += next;
    term = next;
    previous = magnitude;
    if (magnitude <= 0.25 * std::numeric_limits<double>::epsilon() * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

Complex i0_asymptotic_scaled(Complex z) {
  if (z.real() < 0.0) {
    throw std::domain_error("i0_asymptotic_scaled requires Re z >= 0");
  }
  const Complex root = std::sqrt(2.0 * std::numbers::pi * z);
  Complex bracket = asymptotic_sum(z, 1.0);
  // Subdominant exponential across the Stokes line; it vanishes on the real
  // axis and carries the oscillation of I0 near the imaginary axis.
  if (z.imag() != 0.0) {
    const double side = z.imag() > 0.0 ? 1.0 : -1.0;
    bracket += Complex(0.0, side) * std::exp(-2.0 * z) * asymptotic_sum(z, -1.0);
  }
  return bracket / root;
}

Complex bessel_i0_scaled(Complex z, double crossover) {
  if (std::isnan(z.real()) || std::isnan(z.imag())) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {nan, nan};
  }
  const Complex w = z.real() < 0.0 ? -z : z;
  if (std::abs(w) < crossover) {
    return std::exp(-w) * i0_series(w);
  }
  return i0_asymptotic_scaled(w);
}

}  // namespace detail

Complex bessel_i0(Complex z) {
  if (!(std::abs(z.real()) <= kI0UnscaledLimit)) {
    if (std::isnan(z.real()) || std::isnan(z.imag())) {
      return detail::bessel_i0_scaled(z, kI0SeriesCrossover);
    }
    throw std::domain_error("bessel_i0: |Re z| = " + std::to_string(std::abs(z.real())) +
                            " overflows; use bessel_i0_scaled");
  }
  if (std::abs(z) < kI0SeriesCrossover) {
    return detail::i0_series(z);
  }
  const Complex w = z.real() < 0.0 ? -z : z;
  return std::exp(w) * detail::i0_asymptotic_scaled(w);
}

Complex bessel_i0_scaled(Complex z) { return detail::bessel_i0_scaled(z, kI0SeriesCrossover); }

LogModulusPhase bessel_i0_scaled_log(Complex z) {
  const Complex w = z.real() < 0.0 ? -z : z;
  const Complex scaled = bessel_i0_scaled(w);
  const double log_magnitude = w.real() + std::log(std::abs(scaled));
  const double phase = std::remainder(w.imag() + std::arg(scaled), 2.0 * std::numbers::pi);
  return {log_magnitude, phase};
}

}  // namespace qecwit
