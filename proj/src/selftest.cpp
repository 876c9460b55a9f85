#include "qecwit/selftest.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qecwit/overlap.hpp"
#include "qecwit/wigner.hpp"

namespace qecwit {
namespace {

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

CheckResult bessel_dispatch(double crossover) {
  double worst = 0.0;
  for (double x : {0.5, 3.0, 8.0, 12.0, 16.0, 18.0, 22.0, 30.0, 40.0}) {
    const Complex got = detail::bessel_i0_scaled(Complex(x, 0.0), crossover);
    const double ref = std::exp(-x) * detail::i0_series(Complex(x, 0.0)).real();
    worst = std::max(worst, rel_err(got.real(), ref));
  }
  for (double y : {3.0, 6.0, 9.0, 12.0, 15.0, 18.0, 22.0, 26.0, 30.0}) {
    const Complex got = detail::bessel_i0_scaled(Complex(0.0, y), crossover);
    const Complex ref = std::exp(Complex(0.0, -y)) * std::cyl_bessel_j(0.0, y);
    worst = std::max(worst, std::abs(got - ref));
  }
  return {"bessel_dispatch", worst <= 1e-12,
          "crossover " + sci(crossover) + ", worst error " + sci(worst) + " (tol 1e-12)"};
}

CheckResult bessel_crossover_band() {
  double worst = 0.0;
  for (double r = 25.0; r <= 35.0; r += 2.5) {
    for (int k = -4; k <= 4; ++k) {
      const Complex z = std::polar(r, k * std::numbers::pi / 16.0);
      const Complex series = std::exp(-z) * detail::i0_series(z);
      const Complex asym = detail::i0_asymptotic_scaled(z);
      worst = std::max(worst, std::abs(series - asym) / std::abs(asym));
    }
  }
  return {"bessel_crossover_band", worst <= 1e-10,
          "25<=|z|<=35, |arg z|<=pi/4: worst relative gap " + sci(worst) + " (tol 1e-10)"};
}

CheckResult bessel_j0_identity() {
  double worst = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double y = 0.1 * i;
    worst = std::max(worst, std::abs(bessel_i0(Complex(0.0, y)).real() - std::cyl_bessel_j(0.0, y)));
  }
  return {"bessel_j0_identity", worst <= 1e-12,
          "I0(iy) vs J0(y), y in [0,10]: worst " + sci(worst) + " (tol 1e-12)"};
}

CheckResult exponent_collapse() {
  double worst_identity = 0.0;
  for (double R : {0.5, 1.0, 3.0}) {
    for (double Q : {1e-3, 0.05, 0.3, 1.0}) {
      const double d = std::hypot(R, Q);
      const double lhs = 2.0 * R * d - 2.0 * R * R - Q * Q;
      const double P = intersection_distance(R, Q).exact;
      worst_identity = std::max(worst_identity, std::abs(lhs + P * P) / (2.0 * R * R + Q * Q));
    }
  }
  // Scaled assembly against the unscaled formula where the latter is finite.
  const double R = 1.0;
  const double Q = 0.3;
  const double hbar = 0.2;
  const CatWitness w(Q, hbar);
  const double direct = 2.0 * w.prefactor() * std::exp(-(2.0 * R * R + Q * Q) / hbar) *
                        bessel_i0(Complex(2.0 * R * std::hypot(R, Q) / hbar, 0.0)).real();
  const double assembled = positive_term_exact(R, 1.0, Q, hbar);
  const double gap = rel_err(assembled, direct);
  return {"exponent_collapse", worst_identity <= 1e-15 && gap <= 1e-10,
          "identity residual " + sci(worst_identity) + ", scaled vs unscaled " + sci(gap)};
}

CheckResult witness_normalization() {
  const CatWitness w(0.3, 0.01);
  const Rectangle region{-0.7, 0.7, -1.1, 1.1};
  const WignerGrid grid = wigner_grid(w, region, 561, 881, 1);
  double sum = 0.0;
  for (double v : grid.values) sum += v;
  const double integral = sum * grid.cell_area();
  return {"witness_normalization", std::abs(integral - 1.0) <= 1e-6,
          "grid integral of cat Wigner function " + sci(integral - 1.0) + " from 1"};
}

CheckResult method_agreement() {
  double worst = 0.0;
  for (double hbar : {1e-1, 1e-2, 1e-3}) {
    for (double Q : {0.1, 0.3}) {
      const CircularShell shell = CircularShell::through_origin(1.0, 1.0);
      const CatWitness w(Q, hbar);
      const OverlapReport exact = overlap_exact(shell, w);
      const OverlapReport quad = overlap_quadrature(shell, w);
      worst = std::max({worst, rel_err(quad.positive_term, exact.positive_term),
                        rel_err(quad.negative_term, exact.negative_term)});
    }
  }
  return {"quadrature_vs_bessel", worst <= 1e-8, "worst relative gap " + sci(worst) + " (tol 1e-8)"};
}

CheckResult tangent_accuracy() {
  const double hbar = 1e-3;
  const double Q = std::pow(hbar, 0.2);
  const double pos = rel_err(positive_term_tangent(1.0, 1.0, Q, hbar),
                             positive_term_exact(1.0, 1.0, Q, hbar));
  const double neg = rel_err(negative_term_tangent(1.0, 1.0, Q, hbar),
                             negative_term_exact(1.0, 1.0, Q, hbar));
  return {"tangent_accuracy", pos <= 0.05 && neg <= 0.05,
          "hbar=1e-3: positive " + sci(pos) + ", negative " + sci(neg) + " (tol 5e-2)"};
}

CheckResult omega_invariance() {
  const CatWitness w(0.3, 0.01);
  const double ref = overlap_quadrature(CircularShell::through_origin(1.0, 1.0), w).total;
  double worst = 0.0;
  for (double omega : {0.5, 2.0}) {
    const CircularShell shell = CircularShell::through_origin(1.0, omega);
    worst = std::max({worst, rel_err(overlap_quadrature(shell, w).total, ref),
                      rel_err(overlap_exact(shell, w).total, ref)});
  }
  return {"omega_invariance", worst <= 1e-12, "worst relative spread " + sci(worst)};
}

CheckResult sign_stability() {
  bool ok = true;
  std::string failing;
  for (double hbar : {1e-1, 5e-2, 2e-2, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
    const Verdict v = evaluate_methods(1.0, 1.0, hbar, std::pow(hbar, 0.2));
    if (!v.methods_agree || v.negativity != Negativity::kNegative) {
      ok = false;
      failing += " " + sci(hbar);
    }
  }
  return {"sign_stability", ok,
          ok ? "total < 0 by every method for hbar in [1e-6, 1e-1]" : "failing hbar:" + failing};
}

}  // namespace

std::vector<CheckResult> run_selftest(const SelfTestOptions& options) {
  return {bessel_dispatch(options.bessel_crossover),
          bessel_crossover_band(),
          bessel_j0_identity(),
          exponent_collapse(),
          witness_normalization(),
          method_agreement(),
          tangent_accuracy(),
          omega_invariance(),
          sign_stability()};
}

}  // namespace qecwit
