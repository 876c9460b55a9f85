#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qecwit/overlap.hpp"
#include "qecwit/special_fn.hpp"

using namespace qecwit;
using std::numbers::pi;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

struct Reference {
  double R;
  double Q;
  double hbar;
  double positive;
  double negative;
};

// Angular means of the two witness pieces over the circle through the origin,
// from mpmath adaptive quadrature at 40 digits (tests/oracle/freeze_values.py).
constexpr Reference kReferences[] = {
    {1.0, 0.3, 0.01, 0.72444628362849463, 0.87006715002271448},
    {1.0, 0.1, 0.1, 2.9947628797315443, 2.9915884255623633},
    {2.0, 0.5, 0.05, 0.18471647479929434, 0.19775536138787874},
    {1.0, 0.25118864315095802, 0.001, 1.0653939646676981, 2.7754327048565197},
};

}  // namespace

TEST_CASE("closed forms and quadrature reproduce the frozen oracle values") {
  for (const auto& ref : kReferences) {
    CAPTURE(ref.hbar);
    CHECK(rel(positive_term_exact(ref.R, 1.0, ref.Q, ref.hbar), ref.positive) <= 1e-12);
    CHECK(rel(negative_term_exact(ref.R, 1.0, ref.Q, ref.hbar), ref.negative) <= 1e-12);
    const OverlapReport quad =
        overlap_quadrature(CircularShell::through_origin(ref.R, 1.0), CatWitness(ref.Q, ref.hbar));
    CHECK(rel(quad.positive_term, ref.positive) <= 1e-9);
    CHECK(rel(quad.negative_term, ref.negative) <= 1e-9);
  }
}

TEST_CASE("quadrature of simple witnesses") {
  const CircularShell shell = CircularShell::through_origin(1.0, 1.0);
  SUBCASE("constant") {
    const QuadratureEstimate e = overlap_quadrature(shell, [](double, double) { return 1.0; });
    CHECK(e.value == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("coherent state at the origin") {
    // Gaussian arc-length integral: mean -> 1/(2 pi R sqrt(pi hbar)).
    double previous_gap = 1.0;
    for (double hbar : {1e-2, 1e-3, 1e-4}) {
      TrapezoidOptions opt;
      opt.initial_nodes = nodes_for(16.0 * pi / std::sqrt(hbar));
      const QuadratureEstimate e = overlap_quadrature(
          shell, [hbar](double p, double q) { return std::exp(-(p * p + q * q) / hbar) / (pi * hbar); },
          opt);
      const double limit = 1.0 / (2.0 * pi * std::sqrt(pi * hbar));
      const double gap = rel(e.value, limit);
      CHECK(gap < previous_gap);
      previous_gap = gap;
    }
    CHECK(previous_gap < 1e-3);
  }
  SUBCASE("non-convergence reports both estimates") {
    TrapezoidOptions opt;
    opt.max_nodes = 64;
    try {
      overlap_quadrature(shell, [](double p, double q) { return std::exp(-(p * p + q * q) / 1e-6); },
                         opt);
      FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
      CHECK(std::isfinite(e.last()));
      CHECK(std::isfinite(e.previous()));
    }
  }
}

TEST_CASE("cat witness at desk scale is negative") {
  const OverlapReport r = overlap_quadrature(CircularShell::through_origin(1.0, 1.0),
                                             CatWitness(0.3, 0.01));
  CHECK(r.total < 0.0);
  CHECK(r.method == Method::kQuadrature);
  CHECK(r.total == doctest::Approx(r.positive_term - r.negative_term));
  CHECK(r.ratio == doctest::Approx(r.positive_term / r.negative_term));
}

TEST_CASE("tangent approximations") {
  SUBCASE("1/R law") {
    CHECK(negative_term_tangent(2.0, 1.0, 0.3, 0.01) ==
          doctest::Approx(0.5 * negative_term_tangent(1.0, 1.0, 0.3, 0.01)).epsilon(1e-15));
  }
  SUBCASE("sqrt(hbar) times the prefactor") {
    for (double hbar : {1e-2, 1e-4}) {
      const CatWitness w(0.3, hbar);
      CHECK(negative_term_tangent(1.0, 1.0, 0.3, hbar) ==
            doctest::Approx(w.prefactor() * std::sqrt(hbar / pi)).epsilon(1e-14));
    }
  }
  SUBCASE("vanishing separation collapses the positive term onto the negative one") {
    const double Q = 1e-9;
    CHECK(positive_term_tangent(1.0, 1.0, Q, 0.01) ==
          doctest::Approx(negative_term_tangent(1.0, 1.0, Q, 0.01)).epsilon(1e-12));
  }
  SUBCASE("ratio of the tangent terms") {
    const double hbar = 1e-3;
    const double Q = std::pow(hbar, 0.2);
    const double P = intersection_distance(1.0, Q).exact;
    const double ratio = positive_term_tangent(1.0, 1.0, Q, hbar) /
                         negative_term_tangent(1.0, 1.0, Q, hbar);
    CHECK(ratio == doctest::Approx(1.0 / std::hypot(1.0, Q) * std::exp(-P * P / hbar)));
    CHECK(ratio < 1.0);
  }
  SUBCASE("negative term within 5% of quadrature at hbar = 0.01") {
    const OverlapReport q = overlap_quadrature(CircularShell::through_origin(1.0, 1.0),
                                               CatWitness(0.3, 0.01));
    CHECK(rel(negative_term_tangent(1.0, 1.0, 0.3, 0.01), q.negative_term) <= 0.05);
  }
  SUBCASE("both terms within 5% at hbar = 1e-3 and improving") {
    double last_pos = 1.0;
    double last_neg = 1.0;
    for (double hbar : {1e-3, 1e-4, 1e-5}) {
      const double Q = std::pow(hbar, 0.2);
      const double pos = rel(positive_term_tangent(1.0, 1.0, Q, hbar),
                             positive_term_exact(1.0, 1.0, Q, hbar));
      const double neg = rel(negative_term_tangent(1.0, 1.0, Q, hbar),
                             negative_term_exact(1.0, 1.0, Q, hbar));
      CHECK(pos <= 0.05);
      CHECK(neg <= 0.05);
      CHECK(pos < last_pos);
      CHECK(neg < last_neg);
      last_pos = pos;
      last_neg = neg;
    }
    const OverlapReport quad = overlap_quadrature(CircularShell::through_origin(1.0, 1.0),
                                                  CatWitness(std::pow(1e-3, 0.2), 1e-3));
    CHECK(rel(positive_term_tangent(1.0, 1.0, std::pow(1e-3, 0.2), 1e-3), quad.positive_term) <=
          0.05);
  }
}

TEST_CASE("exact closed forms") {
  SUBCASE("unscaled formula at R^2/hbar = 5") {
    const double R = 1.0;
    const double hbar = 0.2;
    for (double Q : {0.1, 0.4, 0.9}) {
      const CatWitness w(Q, hbar);
      const double d = std::hypot(R, Q);
      const double direct = 2.0 * w.prefactor() * std::exp(-(2.0 * R * R + Q * Q) / hbar) *
                            bessel_i0(Complex(2.0 * R * d / hbar, 0.0)).real();
      CHECK(rel(positive_term_exact(R, 1.0, Q, hbar), direct) <= 1e-10);
      const Complex z(2.0 * R * R / hbar, 2.0 * Q * R / hbar);
      const double direct_neg = 2.0 * w.prefactor() * (std::exp(-z) * bessel_i0(z)).real();
      CHECK(rel(negative_term_exact(R, 1.0, Q, hbar), direct_neg) <= 1e-10);
    }
  }
  SUBCASE("semiclassical collapse of the positive term") {
    const double R = 1.0;
    const double hbar = 1e-6;
    const double Q = std::pow(hbar, 0.2);
    const CatWitness w(Q, hbar);
    const double P = intersection_distance(R, Q).exact;
    const double collapsed = w.prefactor() * std::sqrt(hbar / pi) / std::sqrt(R * R + R * P) *
                             std::exp(-P * P / hbar);
    CHECK(rel(positive_term_exact(R, 1.0, Q, hbar), collapsed) <= 10.0 * hbar / (R * R));
  }
  SUBCASE("semiclassical limit of the negative term") {
    double last = 1.0;
    for (double hbar : {1e-4, 1e-6, 1e-8}) {
      const double Q = std::pow(hbar, 0.2);
      const double gap = rel(negative_term_exact(1.0, 1.0, Q, hbar),
                             negative_term_tangent(1.0, 1.0, Q, hbar));
      CHECK(gap < last);
      last = gap;
    }
    CHECK(last < 1e-3);
  }
  SUBCASE("log-domain assembly at R^2/hbar up to 1e9") {
    for (double hbar : {1e-3, 1e-6, 1e-9}) {
      const double R = 1.0;
      const double Q = std::pow(hbar, 0.2);
      const CatWitness w(Q, hbar);
      const double P = intersection_distance(R, Q).exact;
      const double x = 2.0 * R * std::hypot(R, Q) / hbar;
      // Independent large-argument form of log(e^{-x} I0(x)).
      const double log_scaled =
          -0.5 * std::log(2.0 * pi * x) +
          std::log1p(1.0 / (8.0 * x) + 9.0 / (128.0 * x * x) + 225.0 / (3072.0 * x * x * x));
      const double expected = std::log(2.0 * w.prefactor()) - P * P / hbar + log_scaled;
      CHECK(std::abs(log_positive_term_exact(R, 1.0, Q, hbar) - expected) <= 1e-9);
    }
  }
  SUBCASE("exact terms are positive magnitudes") {
    for (double hbar : {0.5, 0.05, 1e-3, 1e-7, 1e-11}) {
      for (double Q : {std::sqrt(hbar), std::pow(hbar, 0.2)}) {
        CHECK(positive_term_exact(1.0, 1.0, Q, hbar) >= 0.0);
        CHECK(negative_term_exact(1.0, 1.0, Q, hbar) >= 0.0);
      }
    }
  }
  SUBCASE("section means require a centre on the non-negative axis") {
    CHECK_THROWS_AS(cat_section_means_exact(-0.5, 1.0, CatWitness(0.3, 0.01)),
                    std::invalid_argument);
    const SectionMeans inner = cat_section_means_exact(1.0, 0.6, CatWitness(0.3, 0.01));
    const SectionMeans quad = cat_section_means_quadrature(1.0, 0.6, CatWitness(0.3, 0.01));
    CHECK(rel(inner.lobes, quad.lobes) <= 1e-8);
    CHECK(std::abs(inner.interference - quad.interference) <= 1e-8 * std::abs(quad.lobes));
  }
}

TEST_CASE("quadrature and closed forms agree across the declared band") {
  for (double hbar : {1e-1, 3e-2, 1e-2, 3e-3, 1e-3}) {
    for (double Q : {0.1, 0.3}) {
      for (double R : {1.0, 0.5}) {
        if (!quadrature_applicable(R, hbar)) continue;
        const CircularShell shell = CircularShell::through_origin(R, 1.0);
        const CatWitness w(Q, hbar);
        const OverlapReport e = overlap_exact(shell, w);
        const OverlapReport q = overlap_quadrature(shell, w);
        CHECK(rel(q.positive_term, e.positive_term) <= 1e-8);
        CHECK(rel(q.negative_term, e.negative_term) <= 1e-8);
      }
    }
  }
}

TEST_CASE("omega cancels from the normalized overlap") {
  for (double hbar : {0.05, 0.01, 1e-3}) {
    const CatWitness w(0.3, hbar);
    const double ref = overlap_exact(CircularShell::through_origin(1.0, 1.0), w).total;
    const double ref_q = overlap_quadrature(CircularShell::through_origin(1.0, 1.0), w).total;
    for (double omega : {0.5, 2.0}) {
      const CircularShell s = CircularShell::through_origin(1.0, omega);
      CHECK(rel(overlap_exact(s, w).total, ref) <= 1e-12);
      CHECK(rel(overlap_quadrature(s, w).total, ref_q) <= 1e-12);
      CHECK(rel(overlap_tangent(s, w).total,
                overlap_tangent(CircularShell::through_origin(1.0, 1.0), w).total) <= 1e-12);
    }
  }
}

TEST_CASE("verdicts") {
  SUBCASE("all methods negative at hbar = 1e-3") {
    const Verdict v = verdict(1.0, 1.0, 1e-3, std::pow(1e-3, 0.2));
    CHECK(v.methods.size() == 3);
    CHECK_FALSE(v.quadrature_skipped);
    CHECK(v.methods_agree);
    CHECK(v.negativity == Negativity::kNegative);
    for (const auto& r : v.methods) CHECK(r.total < 0.0);
    CHECK(v.primary().method == Method::kExactBessel);
  }
  SUBCASE("quadrature skipped below the regime guard") {
    const Verdict v = verdict(1.0, 1.0, 1e-5, std::pow(1e-5, 0.2));
    CHECK(v.quadrature_skipped);
    CHECK(v.find(Method::kQuadrature) == nullptr);
    CHECK(v.negativity == Negativity::kNegative);
  }
  SUBCASE("sign stability for hbar <= 0.1") {
    for (double hbar = 0.1; hbar > 1e-10; hbar /= 3.0) {
      const Verdict v = verdict(1.0, 1.0, hbar, std::pow(hbar, 0.2));
      CHECK(v.negativity == Negativity::kNegative);
    }
  }
  SUBCASE("disagreement is reported") {
    // Q comparable to R at large hbar: the tangent model loses the sign.
    const Verdict v = evaluate_methods(1.0, 1.0, 0.5, 0.1);
    CHECK_FALSE(v.methods_agree);
    CHECK_THROWS_AS(verdict(1.0, 1.0, 0.5, 0.1), MethodDisagreement);
  }
  SUBCASE("ratio against the predicted factor") {
    for (double hbar : {1e-4, 1e-6}) {
      const double Q = std::pow(hbar, 0.2);
      const Verdict v = verdict(1.0, 1.0, hbar, Q);
      const OverlapReport& r = v.primary();
      CHECK(r.predicted_factor == doctest::Approx(std::exp(-std::pow(Q, 4) / (4.0 * hbar))));
      const double band = 1.0 / std::hypot(1.0, Q);
      CHECK(r.ratio / r.predicted_factor >= band * 0.9);
      CHECK(r.ratio / r.predicted_factor <= 1.0 / (band * 0.9));
    }
  }
  SUBCASE("explicit normalization constant") {
    const CatWitness w(0.3, 0.01);
    CHECK(normalization_constant(2.0, w) == doctest::Approx(2.0 * w.prefactor() * 2.0 / (2.0 * pi)));
  }
  SUBCASE("straight shell") {
    const LocalFrame flat = local_frame(
        [](double p, double) { return HamiltonianJet{p, 1.0, 0.0, 0.0, 0.0, 0.0}; }, 0.0, 0.0);
    const Verdict v = verdict(flat, 0.01, 0.3);
    CHECK(v.negativity == Negativity::kNotDetectable);
    CHECK(v.primary().total == 0.0);
    // The same witness against the unit circle through the same point.
    const LocalFrame curved = local_frame(
        [](double p, double q) {
          return HamiltonianJet{0.0, p - 1.0, q, 1.0, 1.0, 0.0};
        },
        0.0, 0.0);
    CHECK(verdict(curved, 0.01, 0.3).negativity == Negativity::kNegative);
  }
  SUBCASE("invalid input") {
    CHECK_THROWS_AS(verdict(1.0, 1.0, 0.0, 0.3), std::invalid_argument);
    CHECK_THROWS_AS(verdict(1.0, 1.0, 0.01, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(verdict(-1.0, 1.0, 0.01, 0.3), std::invalid_argument);
  }
}

TEST_CASE("hbar sweep") {
  SUBCASE("default decade grid reproduces the exponential law") {
    SweepConfig config;
    config.hbar_values = descending_log_grid(1e-2, 1e-6, 1);
    CHECK(config.hbar_values.size() == 5);
    const SweepResult r = hbar_sweep(config, 2);
    REQUIRE(r.fit.available);
    CHECK(r.fit.predicted_slope == doctest::Approx(-0.25));
    CHECK(r.fit.slope_ratio >= 0.9);
    CHECK(r.fit.slope_ratio <= 1.1);
    CHECK(r.regime == SweepRegime::kExponential);
    for (std::size_t i = 1; i < r.rows.size(); ++i) CHECK(r.rows[i].ratio < r.rows[i - 1].ratio);
  }
  SUBCASE("single point") {
    SweepConfig config;
    config.hbar_values = {1e-3};
    const SweepResult r = hbar_sweep(config);
    CHECK(r.rows.size() == 1);
    CHECK_FALSE(r.fit.available);
    CHECK(r.fit.note.find("insufficient points") != std::string::npos);
  }
  SUBCASE("gamma near 1/2 is flat") {
    SweepConfig config;
    config.gamma = 0.49;
    config.hbar_values = descending_log_grid(1e-2, 1e-6, 1);
    const SweepResult r = hbar_sweep(config);
    CHECK(r.regime == SweepRegime::kFlat);
    for (const auto& row : r.rows) CHECK(row.ratio > 0.99);
  }
  SUBCASE("output independent of worker count") {
    SweepConfig config;
    config.hbar_values = descending_log_grid(1e-1, 1e-7, 2);
    const SweepResult a = hbar_sweep(config, 1);
    const SweepResult b = hbar_sweep(config, 4);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(a.rows[i].total == b.rows[i].total);
    CHECK(a.fit.slope == b.fit.slope);
  }
  SUBCASE("validation") {
    SweepConfig config;
    config.hbar_values = {1e-3, 1e-2};
    CHECK_THROWS_AS(hbar_sweep(config), std::invalid_argument);
    config.hbar_values = {1e-2, 1e-3};
    config.gamma = 0.5;
    CHECK_THROWS_AS(hbar_sweep(config), std::invalid_argument);
    CHECK_THROWS_AS(descending_log_grid(1e-6, 1e-2, 1), std::invalid_argument);
  }
}

TEST_CASE("least squares") {
  const LinearFit f = least_squares({0.0, 1.0, 2.0, 3.0}, {1.0, 3.0, 5.0, 7.0});
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK_THROWS_AS(least_squares({1.0}, {2.0}), std::invalid_argument);
}
