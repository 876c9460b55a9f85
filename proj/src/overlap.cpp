#include "qecwit/overlap.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "qecwit/parallel.hpp"
#include "qecwit/special_fn.hpp"

namespace qecwit {

using std::numbers::pi;

std::string_view to_string(Method m) {
  switch (m) {
    case Method::kTangent:
      return "tangent";
    case Method::kExactBessel:
      return "exact_bessel";
    case Method::kQuadrature:
      return "quadrature";
  }
  return "unknown";
}

std::string_view to_string(Negativity n) {
  switch (n) {
    case Negativity::kNegative:
      return "negative";
    case Negativity::kNonNegative:
      return "non_negative";
    case Negativity::kNotDetectable:
      return "not_detectable";
  }
  return "unknown";
}

double predicted_factor(double R, double Q, double hbar) {
  const double q2 = Q * Q;
  return std::exp(-q2 * q2 / (4.0 * R * R * hbar));
}

double normalization_constant(double omega, const CatWitness& w) {
  return omega / (2.0 * pi) * 2.0 * w.prefactor();
}

OverlapReport make_report(double positive, double negative, Method method, double R, double omega,
                          const CatWitness& w) {
  OverlapReport r;
  r.positive_term = positive;
  r.negative_term = negative;
  r.total = positive - negative;
  r.ratio = positive / negative;
  r.method = method;
  r.predicted_factor = predicted_factor(R, w.separation(), w.hbar());
  r.normalization_constant = normalization_constant(omega, w);
  return r;
}

bool quadrature_applicable(double R, double hbar) {
  return hbar >= kQuadratureHbarFloor * R * R * (1.0 - 1e-12);
}

SectionMeans cat_section_means_exact(double center_p, double radius, const CatWitness& w) {
  const double h = w.hbar();
  const double Q = w.separation();
  const double two_a = 2.0 * w.prefactor();

  if (!(center_p >= 0.0) || !(radius >= 0.0)) {
    throw std::invalid_argument("cat_section_means_exact: need centre p >= 0 and radius >= 0");
  }
  const double d = std::hypot(center_p, Q);
  // d - radius = (d - c) + (c - radius), the first piece without cancellation.
  const double gap = Q * Q / (d + center_p) + (center_p - radius);
  const double lobes =
      two_a * std::exp(-gap * gap / h) * bessel_i0_scaled(Complex(2.0 * radius * d / h, 0.0)).real();

  const double shift = center_p - radius;
  const Complex phase = std::exp(Complex(-shift * shift / h, -2.0 * Q * shift / h));
  const Complex z = 2.0 * radius * Complex(center_p, Q) / h;
  const double interference = two_a * (phase * bessel_i0_scaled(z)).real();
  return {lobes, interference};
}

SectionMeans cat_section_means_quadrature(double center_p, double radius, const CatWitness& w,
                                          double rel_tol) {
  TrapezoidOptions opt;
  opt.initial_nodes = nodes_for(8.0 * 2.0 * pi * radius / std::sqrt(w.hbar()));
  opt.rel_tol = rel_tol;
  opt.abs_floor = 1e-15 * w.prefactor();
  const auto mean = periodic_mean<2>(
      [&](double theta) {
        const CatTerms t =
            cat_wigner_terms(w, center_p + radius * std::cos(theta), radius * std::sin(theta));
        return std::array<double, 2>{t.lobes, t.interference};
      },
      opt);
  return {mean.value[0], mean.value[1]};
}

double negative_term_tangent(double R, double /*omega*/, double Q, double hbar) {
  const CatWitness w(Q, hbar);
  return w.prefactor() * std::sqrt(hbar / pi) / R;
}

double positive_term_tangent(double R, double /*omega*/, double Q, double hbar) {
  const CatWitness w(Q, hbar);
  const IntersectionDistance P = intersection_distance(R, Q);
  return w.prefactor() * std::sqrt(hbar / pi) / std::hypot(R, Q) *
         std::exp(-P.exact * P.exact / hbar);
}

double positive_term_exact(double R, double /*omega*/, double Q, double hbar) {
  return cat_section_means_exact(R, R, CatWitness(Q, hbar)).lobes;
}

double negative_term_exact(double R, double /*omega*/, double Q, double hbar) {
  return cat_section_means_exact(R, R, CatWitness(Q, hbar)).interference;
}

double log_positive_term_exact(double R, double /*omega*/, double Q, double hbar) {
  const CatWitness w(Q, hbar);
  const IntersectionDistance P = intersection_distance(R, Q);
  const double x = 2.0 * R * std::hypot(R, Q) / hbar;
  return std::log(2.0 * w.prefactor()) - P.exact * P.exact / hbar +
         std::log(bessel_i0_scaled(Complex(x, 0.0)).real());
}

namespace {

void require_through_origin(const CircularShell& shell, const char* who) {
  const double tol = 1e-12 * shell.radius();
  if (std::abs(shell.center_p() - shell.radius()) > tol || std::abs(shell.center_q()) > tol) {
    throw std::invalid_argument(std::string(who) +
                                ": shell must pass through the witness centre (centre at (R, 0))");
  }
}

}  // namespace

OverlapReport overlap_tangent(const CircularShell& shell, const CatWitness& w) {
  require_through_origin(shell, "overlap_tangent");
  const double R = shell.radius();
  const double omega = shell.omega();
  return make_report(positive_term_tangent(R, omega, w.separation(), w.hbar()),
                     negative_term_tangent(R, omega, w.separation(), w.hbar()), Method::kTangent,
                     R, omega, w);
}

OverlapReport overlap_exact(const CircularShell& shell, const CatWitness& w) {
  if (std::abs(shell.center_q()) > 1e-12 * shell.radius()) {
    throw std::invalid_argument("overlap_exact: shell centre must lie on the p-axis");
  }
  const SectionMeans m = cat_section_means_exact(shell.center_p(), shell.radius(), w);
  return make_report(m.lobes, m.interference, Method::kExactBessel, shell.radius(), shell.omega(),
                     w);
}

OverlapReport overlap_quadrature(const CircularShell& shell, const CatWitness& w, double rel_tol) {
  TrapezoidOptions opt;
  opt.initial_nodes = nodes_for(8.0 * 2.0 * pi * shell.radius() / std::sqrt(w.hbar()));
  opt.rel_tol = rel_tol;
  opt.abs_floor = 1e-15 * w.prefactor();
  const auto mean = periodic_mean<2>(
      [&](double theta) {
        const auto [p, q] = shell.point_at(theta);
        const CatTerms t = cat_wigner_terms(w, p, q);
        return std::array<double, 2>{t.lobes, t.interference};
      },
      opt);
  return make_report(mean.value[0], mean.value[1], Method::kQuadrature, shell.radius(),
                     shell.omega(), w);
}

QuadratureEstimate overlap_quadrature(const CircularShell& shell, const PlanarFunction& witness,
                                      const TrapezoidOptions& opt) {
  const auto mean = periodic_mean<1>(
      [&](double theta) {
        const auto [p, q] = shell.point_at(theta);
        return std::array<double, 1>{witness(p, q)};
      },
      opt);
  return {mean.value[0], mean.previous[0], mean.nodes};
}

const OverlapReport& Verdict::primary() const {
  if (const OverlapReport* exact = find(Method::kExactBessel)) return *exact;
  return methods.at(0);
}

const OverlapReport* Verdict::find(Method m) const {
  for (const auto& r : methods) {
    if (r.method == m) return &r;
  }
  return nullptr;
}

namespace {

std::string disagreement_message(const Verdict& v) {
  std::string msg = "methods disagree on the sign of the overlap (R=" + std::to_string(v.R) +
                    ", hbar=" + std::to_string(v.hbar) + ", Q=" + std::to_string(v.Q) + "):";
  for (const auto& r : v.methods) {
    msg += " ";
    msg += to_string(r.method);
    msg += "=" + std::to_string(r.total);
  }
  return msg;
}

}  // namespace

MethodDisagreement::MethodDisagreement(Verdict v)
    : std::runtime_error(disagreement_message(v)), verdict_(std::move(v)) {}

Verdict evaluate_methods(double R, double omega, double hbar, double Q) {
  const CircularShell shell = CircularShell::through_origin(R, omega);
  const CatWitness w(Q, hbar);

  Verdict v;
  v.R = R;
  v.omega = omega;
  v.hbar = hbar;
  v.Q = Q;
  v.methods.push_back(overlap_tangent(shell, w));
  v.methods.push_back(overlap_exact(shell, w));
  if (quadrature_applicable(R, hbar)) {
    v.methods.push_back(overlap_quadrature(shell, w));
  } else {
    v.quadrature_skipped = true;
  }

  const bool negative = v.primary().total < 0.0;
  for (const auto& r : v.methods) {
    if ((r.total < 0.0) != negative) v.methods_agree = false;
  }
  v.negativity = negative ? Negativity::kNegative : Negativity::kNonNegative;
  return v;
}

Verdict verdict(double R, double omega, double hbar, double Q) {
  Verdict v = evaluate_methods(R, omega, hbar, Q);
  if (!v.methods_agree) throw MethodDisagreement(std::move(v));
  return v;
}

Verdict verdict(const LocalFrame& frame, double hbar, double Q) {
  if (frame.curved) return verdict(frame.radius, frame.omega, hbar, Q);

  // Straight shell p = 0 through the trough: per unit length the lobes and
  // the interference line integrals are both 2A sqrt(pi hbar).
  const CatWitness w(Q, hbar);
  const double line = 2.0 * w.prefactor() * std::sqrt(pi * hbar);
  Verdict v;
  v.hbar = hbar;
  v.Q = Q;
  v.quadrature_skipped = true;
  OverlapReport r;
  r.positive_term = line;
  r.negative_term = line;
  r.total = r.positive_term - r.negative_term;
  r.ratio = 1.0;
  r.method = Method::kTangent;
  r.predicted_factor = 1.0;
  r.normalization_constant = 2.0 * w.prefactor();
  v.methods.push_back(r);
  v.negativity = Negativity::kNotDetectable;
  return v;
}

void SweepConfig::validate() const {
  if (!(K > 0.0)) throw std::invalid_argument("SweepConfig: K must be positive");
  if (!(gamma > 0.0 && gamma < 0.5)) {
    throw std::invalid_argument("SweepConfig: gamma must lie in (0, 1/2)");
  }
  if (!(R > 0.0)) throw std::invalid_argument("SweepConfig: R must be positive");
  if (!(omega > 0.0)) throw std::invalid_argument("SweepConfig: omega must be positive");
  if (hbar_values.empty()) throw std::invalid_argument("SweepConfig: no hbar values");
  for (std::size_t i = 0; i < hbar_values.size(); ++i) {
    if (!(hbar_values[i] > 0.0)) throw std::invalid_argument("SweepConfig: hbar must be positive");
    if (i > 0 && !(hbar_values[i] < hbar_values[i - 1])) {
      throw std::invalid_argument("SweepConfig: hbar values must be strictly descending");
    }
  }
}

std::vector<double> descending_log_grid(double hi, double lo, int per_decade) {
  if (!(hi > 0.0 && lo > 0.0 && hi >= lo) || per_decade < 1) {
    throw std::invalid_argument("descending_log_grid: need hi >= lo > 0 and per_decade >= 1");
  }
  const double top = std::log10(hi);
  const long steps = std::lround((top - std::log10(lo)) * per_decade);
  std::vector<double> grid;
  for (long k = 0; k <= steps; ++k) {
    grid.push_back(std::pow(10.0, (top * per_decade - static_cast<double>(k)) / per_decade));
  }
  return grid;
}

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("least_squares: need at least two (x, y) pairs");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("least_squares: x values are all equal");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

SweepResult hbar_sweep(const SweepConfig& config, unsigned workers) {
  config.validate();
  const std::size_t n = config.hbar_values.size();

  SweepResult out;
  out.rows.resize(n);
  parallel_for(n, workers, [&](std::size_t i) {
    const double hbar = config.hbar_values[i];
    const double Q = config.K * std::pow(hbar, config.gamma);
    const Verdict v = verdict(config.R, config.omega, hbar, Q);
    const OverlapReport& r = v.primary();
    SweepRow& row = out.rows[i];
    row.hbar = hbar;
    row.Q = Q;
    row.positive = r.positive_term;
    row.negative = r.negative_term;
    row.total = r.total;
    row.ratio = r.ratio;
    row.log_ratio = std::log(r.ratio);
    row.predicted_factor = r.predicted_factor;
  });

  const double k2 = config.K * config.K;
  out.fit.predicted_slope = -k2 * k2 / (4.0 * config.R * config.R);
  const double exponent = 4.0 * config.gamma - 1.0;

  std::vector<double> x;
  std::vector<double> y;
  for (const auto& row : out.rows) {
    x.push_back(std::pow(row.hbar, exponent));
    y.push_back(row.log_ratio);
  }
  double span = 0.0;
  if (n >= 2) span = std::abs(x.back() - x.front());
  out.regime = std::abs(out.fit.predicted_slope) * span < 1.0 ? SweepRegime::kFlat
                                                             : SweepRegime::kExponential;

  if (n < 2) {
    out.fit.note = "insufficient points for a fit (need at least 2 hbar values)";
    return out;
  }
  const LinearFit fit = least_squares(x, y);
  out.fit.available = true;
  out.fit.slope = fit.slope;
  out.fit.intercept = fit.intercept;
  out.fit.slope_ratio = fit.slope / out.fit.predicted_slope;
  out.fit.note = out.regime == SweepRegime::kFlat
                     ? "flat regime: predicted log-ratio changes by less than one e-fold"
                     : "exponential regime";
  return out;
}

}  // namespace qecwit
