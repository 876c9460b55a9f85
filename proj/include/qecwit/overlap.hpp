#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qecwit/quadrature.hpp"
#include "qecwit/shell_geometry.hpp"
#include "qecwit/wigner.hpp"

namespace qecwit {

enum class Method { kTangent, kExactBessel, kQuadrature };

std::string_view to_string(Method m);

/// Overlap <rho_pi>_w = int W_w W_pi dx of the normalized delta-shell with the
/// cat witness, split as total = positive_term - negative_term.
///
/// `normalization_constant` is the explicit prefactor multiplying the
/// unnormalized shell integrals: (omega / 2 pi) for the shell, times two equal
/// lobes, times the witness prefactor 1 / (2 pi hbar (1 - e^{-Q^2/hbar})).
struct OverlapReport {
  double positive_term = 0.0;
  double negative_term = 0.0;
  double total = 0.0;
  double ratio = 0.0;
  Method method = Method::kExactBessel;
  double predicted_factor = 0.0;
  double normalization_constant = 0.0;
};

OverlapReport make_report(double positive, double negative, Method method, double R, double omega,
                          const CatWitness& w);

/// exp(-Q^4 / (4 R^2 hbar)): the positive/negative ratio with P ~ Q^2/2R.
double predicted_factor(double R, double Q, double hbar);

double normalization_constant(double omega, const CatWitness& w);

/// hbar below this fraction of R^2 makes the angular integrand too narrow for
/// uniform nodes; quadrature is then skipped.
inline constexpr double kQuadratureHbarFloor = 1e-3;
bool quadrature_applicable(double R, double hbar);

/// Angular means of the two cat terms over a circle of radius `radius`
/// centred at (center_p, 0). `lobes` and `interference` follow the sign
/// convention of CatTerms.
struct SectionMeans {
  double lobes = 0.0;
  double interference = 0.0;
};

/// Closed forms in terms of e^{-z} I0(z): with D = sqrt(c^2 + Q^2),
///   lobes        = 2A e^{-(D - rho)^2/hbar} I0s(2 rho D / hbar)
///   interference = 2A Re[e^{-(c - rho)(c - rho + 2iQ)/hbar} I0s(2 rho (c + iQ) / hbar)].
SectionMeans cat_section_means_exact(double center_p, double radius, const CatWitness& w);

/// Same quantities by periodic trapezoid quadrature.
SectionMeans cat_section_means_quadrature(double center_p, double radius, const CatWitness& w,
                                          double rel_tol = 1e-12);

/// Tangent-line approximations and Bessel closed forms for the circle through
/// the origin (centre (R, 0)). omega cancels against the shell normalization
/// and is accepted only to mirror the physical parameter set.
double negative_term_tangent(double R, double omega, double Q, double hbar);
double positive_term_tangent(double R, double omega, double Q, double hbar);
double positive_term_exact(double R, double omega, double Q, double hbar);
double negative_term_exact(double R, double omega, double Q, double hbar);

/// log of positive_term_exact assembled as log(2A) - P^2/hbar + log(e^{-x} I0(x)),
/// x = 2 R sqrt(R^2 + Q^2) / hbar. Finite for hbar down to ~1e-300 R^2.
double log_positive_term_exact(double R, double omega, double Q, double hbar);

/// Requires the shell centre at (R, 0).
OverlapReport overlap_tangent(const CircularShell& shell, const CatWitness& w);
/// Requires the shell centre on the p-axis.
OverlapReport overlap_exact(const CircularShell& shell, const CatWitness& w);

/// Normalized overlap as the angular mean of the witness over the shell
/// circle. Lobes and interference are integrated separately. The initial node
/// count is raised to resolve the sqrt(hbar) width of the witness.
OverlapReport overlap_quadrature(const CircularShell& shell, const CatWitness& w,
                                 double rel_tol = 1e-10);

struct QuadratureEstimate {
  double value = 0.0;
  double previous = 0.0;
  std::size_t nodes = 0;
};

/// Angular mean of an arbitrary planar witness over the shell.
QuadratureEstimate overlap_quadrature(const CircularShell& shell, const PlanarFunction& witness,
                                      const TrapezoidOptions& opt = {});

enum class Negativity { kNegative, kNonNegative, kNotDetectable };

std::string_view to_string(Negativity n);

struct Verdict {
  double R = 0.0;
  double omega = 0.0;
  double hbar = 0.0;
  double Q = 0.0;
  std::vector<OverlapReport> methods;
  bool quadrature_skipped = false;
  bool methods_agree = true;
  Negativity negativity = Negativity::kNotDetectable;

  /// The exact Bessel report for curved shells, the tangent-line report for
  /// flat ones.
  const OverlapReport& primary() const;
  const OverlapReport* find(Method m) const;
};

class MethodDisagreement : public std::runtime_error {
 public:
  explicit MethodDisagreement(Verdict v);
  const Verdict& verdict() const noexcept { return verdict_; }

 private:
  Verdict verdict_;
};

/// Runs every applicable method and records whether their signs agree.
/// Never throws on disagreement.
Verdict evaluate_methods(double R, double omega, double hbar, double Q);

/// As evaluate_methods, but throws MethodDisagreement when the methods
/// disagree on the sign of the total.
Verdict verdict(double R, double omega, double hbar, double Q);

/// Verdict for a shell given by its local frame. A frame without positive
/// curvature is a straight line through the witness: the tangent-line
/// overlap (per unit length) is reported and negativity is not detectable.
Verdict verdict(const LocalFrame& frame, double hbar, double Q);

struct SweepConfig {
  double K = 1.0;
  double gamma = 0.2;
  std::vector<double> hbar_values;
  double R = 1.0;
  double omega = 1.0;

  /// Throws std::invalid_argument on non-positive parameters, gamma outside
  /// (0, 1/2) or hbar values that are not strictly descending.
  void validate() const;
};

/// Logarithmically spaced values from hi down to lo, `per_decade` per decade.
std::vector<double> descending_log_grid(double hi, double lo, int per_decade);

struct SweepRow {
  double hbar = 0.0;
  double Q = 0.0;
  double positive = 0.0;
  double negative = 0.0;
  double total = 0.0;
  double ratio = 0.0;
  double log_ratio = 0.0;
  double predicted_factor = 0.0;
};

struct SweepFit {
  bool available = false;
  double slope = 0.0;
  double intercept = 0.0;
  double predicted_slope = 0.0;  // -K^4 / (4 R^2)
  double slope_ratio = 0.0;      // slope / predicted_slope
  std::string note;
};

enum class SweepRegime { kExponential, kFlat };

struct SweepResult {
  std::vector<SweepRow> rows;
  SweepFit fit;
  SweepRegime regime = SweepRegime::kExponential;
};

/// One verdict per hbar with Q = K hbar^gamma, and a least-squares fit of
/// log(ratio) against hbar^{4 gamma - 1} (hbar^{-1/5} for gamma = 1/5). The
/// regime is flat when the predicted change of log(ratio) across the grid is
/// below one e-fold. Points may be evaluated concurrently.
SweepResult hbar_sweep(const SweepConfig& config, unsigned workers = 0);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Ordinary least squares; requires at least two distinct x values.
LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace qecwit
