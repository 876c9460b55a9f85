#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "qecwit/overlap.hpp"
#include "qecwit/phase_point.hpp"
#include "qecwit/wigner.hpp"

namespace qecwit {

/// Quadratic normal form
///   H = omega/2 [(p1 - R)^2 + q1^2] + sum_j omega_j (p_j^2 + q_j^2) / 2
/// on R^{2N}. The plane x' = 0 is invariant and carries the circular shell of
/// the planar model.
class SeparableShellND {
 public:
  /// Throws std::invalid_argument unless every frequency and R are positive.
  SeparableShellND(double R, double omega, std::vector<double> transverse);

  double radius() const noexcept { return radius_; }
  double omega() const noexcept { return omega_; }
  const std::vector<double>& transverse() const noexcept { return transverse_; }
  std::size_t dimension() const noexcept { return transverse_.size() + 1; }
  double energy() const noexcept { return 0.5 * omega_ * radius_ * radius_; }

  double hamiltonian(const PhasePoint& x) const;

  /// Radius sqrt(R^2 - 2 e / omega) of the (p1, q1) section when the
  /// transverse modes hold energy e (zero beyond the shell energy).
  double section_radius(double transverse_energy) const;

  /// int dx delta(E' - H(x)) at energy E'.
  double density_of_states(double energy) const;

 private:
  double radius_;
  double omega_;
  std::vector<double> transverse_;
};

/// Convolution of e^{-rate_j s} over all j, i.e. the density of the total
/// transverse energy s under the product of transverse coherent-state
/// weights. Empty rates are not allowed.
double transverse_energy_density(const std::vector<double>& rates, double s);

namespace detail {
/// Same quantity from the matrix exponential of the bidiagonal generator
/// (used for three or more modes; exposed for cross-checking).
double transverse_energy_density_matrix(const std::vector<double>& rates, double s);
}  // namespace detail

enum class SectionMethod { kAuto, kQuadrature, kBessel };

struct ReductionOptions {
  /// kAuto integrates each section by angular quadrature when hbar allows
  /// it and falls back to the Bessel closed form otherwise.
  SectionMethod section = SectionMethod::kAuto;
  double rel_tol = 1e-10;
};

/// Normalized overlap of the tensor-product cat witness with delta(E - H) of
/// the separable shell. Transverse modes are integrated out through their
/// total energy e; the (p1, q1) section at each e is a circle of radius
/// section_radius(e) about (R, 0), averaged by the 2D section means.
/// Throws std::invalid_argument on a dimension mismatch.
OverlapReport overlap_nd_reduction(const SeparableShellND& shell, const CatWitnessND& witness,
                                   const ReductionOptions& options = {});

struct MonteCarloConfig {
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 1;
  /// Width of the Gaussian energy kernel; <= 0 selects default_smearing for
  /// the cat witness and 1e-3 * E otherwise.
  double smearing = 0.0;
  unsigned workers = 0;
};

struct MonteCarloEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  double positive = 0.0;
  double positive_error = 0.0;
  double negative = 0.0;
  double negative_error = 0.0;
  std::size_t samples = 0;
  double smearing = 0.0;
  double shell_volume = 0.0;
};

/// Mixture of isotropic Gaussians on R^{2N}.
struct GaussianProposal {
  struct Component {
    double weight = 1.0;
    PhasePoint mean = PhasePoint(0.0, 0.0);
    double sigma = 1.0;
  };
  std::vector<Component> components;

  /// Three components at (0, -Q), (0, 0), (0, Q) in the (p1, q1) plane with
  /// weights 1/4, 1/2, 1/4 and sigma^2 = hbar / 2, matching the witness
  /// envelope in every coordinate.
  static GaussianProposal for_cat(const CatWitnessND& witness);

  double density(const PhasePoint& x) const;
};

/// min(1e-3 E, 0.05 omega R hbar / (2 Q)): narrow enough that the energy
/// kernel does not average the interference fringes across shifted sections.
double default_smearing(const SeparableShellND& shell, const CatWitnessND& witness);

/// Smeared shell volume int dx delta_eps(E - H(x)) with a unit-mass Gaussian
/// kernel of width eps.
double smeared_shell_volume(const SeparableShellND& shell, double smearing);

/// Importance-sampled overlap with the energy delta smeared to a Gaussian.
/// Samples are drawn in fixed-size chunks, each with its own generator seeded
/// from (seed, chunk index), and partial sums are combined in chunk order, so
/// identical (seed, samples) give bit-identical results for any worker count.
/// Throws std::runtime_error when every weight vanishes.
MonteCarloEstimate overlap_nd_montecarlo(const SeparableShellND& shell,
                                         const CatWitnessND& witness,
                                         const MonteCarloConfig& config);

/// Same estimator for an arbitrary witness and proposal. positive/negative
/// are not split and mirror the total.
MonteCarloEstimate overlap_nd_montecarlo(const SeparableShellND& shell,
                                         const std::function<double(const PhasePoint&)>& witness,
                                         const GaussianProposal& proposal,
                                         const MonteCarloConfig& config);

/// Reduction overlap at Q = K hbar^gamma with the planar prediction
/// exp(-K^4 / (4 R^2 hbar^{1 - 4 gamma})) in predicted_factor.
OverlapReport verdict_nd(const SeparableShellND& shell, double K, double gamma, double hbar,
                         const ReductionOptions& options = {});

}  // namespace qecwit
