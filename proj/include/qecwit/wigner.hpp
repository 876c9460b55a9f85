#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "qecwit/phase_point.hpp"

namespace qecwit {

/// Odd Schroedinger cat state |Q> - |-Q> centred on the origin: coherent
/// states at q = +-Q, p = 0, with the interference trough along p = 0.
class CatWitness {
 public:
  /// Throws std::invalid_argument unless separation > 0 and hbar > 0.
  CatWitness(double separation, double hbar);

  /// Q = K * hbar^gamma.
  static CatWitness from_scaling(double K, double gamma, double hbar);

  double separation() const noexcept { return separation_; }
  double hbar() const noexcept { return hbar_; }

  /// 1 / (2 pi hbar (1 - e^{-Q^2/hbar})).
  double prefactor() const noexcept { return prefactor_; }

 private:
  double separation_;
  double hbar_;
  double prefactor_;
};

/// The cat Wigner function split into its two pieces. `lobes` is the
/// (positive) pair of coherent-state Gaussians, `interference` the cosine
/// term, stored with the sign convention W = lobes - interference.
struct CatTerms {
  double lobes = 0.0;
  double interference = 0.0;
  double total() const noexcept { return lobes - interference; }
};

CatTerms cat_wigner_terms(const CatWitness& w, double p, double q);
double cat_wigner(const CatWitness& w, double p, double q);
double cat_wigner(const CatWitness& w, const PhasePoint& x);

/// Cat witness in the (p1, q1) plane times a coherent state at the origin of
/// every transverse degree of freedom.
struct CatWitnessND {
  CatWitness planar;
  std::size_t transverse_count = 0;

  std::size_t dimension() const noexcept { return transverse_count + 1; }
};

/// Throws std::invalid_argument on a dimension mismatch.
double cat_wigner_nd(const CatWitnessND& w, const PhasePoint& x);

/// Same split as cat_wigner_terms, each piece multiplied by the transverse
/// Gaussian factor.
CatTerms cat_wigner_nd_terms(const CatWitnessND& w, const PhasePoint& x);

/// Coherent state Wigner function prod_j e^{-|x_j - c_j|^2/hbar} / (pi hbar).
double coherent_wigner(const PhasePoint& center, double hbar, const PhasePoint& x);

/// Unit-mass Gaussian of standard deviation `width`; stands in for delta(x).
double smeared_delta(double x, double width);

/// Balazs's superposition |q1> - |q2> of two position states, with each
/// delta-line smeared to a Gaussian of width epsilon.
class BalazsWitness {
 public:
  /// Throws std::invalid_argument unless q1 != q2 and epsilon > 0.
  BalazsWitness(double q1, double q2, double epsilon);

  double q1() const noexcept { return q1_; }
  double q2() const noexcept { return q2_; }
  double epsilon() const noexcept { return epsilon_; }
  double midpoint() const noexcept { return 0.5 * (q1_ + q2_); }
  BalazsWitness with_epsilon(double epsilon) const { return {q1_, q2_, epsilon}; }

 private:
  double q1_;
  double q2_;
  double epsilon_;
};

struct BalazsTerms {
  double lines = 0.0;         // delta(q - q1) + delta(q - q2)
  double interference = 0.0;  // delta(q - qm) cos((q2 - q1) p / hbar)
  double total() const noexcept { return lines - interference; }
};

BalazsTerms balazs_wigner_terms(const BalazsWitness& w, double hbar, double p, double q);
double balazs_wigner(const BalazsWitness& w, double hbar, double p, double q);
double balazs_wigner(const BalazsWitness& w, double hbar, const PhasePoint& x);

struct Rectangle {
  double p_min = -1.0;
  double p_max = 1.0;
  double q_min = -1.0;
  double q_max = 1.0;
};

/// Samples on a rectangle, row-major with one row per p_axis entry.
struct WignerGrid {
  std::vector<double> p_axis;
  std::vector<double> q_axis;
  std::vector<double> values;

  double at(std::size_t ip, std::size_t iq) const { return values.at(ip * q_axis.size() + iq); }
  double cell_area() const;
};

using PlanarFunction = std::function<double(double p, double q)>;

/// Axes include both rectangle edges. Throws std::invalid_argument when the
/// rectangle is empty/non-finite or either resolution is below 2. Rows may be
/// computed on several threads; the output does not depend on `workers`.
WignerGrid wigner_grid(const PlanarFunction& f, const Rectangle& region, std::size_t n_p,
                       std::size_t n_q, unsigned workers = 0);
WignerGrid wigner_grid(const CatWitness& w, const Rectangle& region, std::size_t n_p,
                       std::size_t n_q, unsigned workers = 0);

}  // namespace qecwit
