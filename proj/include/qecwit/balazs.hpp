#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qecwit/shell_geometry.hpp"
#include "qecwit/wigner.hpp"

namespace qecwit {

class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Circle of radius R whose topmost point (center_p, (q1 + q2)/2) touches the
/// interference line q = (q1 + q2)/2 of the witness.
CircularShell balazs_tangent_shell(const BalazsWitness& w, double R, double omega,
                                   double center_p = 0.0);

struct BalazsOverlap {
  double positive_terms = 0.0;  // the two delta-lines q = q1, q = q2
  double negative_term = 0.0;   // magnitude of the interference line
  double total = 0.0;
};

/// Overlap of the smeared Balazs witness with the normalized delta-shell, as
/// the angular mean over the circle. Throws GeometryError when the circle top
/// misses the interference line by more than epsilon.
BalazsOverlap balazs_overlap(const CircularShell& shell, const BalazsWitness& w, double hbar);

/// epsilon -> 0 limit of positive_terms: (omega / 2 pi) sum 1/|dH/dp| over
/// the transversal crossings of q = q1 and q = q2 with the circle.
double balazs_transversal_limit(const CircularShell& shell, const BalazsWitness& w);

struct BalazsLadderRow {
  double epsilon = 0.0;
  double positive = 0.0;
  double negative = 0.0;
  double total = 0.0;
};

struct TangencyStudy {
  std::vector<BalazsLadderRow> rows;
  double negative_exponent = 0.0;  // slope of log(negative) vs log(epsilon)
  double positive_exponent = 0.0;  // same for the transversal lines
  /// First rung from which every smaller epsilon gives total < 0.
  std::optional<std::size_t> crossover_rung;
};

/// Evaluates balazs_overlap along a strictly descending epsilon ladder (at
/// least 4 rungs) and fits the power laws. The witness's own epsilon is
/// replaced by each rung.
TangencyStudy tangency_exponent(const CircularShell& shell, const BalazsWitness& w, double hbar,
                                const std::vector<double>& epsilon_ladder, unsigned workers = 0);

}  // namespace qecwit
