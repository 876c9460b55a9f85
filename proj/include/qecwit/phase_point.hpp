#pragma once

#include <cstddef>
#include <vector>

namespace qecwit {

/// A point x = (p, q) of a 2N-dimensional phase space. Momentum and position
/// carry the same units (those of hbar^{1/2}).
class PhasePoint {
 public:
  PhasePoint(double p, double q);
  PhasePoint(std::vector<double> p, std::vector<double> q);

  std::size_t dimension() const noexcept { return p_.size(); }
  const std::vector<double>& p() const noexcept { return p_; }
  const std::vector<double>& q() const noexcept { return q_; }
  double p(std::size_t i) const { return p_.at(i); }
  double q(std::size_t i) const { return q_.at(i); }

  static PhasePoint origin(std::size_t dimension);

 private:
  std::vector<double> p_;
  std::vector<double> q_;
};

}  // namespace qecwit
