#pragma once

#include <array>
#include <functional>
#include <optional>
#include <stdexcept>

namespace qecwit {

/// Circular model H = omega/2 [(p - p_c)^2 + (q - q_c)^2] of an energy shell
/// of radius R. The default placement puts the centre at (R, 0), so the shell
/// passes through the origin with its tangent along the q-axis.
class CircularShell {
 public:
  /// Throws std::invalid_argument unless R > 0 and omega > 0.
  CircularShell(double radius, double omega, double center_p, double center_q);

  static CircularShell through_origin(double radius, double omega) {
    return {radius, omega, radius, 0.0};
  }

  double radius() const noexcept { return radius_; }
  double omega() const noexcept { return omega_; }
  double center_p() const noexcept { return center_p_; }
  double center_q() const noexcept { return center_q_; }

  /// Shell energy omega R^2 / 2 (value of the quadratic form on the circle
  /// measured from its centre).
  double energy() const noexcept { return 0.5 * omega_ * radius_ * radius_; }

  double hamiltonian(double p, double q) const noexcept;

  std::array<double, 2> point_at(double theta) const noexcept;

  CircularShell shifted(double dp, double dq) const {
    return {radius_, omega_, center_p_ + dp, center_q_ + dq};
  }

 private:
  double radius_;
  double omega_;
  double center_p_;
  double center_q_;
};

/// Value, gradient and Hessian of a planar Hamiltonian at one point.
struct HamiltonianJet {
  double value = 0.0;
  double dp = 0.0;
  double dq = 0.0;
  double dpp = 0.0;
  double dqq = 0.0;
  double dpq = 0.0;
};

using Hamiltonian2D = std::function<double(double p, double q)>;
using HamiltonianJetFn = std::function<HamiltonianJet(double p, double q)>;

/// Central differences with step (machine eps)^{1/3} * scale for the gradient
/// and (machine eps)^{1/4} * scale for the Hessian.
HamiltonianJet finite_difference_jet(const Hamiltonian2D& h, double p, double q,
                                     double scale = 1.0);

/// Quadratic part a p^2 + b q^2 + c p q of H - E in the rotated frame.
struct QuadraticCoefficients {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

using Matrix2 = std::array<std::array<double, 2>, 2>;

/// Local data of an energy shell at a non-critical point x0.
///
/// `rotation` maps displacements from x0 into the frame where the gradient
/// points along -p: rotation * grad H = (-alpha, 0). When the level-set
/// curvature is not positive the frame is marked `curved == false`, radius and
/// omega are left at zero and only the tangent-line model applies.
struct LocalFrame {
  double p0 = 0.0;
  double q0 = 0.0;
  double energy = 0.0;
  double alpha = 0.0;
  QuadraticCoefficients quad;
  double curvature = 0.0;
  double radius = 0.0;
  double omega = 0.0;
  Matrix2 rotation{};
  bool curved = false;

  /// The osculating circle in frame coordinates (centre at (R, 0)).
  std::optional<CircularShell> circular_shell() const;
};

class CriticalPointError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct FrameTolerances {
  double gradient = 1e-12;   // |grad H| below this is a critical point
  double curvature = 1e-12;  // kappa <= this is treated as flat
};

/// Builds the local frame from analytic derivatives.
/// Throws CriticalPointError when |grad H(x0)| < tol.gradient.
LocalFrame local_frame(const HamiltonianJetFn& h, double p0, double q0,
                       const FrameTolerances& tol = {});

/// Same, with derivatives from finite_difference_jet at the given length scale.
LocalFrame local_frame(const Hamiltonian2D& h, double p0, double q0, double scale = 1.0,
                       const FrameTolerances& tol = {});

/// Level-set curvature (H_q^2 H_pp - 2 H_p H_q H_pq + H_p^2 H_qq) / |grad H|^3.
double level_set_curvature(const HamiltonianJet& jet);

struct IntersectionDistance {
  double exact = 0.0;   // sqrt(R^2 + Q^2) - R
  double approx = 0.0;  // Q^2 / (2R)
};

/// Distance from a coherent-state centre at (0, Q) to the circle of radius R
/// centred at (R, 0), measured along the line joining the two centres.
IntersectionDistance intersection_distance(double R, double Q);

/// Phase-space volume of the delta-shell, int dx delta(E - H(x)) = 2 pi / omega.
double shell_normalization(const CircularShell& shell);

}  // namespace qecwit
