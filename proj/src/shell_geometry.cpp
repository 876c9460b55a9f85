#include "qecwit/shell_geometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace qecwit {

CircularShell::CircularShell(double radius, double omega, double center_p, double center_q)
    : radius_(radius), omega_(omega), center_p_(center_p), center_q_(center_q) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("CircularShell: radius must be positive, got " +
                                std::to_string(radius));
  }
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw std::invalid_argument("CircularShell: omega must be positive, got " +
                                std::to_string(omega));
  }
  if (!std::isfinite(center_p) || !std::isfinite(center_q)) {
    throw std::invalid_argument("CircularShell: centre must be finite");
  }
}

double CircularShell::hamiltonian(double p, double q) const noexcept {
  const double dp = p - center_p_;
  const double dq = q - center_q_;
  return 0.5 * omega_ * (dp * dp + dq * dq);
}

std::array<double, 2> CircularShell::point_at(double theta) const noexcept {
  return {center_p_ + radius_ * std::cos(theta), center_q_ + radius_ * std::sin(theta)};
}

HamiltonianJet finite_difference_jet(const Hamiltonian2D& h, double p, double q, double scale) {
  const double eps = std::numeric_limits<double>::epsilon();
  const double h1 = std::cbrt(eps) * scale;
  const double h2 = std::pow(eps, 0.25) * scale;

  HamiltonianJet jet;
  jet.value = h(p, q);
  jet.dp = (h(p + h1, q) - h(p - h1, q)) / (2.0 * h1);
  jet.dq = (h(p, q + h1) - h(p, q - h1)) / (2.0 * h1);
  jet.dpp = (h(p + h2, q) - 2.0 * jet.value + h(p - h2, q)) / (h2 * h2);
  jet.dqq = (h(p, q + h2) - 2.0 * jet.value + h(p, q - h2)) / (h2 * h2);
  jet.dpq = (h(p + h2, q + h2) - h(p + h2, q - h2) - h(p - h2, q + h2) + h(p - h2, q - h2)) /
            (4.0 * h2 * h2);
  return jet;
}

double level_set_curvature(const HamiltonianJet& j) {
  const double g2 = j.dp * j.dp + j.dq * j.dq;
  const double numerator = j.dq * j.dq * j.dpp - 2.0 * j.dp * j.dq * j.dpq + j.dp * j.dp * j.dqq;
  return numerator / (g2 * std::sqrt(g2));
}

std::optional<CircularShell> LocalFrame::circular_shell() const {
  if (!curved) return std::nullopt;
  return CircularShell::through_origin(radius, omega);
}

LocalFrame local_frame(const HamiltonianJetFn& h, double p0, double q0,
                       const FrameTolerances& tol) {
  const HamiltonianJet jet = h(p0, q0);
  const double alpha = std::hypot(jet.dp, jet.dq);
  if (!(alpha >= tol.gradient)) {
    throw CriticalPointError("local_frame: |grad H| = " + std::to_string(alpha) +
                             " at a critical point; no local shell frame exists");
  }

  LocalFrame frame;
  frame.p0 = p0;
  frame.q0 = q0;
  frame.energy = jet.value;
  frame.alpha = alpha;

  // Rows are the new p and q axes: p' along -grad H, q' completing a
  // determinant-one (hence symplectic) rotation.
  const double gp = jet.dp / alpha;
  const double gq = jet.dq / alpha;
  frame.rotation = {{{-gp, -gq}, {gq, -gp}}};

  // Hessian in the new frame: M H M^T.
  const Matrix2& m = frame.rotation;
  const Matrix2 hess{{{jet.dpp, jet.dpq}, {jet.dpq, jet.dqq}}};
  Matrix2 rotated{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      double s = 0.0;
      for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) s += m[i][k] * hess[k][l] * m[j][l];
      }
      rotated[i][j] = s;
    }
  }
  frame.quad = {0.5 * rotated[0][0], 0.5 * rotated[1][1], rotated[0][1]};

  frame.curvature = level_set_curvature(jet);
  if (frame.curvature > tol.curvature) {
    frame.curved = true;
    frame.radius = 1.0 / frame.curvature;
    frame.omega = alpha * frame.curvature;
  }
  return frame;
}

LocalFrame local_frame(const Hamiltonian2D& h, double p0, double q0, double scale,
                       const FrameTolerances& tol) {
  return local_frame([&h, scale](double p, double q) { return finite_difference_jet(h, p, q, scale); },
                     p0, q0, tol);
}

IntersectionDistance intersection_distance(double R, double Q) {
  if (!(R > 0.0)) throw std::invalid_argument("intersection_distance: R must be positive");
  if (!(Q >= 0.0)) throw std::invalid_argument("intersection_distance: Q must be non-negative");
  const double d = std::hypot(R, Q);
  // sqrt(R^2+Q^2) - R without cancellation.
  return {Q * Q / (d + R), Q * Q / (2.0 * R)};
}

double shell_normalization(const CircularShell& shell) {
  return 2.0 * std::numbers::pi / shell.omega();
}

}  // namespace qecwit
