#include "qecwit/balazs.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qecwit/overlap.hpp"
#include "qecwit/parallel.hpp"
#include "qecwit/quadrature.hpp"

namespace qecwit {

using std::numbers::pi;

CircularShell balazs_tangent_shell(const BalazsWitness& w, double R, double omega,
                                   double center_p) {
  return {R, omega, center_p, w.midpoint() - R};
}

BalazsOverlap balazs_overlap(const CircularShell& shell, const BalazsWitness& w, double hbar) {
  if (!(hbar > 0.0)) throw std::invalid_argument("balazs_overlap: hbar must be positive");
  const double miss = std::abs(shell.center_q() + shell.radius() - w.midpoint());
  if (miss > w.epsilon()) {
    throw GeometryError("balazs_overlap: interference line misses tangency by " +
                        std::to_string(miss) + " > epsilon = " + std::to_string(w.epsilon()));
  }

  TrapezoidOptions opt;
  opt.initial_nodes = nodes_for(4.0 * pi * shell.radius() / w.epsilon());
  opt.max_nodes = std::size_t{1} << 23;
  opt.rel_tol = 1e-10;
  opt.abs_floor = 1e-14 / w.epsilon();
  const auto mean = periodic_mean<2>(
      [&](double theta) {
        const auto [p, q] = shell.point_at(theta);
        const BalazsTerms t = balazs_wigner_terms(w, hbar, p, q);
        return std::array<double, 2>{t.lines, t.interference};
      },
      opt);
  return {mean.value[0], mean.value[1], mean.value[0] - mean.value[1]};
}

double balazs_transversal_limit(const CircularShell& shell, const BalazsWitness& w) {
  // On the circle q = q_c + R sin(theta); |dH/dp| = omega R |cos(theta)|.
  double sum = 0.0;
  for (double line : {w.q1(), w.q2()}) {
    const double s = (line - shell.center_q()) / shell.radius();
    if (std::abs(s) < 1.0) {
      const double dh_dp = shell.omega() * shell.radius() * std::sqrt(1.0 - s * s);
      sum += 2.0 / dh_dp;
    }
  }
  return shell.omega() / (2.0 * pi) * sum;
}

TangencyStudy tangency_exponent(const CircularShell& shell, const BalazsWitness& w, double hbar,
                                const std::vector<double>& ladder, unsigned workers) {
  if (ladder.size() < 4) throw std::invalid_argument("tangency_exponent: need at least 4 rungs");
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (!(ladder[i] > 0.0) || (i > 0 && !(ladder[i] < ladder[i - 1]))) {
      throw std::invalid_argument("tangency_exponent: ladder must be positive and descending");
    }
  }

  TangencyStudy study;
  study.rows.resize(ladder.size());
  parallel_for(ladder.size(), workers, [&](std::size_t i) {
    const BalazsOverlap o = balazs_overlap(shell, w.with_epsilon(ladder[i]), hbar);
    study.rows[i] = {ladder[i], o.positive_terms, o.negative_term, o.total};
  });

  std::vector<double> log_eps;
  std::vector<double> log_neg;
  std::vector<double> log_pos;
  for (const auto& row : study.rows) {
    log_eps.push_back(std::log(row.epsilon));
    log_neg.push_back(std::log(row.negative));
    log_pos.push_back(std::log(row.positive));
  }
  study.negative_exponent = least_squares(log_eps, log_neg).slope;
  study.positive_exponent = least_squares(log_eps, log_pos).slope;

  for (std::size_t i = study.rows.size(); i-- > 0;) {
    if (!(study.rows[i].total < 0.0)) break;
    study.crossover_rung = i;
  }
  return study;
}

}  // namespace qecwit
