#include "qecwit/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qecwit/parallel.hpp"

namespace qecwit {

using std::numbers::pi;

PhasePoint::PhasePoint(double p, double q) : PhasePoint(std::vector<double>{p}, {q}) {}

PhasePoint::PhasePoint(std::vector<double> p, std::vector<double> q)
    : p_(std::move(p)), q_(std::move(q)) {
  if (p_.empty() || p_.size() != q_.size()) {
    throw std::invalid_argument("PhasePoint: p and q must have the same nonzero length");
  }
  const auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(p_.begin(), p_.end(), finite) || !std::all_of(q_.begin(), q_.end(), finite)) {
    throw std::invalid_argument("PhasePoint: components must be finite");
  }
}

PhasePoint PhasePoint::origin(std::size_t dimension) {
  return {std::vector<double>(dimension, 0.0), std::vector<double>(dimension, 0.0)};
}

CatWitness::CatWitness(double separation, double hbar) : separation_(separation), hbar_(hbar) {
  if (!(separation > 0.0) || !std::isfinite(separation)) {
    throw std::invalid_argument("CatWitness: separation Q must be positive, got " +
                                std::to_string(separation));
  }
  if (!(hbar > 0.0) || !std::isfinite(hbar)) {
    throw std::invalid_argument("CatWitness: hbar must be positive, got " + std::to_string(hbar));
  }
  const double norm = -std::expm1(-separation * separation / hbar);
  if (!(norm > 0.0)) {
    throw std::invalid_argument("CatWitness: degenerate normalization (Q^2/hbar underflows)");
  }
  prefactor_ = 1.0 / (2.0 * pi * hbar * norm);
}

CatWitness CatWitness::from_scaling(double K, double gamma, double hbar) {
  if (!(K > 0.0)) throw std::invalid_argument("CatWitness: K must be positive");
  if (!(hbar > 0.0)) throw std::invalid_argument("CatWitness: hbar must be positive");
  return {K * std::pow(hbar, gamma), hbar};
}

CatTerms cat_wigner_terms(const CatWitness& w, double p, double q) {
  const double h = w.hbar();
  const double Q = w.separation();
  const double envelope = w.prefactor() * std::exp(-p * p / h);
  const double lobes = std::exp(-(q - Q) * (q - Q) / h) + std::exp(-(q + Q) * (q + Q) / h);
  const double fringe = 2.0 * std::exp(-q * q / h) * std::cos(2.0 * Q * p / h);
  return {envelope * lobes, envelope * fringe};
}

double cat_wigner(const CatWitness& w, double p, double q) {
  return cat_wigner_terms(w, p, q).total();
}

double cat_wigner(const CatWitness& w, const PhasePoint& x) {
  if (x.dimension() != 1) {
    throw std::invalid_argument("cat_wigner: expected a 2-dimensional phase point");
  }
  return cat_wigner(w, x.p(0), x.q(0));
}

namespace {

double transverse_factor(double hbar, const PhasePoint& x) {
  double r2 = 0.0;
  for (std::size_t j = 1; j < x.dimension(); ++j) r2 += x.p(j) * x.p(j) + x.q(j) * x.q(j);
  return std::exp(-r2 / hbar) / std::pow(pi * hbar, static_cast<double>(x.dimension() - 1));
}

void check_nd(const CatWitnessND& w, const PhasePoint& x) {
  if (x.dimension() != w.dimension()) {
    throw std::invalid_argument("cat_wigner_nd: phase point has N = " +
                                std::to_string(x.dimension()) + ", witness expects N = " +
                                std::to_string(w.dimension()));
  }
}

}  // namespace

CatTerms cat_wigner_nd_terms(const CatWitnessND& w, const PhasePoint& x) {
  check_nd(w, x);
  const double factor = transverse_factor(w.planar.hbar(), x);
  const CatTerms planar = cat_wigner_terms(w.planar, x.p(0), x.q(0));
  return {planar.lobes * factor, planar.interference * factor};
}

double cat_wigner_nd(const CatWitnessND& w, const PhasePoint& x) {
  check_nd(w, x);
  return cat_wigner(w.planar, x.p(0), x.q(0)) * transverse_factor(w.planar.hbar(), x);
}

double coherent_wigner(const PhasePoint& center, double hbar, const PhasePoint& x) {
  if (!(hbar > 0.0)) throw std::invalid_argument("coherent_wigner: hbar must be positive");
  if (center.dimension() != x.dimension()) {
    throw std::invalid_argument("coherent_wigner: dimension mismatch");
  }
  double d2 = 0.0;
  for (std::size_t j = 0; j < x.dimension(); ++j) {
    const double dp = x.p(j) - center.p(j);
    const double dq = x.q(j) - center.q(j);
    d2 += dp * dp + dq * dq;
  }
  return std::exp(-d2 / hbar) / std::pow(pi * hbar, static_cast<double>(x.dimension()));
}

double smeared_delta(double x, double width) {
  const double u = x / width;
  return std::exp(-0.5 * u * u) / (width * std::sqrt(2.0 * pi));
}

BalazsWitness::BalazsWitness(double q1, double q2, double epsilon)
    : q1_(q1), q2_(q2), epsilon_(epsilon) {
  if (!(q1 != q2) || !std::isfinite(q1) || !std::isfinite(q2)) {
    throw std::invalid_argument("BalazsWitness: positions must be distinct and finite");
  }
  if (!(epsilon > 0.0)) throw std::invalid_argument("BalazsWitness: epsilon must be positive");
}

BalazsTerms balazs_wigner_terms(const BalazsWitness& w, double hbar, double p, double q) {
  const double eps = w.epsilon();
  const double lines = smeared_delta(q - w.q1(), eps) + smeared_delta(q - w.q2(), eps);
  const double fringe =
      smeared_delta(q - w.midpoint(), eps) * std::cos((w.q2() - w.q1()) * p / hbar);
  return {lines, fringe};
}

double balazs_wigner(const BalazsWitness& w, double hbar, double p, double q) {
  return balazs_wigner_terms(w, hbar, p, q).total();
}

double balazs_wigner(const BalazsWitness& w, double hbar, const PhasePoint& x) {
  if (x.dimension() != 1) {
    throw std::invalid_argument("balazs_wigner: expected a 2-dimensional phase point");
  }
  return balazs_wigner(w, hbar, x.p(0), x.q(0));
}

double WignerGrid::cell_area() const {
  if (p_axis.size() < 2 || q_axis.size() < 2) return 0.0;
  const double dp = (p_axis.back() - p_axis.front()) / static_cast<double>(p_axis.size() - 1);
  const double dq = (q_axis.back() - q_axis.front()) / static_cast<double>(q_axis.size() - 1);
  return dp * dq;
}

namespace {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  // Written as a weighted mean so symmetric ranges give exactly mirrored
  // nodes (and an exact 0 at the centre of odd-length axes).
  std::vector<double> axis(n);
  const double last = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double k = static_cast<double>(i);
    axis[i] = (lo * (last - k) + hi * k) / last;
  }
  return axis;
}

}  // namespace

WignerGrid wigner_grid(const PlanarFunction& f, const Rectangle& region, std::size_t n_p,
                       std::size_t n_q, unsigned workers) {
  const bool finite = std::isfinite(region.p_min) && std::isfinite(region.p_max) &&
                      std::isfinite(region.q_min) && std::isfinite(region.q_max);
  if (!finite || !(region.p_max > region.p_min) || !(region.q_max > region.q_min)) {
    throw std::invalid_argument("wigner_grid: region must be a non-empty finite rectangle");
  }
  if (n_p < 2 || n_q < 2) throw std::invalid_argument("wigner_grid: resolution must be >= 2x2");

  WignerGrid grid;
  grid.p_axis = linspace(region.p_min, region.p_max, n_p);
  grid.q_axis = linspace(region.q_min, region.q_max, n_q);
  grid.values.resize(n_p * n_q);
  parallel_for(n_p, workers, [&](std::size_t ip) {
    for (std::size_t iq = 0; iq < n_q; ++iq) {
      grid.values[ip * n_q + iq] = f(grid.p_axis[ip], grid.q_axis[iq]);
    }
  });
  return grid;
}

WignerGrid wigner_grid(const CatWitness& w, const Rectangle& region, std::size_t n_p,
                       std::size_t n_q, unsigned workers) {
  return wigner_grid([&w](double p, double q) { return cat_wigner(w, p, q); }, region, n_p, n_q,
                     workers);
}

}  // namespace qecwit
