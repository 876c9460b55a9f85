#include "qecwit/highdim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include "qecwit/parallel.hpp"

namespace qecwit {

using std::numbers::pi;

SeparableShellND::SeparableShellND(double R, double omega, std::vector<double> transverse)
    : radius_(R), omega_(omega), transverse_(std::move(transverse)) {
  if (!(R > 0.0)) throw std::invalid_argument("SeparableShellND: R must be positive");
  if (!(omega > 0.0)) throw std::invalid_argument("SeparableShellND: omega must be positive");
  for (double w : transverse_) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("SeparableShellND: transverse frequencies must be positive");
    }
  }
}

double SeparableShellND::hamiltonian(const PhasePoint& x) const {
  if (x.dimension() != dimension()) {
    throw std::invalid_argument("SeparableShellND::hamiltonian: dimension mismatch");
  }
  const double dp = x.p(0) - radius_;
  double h = 0.5 * omega_ * (dp * dp + x.q(0) * x.q(0));
  for (std::size_t j = 0; j < transverse_.size(); ++j) {
    const double p = x.p(j + 1);
    const double q = x.q(j + 1);
    h += 0.5 * transverse_[j] * (p * p + q * q);
  }
  return h;
}

double SeparableShellND::section_radius(double transverse_energy) const {
  const double r2 = radius_ * radius_ - 2.0 * transverse_energy / omega_;
  return r2 > 0.0 ? std::sqrt(r2) : 0.0;
}

double SeparableShellND::density_of_states(double energy) const {
  if (!(energy > 0.0)) return 0.0;
  const std::size_t n = dimension();
  double value = std::pow(2.0 * pi, static_cast<double>(n)) / omega_;
  for (std::size_t k = 1; k < n; ++k) {
    value *= energy / static_cast<double>(k);
  }
  for (double w : transverse_) value /= w;
  return value;
}

namespace detail {

double transverse_energy_density_matrix(const std::vector<double>& rates, double s) {
  const auto m = static_cast<Eigen::Index>(rates.size());
  // y_1' = -r_1 y_1, y_k' = -r_k y_k + y_{k-1}: y_m(s) is the convolution.
  Eigen::MatrixXd generator = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    generator(k, k) = -rates[static_cast<std::size_t>(k)];
    if (k > 0) generator(k, k - 1) = 1.0;
  }
  const Eigen::MatrixXd propagator = (s * generator).exp();
  return propagator(m - 1, 0);
}

}  // namespace detail

double transverse_energy_density(const std::vector<double>& rates, double s) {
  if (rates.empty()) throw std::invalid_argument("transverse_energy_density: no rates");
  if (s < 0.0) return 0.0;
  if (rates.size() == 1) return std::exp(-rates[0] * s);
  if (rates.size() == 2) {
    const double lo = std::min(rates[0], rates[1]);
    const double gap = std::abs(rates[0] - rates[1]);
    // (e^{-lo s} - e^{-hi s}) / gap, exact as gap -> 0.
    if (gap * s < 1e-300) return s * std::exp(-lo * s);
    return std::exp(-lo * s) * -std::expm1(-gap * s) / gap;
  }
  return detail::transverse_energy_density_matrix(rates, s);
}

namespace {

void check_dimensions(const SeparableShellND& shell, const CatWitnessND& witness) {
  if (shell.dimension() != witness.dimension()) {
    throw std::invalid_argument("dimension mismatch: shell has N = " +
                                std::to_string(shell.dimension()) + ", witness has N = " +
                                std::to_string(witness.dimension()));
  }
}

template <class F>
double integrate(F f, double a, double b, double rel_tol) {
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 61>::integrate(f, a, b, 12, rel_tol);
}

}  // namespace

OverlapReport overlap_nd_reduction(const SeparableShellND& shell, const CatWitnessND& witness,
                                   const ReductionOptions& options) {
  check_dimensions(shell, witness);
  const CatWitness& planar = witness.planar;
  const double hbar = planar.hbar();
  const double R = shell.radius();

  bool use_bessel = options.section == SectionMethod::kBessel;
  if (options.section == SectionMethod::kAuto) use_bessel = !quadrature_applicable(R, hbar);
  const Method method = use_bessel ? Method::kExactBessel : Method::kQuadrature;

  auto section = [&](double radius) {
    return use_bessel ? cat_section_means_exact(R, radius, planar)
                      : cat_section_means_quadrature(R, radius, planar, 1e-12);
  };

  if (shell.transverse().empty()) {
    const SectionMeans m = section(R);
    return make_report(m.lobes, m.interference, method, R, shell.omega(), planar);
  }

  std::vector<double> rates;
  for (double w : shell.transverse()) rates.push_back(2.0 / (w * hbar));
  const double slowest = *std::min_element(rates.begin(), rates.end());
  const auto m = static_cast<double>(rates.size());
  const double energy = shell.energy();
  const double s_max = std::min(energy, (60.0 + 10.0 * m) / slowest);

  // Geometric breakpoints in units of the slowest decay length.
  std::vector<double> breaks{0.0};
  for (double b = 1.0 / slowest; b < s_max; b *= 4.0) breaks.push_back(b);
  breaks.push_back(s_max);

  auto piece = [&](bool lobes) {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
      sum += integrate(
          [&](double s) {
            const double g = transverse_energy_density(rates, s);
            if (g == 0.0) return 0.0;
            const SectionMeans means = section(shell.section_radius(s));
            return g * (lobes ? means.lobes : means.interference);
          },
          breaks[i], breaks[i + 1], options.rel_tol);
    }
    return sum;
  };

  // (N-1)! / (E^{N-1} (pi hbar)^{N-1}): shell normalization over the simplex
  // of transverse energies times the transverse coherent-state prefactor.
  double scale = 1.0;
  for (std::size_t k = 1; k <= rates.size(); ++k) {
    scale *= static_cast<double>(k) / (energy * pi * hbar);
  }

  OverlapReport r =
      make_report(scale * piece(true), scale * piece(false), method, R, shell.omega(), planar);
  r.normalization_constant *= scale;
  return r;
}

GaussianProposal GaussianProposal::for_cat(const CatWitnessND& witness) {
  const std::size_t n = witness.dimension();
  const double sigma = std::sqrt(0.5 * witness.planar.hbar());
  const double Q = witness.planar.separation();
  GaussianProposal proposal;
  for (auto [weight, q1] : {std::pair{0.25, -Q}, std::pair{0.5, 0.0}, std::pair{0.25, Q}}) {
    std::vector<double> p(n, 0.0);
    std::vector<double> q(n, 0.0);
    q[0] = q1;
    proposal.components.push_back({weight, PhasePoint(std::move(p), std::move(q)), sigma});
  }
  return proposal;
}

double GaussianProposal::density(const PhasePoint& x) const {
  double total = 0.0;
  double weights = 0.0;
  const auto n = static_cast<double>(x.dimension());
  for (const auto& c : components) {
    double d2 = 0.0;
    for (std::size_t j = 0; j < x.dimension(); ++j) {
      const double dp = x.p(j) - c.mean.p(j);
      const double dq = x.q(j) - c.mean.q(j);
      d2 += dp * dp + dq * dq;
    }
    const double var = c.sigma * c.sigma;
    total += c.weight * std::exp(-0.5 * d2 / var) / std::pow(2.0 * pi * var, n);
    weights += c.weight;
  }
  return total / weights;
}

double smeared_shell_volume(const SeparableShellND& shell, double smearing) {
  if (!(smearing > 0.0)) throw std::invalid_argument("smeared_shell_volume: smearing must be > 0");
  const double e = shell.energy();
  const double lo = std::max(0.0, e - 12.0 * smearing);
  const double hi = e + 12.0 * smearing;
  return integrate(
      [&](double energy) {
        return shell.density_of_states(energy) * smeared_delta(e - energy, smearing);
      },
      lo, hi, 1e-13);
}

namespace {

constexpr std::size_t kChunk = 8192;

struct Moments {
  double n = 0.0;
  double total = 0.0;
  double total2 = 0.0;
  double pos = 0.0;
  double pos2 = 0.0;
  double neg = 0.0;
  double neg2 = 0.0;

  void add(double lobes, double fringe) {
    const double t = lobes - fringe;
    n += 1.0;
    total += t;
    total2 += t * t;
    pos += lobes;
    pos2 += lobes * lobes;
    neg += fringe;
    neg2 += fringe * fringe;
  }
  void merge(const Moments& o) {
    n += o.n;
    total += o.total;
    total2 += o.total2;
    pos += o.pos;
    pos2 += o.pos2;
    neg += o.neg;
    neg2 += o.neg2;
  }
};

// Weights split into (lobes, interference) per sample.
using SplitWitness = std::function<std::pair<double, double>(const PhasePoint&)>;

MonteCarloEstimate run_montecarlo(const SeparableShellND& shell, const SplitWitness& witness,
                                  const GaussianProposal& proposal,
                                  const MonteCarloConfig& config) {
  if (config.samples < 2) {
    throw std::invalid_argument("overlap_nd_montecarlo: need at least 2 samples");
  }
  if (proposal.components.empty()) {
    throw std::invalid_argument("overlap_nd_montecarlo: empty proposal");
  }
  const std::size_t n = shell.dimension();
  for (const auto& c : proposal.components) {
    if (c.mean.dimension() != n || !(c.sigma > 0.0) || !(c.weight > 0.0)) {
      throw std::invalid_argument("overlap_nd_montecarlo: invalid proposal component");
    }
  }
  const double energy = shell.energy();
  const double smearing = config.smearing > 0.0 ? config.smearing : 1e-3 * energy;

  std::vector<double> cumulative;
  double acc = 0.0;
  for (const auto& c : proposal.components) cumulative.push_back(acc += c.weight);
  for (double& c : cumulative) c /= acc;

  const std::size_t chunks = (config.samples + kChunk - 1) / kChunk;
  std::vector<Moments> partial(chunks);
  parallel_for(chunks, config.workers, [&](std::size_t chunk) {
    std::seed_seq seq{static_cast<std::uint32_t>(config.seed),
                      static_cast<std::uint32_t>(config.seed >> 32),
                      static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);

    const std::size_t begin = chunk * kChunk;
    const std::size_t end = std::min(config.samples, begin + kChunk);
    std::vector<double> p(n);
    std::vector<double> q(n);
    Moments m;
    for (std::size_t s = begin; s < end; ++s) {
      const double u = uniform(rng);
      const auto k = static_cast<std::size_t>(
          std::lower_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
      const auto& c = proposal.components[std::min(k, proposal.components.size() - 1)];
      for (std::size_t j = 0; j < n; ++j) {
        p[j] = c.mean.p(j) + c.sigma * normal(rng);
        q[j] = c.mean.q(j) + c.sigma * normal(rng);
      }
      const PhasePoint x(p, q);
      const double kernel = smeared_delta(energy - shell.hamiltonian(x), smearing);
      if (kernel == 0.0) {
        m.add(0.0, 0.0);
        continue;
      }
      const double weight = kernel / proposal.density(x);
      const auto [lobes, fringe] = witness(x);
      m.add(lobes * weight, fringe * weight);
    }
    partial[chunk] = m;
  });

  Moments all;
  for (const auto& m : partial) all.merge(m);
  if (all.pos == 0.0 && all.neg == 0.0) {
    throw std::runtime_error("overlap_nd_montecarlo: every importance weight vanished");
  }

  const double volume = smeared_shell_volume(shell, smearing);
  auto mean_and_error = [&](double sum, double sum2) {
    const double mean = sum / all.n;
    const double var = std::max(0.0, sum2 / all.n - mean * mean) * all.n / (all.n - 1.0);
    return std::pair{mean / volume, std::sqrt(var / all.n) / volume};
  };

  MonteCarloEstimate out;
  std::tie(out.estimate, out.standard_error) = mean_and_error(all.total, all.total2);
  std::tie(out.positive, out.positive_error) = mean_and_error(all.pos, all.pos2);
  std::tie(out.negative, out.negative_error) = mean_and_error(all.neg, all.neg2);
  out.samples = config.samples;
  out.smearing = smearing;
  out.shell_volume = volume;
  return out;
}

}  // namespace

double default_smearing(const SeparableShellND& shell, const CatWitnessND& witness) {
  // A section shifted by dE / (omega R) turns the fringe phase by
  // 2 Q dE / (omega R hbar); the kernel must stay well inside one radian.
  const double fringe = 0.05 * shell.omega() * shell.radius() * witness.planar.hbar() /
                        (2.0 * witness.planar.separation());
  return std::min(1e-3 * shell.energy(), fringe);
}

MonteCarloEstimate overlap_nd_montecarlo(const SeparableShellND& shell,
                                         const CatWitnessND& witness,
                                         const MonteCarloConfig& config) {
  check_dimensions(shell, witness);
  MonteCarloConfig resolved = config;
  if (!(resolved.smearing > 0.0)) resolved.smearing = default_smearing(shell, witness);
  return run_montecarlo(
      shell,
      [&](const PhasePoint& x) {
        const CatTerms t = cat_wigner_nd_terms(witness, x);
        return std::pair{t.lobes, t.interference};
      },
      GaussianProposal::for_cat(witness), resolved);
}

MonteCarloEstimate overlap_nd_montecarlo(const SeparableShellND& shell,
                                         const std::function<double(const PhasePoint&)>& witness,
                                         const GaussianProposal& proposal,
                                         const MonteCarloConfig& config) {
  MonteCarloEstimate out = run_montecarlo(
      shell, [&](const PhasePoint& x) { return std::pair{witness(x), 0.0}; }, proposal, config);
  out.positive = out.estimate;
  out.positive_error = out.standard_error;
  out.negative = 0.0;
  out.negative_error = 0.0;
  return out;
}

OverlapReport verdict_nd(const SeparableShellND& shell, double K, double gamma, double hbar,
                         const ReductionOptions& options) {
  if (!(gamma > 0.0 && gamma < 0.5)) {
    throw std::invalid_argument("verdict_nd: gamma must lie in (0, 1/2)");
  }
  const CatWitnessND witness{CatWitness::from_scaling(K, gamma, hbar), shell.transverse().size()};
  return overlap_nd_reduction(shell, witness, options);
}

}  // namespace qecwit
