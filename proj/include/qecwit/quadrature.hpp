#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qecwit {

struct TrapezoidOptions {
  std::size_t initial_nodes = 64;
  std::size_t max_nodes = std::size_t{1} << 20;
  double rel_tol = 1e-10;
  /// Differences below abs_floor count as converged (for components that
  /// sit at zero).
  double abs_floor = 0.0;
};

/// Smallest power of two >= max(64, n).
inline std::size_t nodes_for(double n) {
  std::size_t nodes = 64;
  while (static_cast<double>(nodes) < n && nodes < (std::size_t{1} << 30)) nodes *= 2;
  return nodes;
}

template <std::size_t K>
struct PeriodicMean {
  std::array<double, K> value{};
  std::array<double, K> previous{};
  std::size_t nodes = 0;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double last, double previous)
      : std::runtime_error(what + " (last estimate " + std::to_string(last) + ", previous " +
                           std::to_string(previous) + ")"),
        last_(last),
        previous_(previous) {}
  double last() const noexcept { return last_; }
  double previous() const noexcept { return previous_; }

 private:
  double last_;
  double previous_;
};

/// Mean of a 2 pi-periodic, vector-valued f over [0, 2 pi) by the trapezoid
/// rule, doubling the node count until every component of two successive
/// estimates agrees to rel_tol. Doubling reuses the previous nodes. Throws
/// ConvergenceError when max_nodes is reached first.
///
/// The caller must choose initial_nodes fine enough to see the narrowest
/// feature of f; two grids that both miss a peak agree trivially.
template <std::size_t K, class F>
PeriodicMean<K> periodic_mean(F&& f, const TrapezoidOptions& opt = {}) {
  using std::numbers::pi;
  std::size_t n = std::max<std::size_t>(opt.initial_nodes, 4);

  std::array<double, K> sum{};
  for (std::size_t i = 0; i < n; ++i) {
    const std::array<double, K> v = f(2.0 * pi * static_cast<double>(i) / static_cast<double>(n));
    for (std::size_t k = 0; k < K; ++k) sum[k] += v[k];
  }
  PeriodicMean<K> out;
  for (std::size_t k = 0; k < K; ++k) out.value[k] = sum[k] / static_cast<double>(n);
  out.nodes = n;

  while (true) {
    if (2 * n > opt.max_nodes) {
      throw ConvergenceError("periodic_mean: no convergence with " + std::to_string(n) + " nodes",
                             out.value[0], out.previous[0]);
    }
    // Midpoints of the current grid.
    std::array<double, K> odd{};
    for (std::size_t i = 0; i < n; ++i) {
      const double theta = 2.0 * pi * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
      const std::array<double, K> v = f(theta);
      for (std::size_t k = 0; k < K; ++k) odd[k] += v[k];
    }
    out.previous = out.value;
    bool converged = true;
    for (std::size_t k = 0; k < K; ++k) {
      out.value[k] = 0.5 * (out.previous[k] + odd[k] / static_cast<double>(n));
      const double diff = std::abs(out.value[k] - out.previous[k]);
      if (diff > opt.rel_tol * std::abs(out.value[k]) && diff > opt.abs_floor) converged = false;
    }
    n *= 2;
    out.nodes = n;
    if (converged) return out;
  }
}

}  // namespace qecwit
