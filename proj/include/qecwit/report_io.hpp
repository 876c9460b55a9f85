#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "qecwit/balazs.hpp"
#include "qecwit/highdim.hpp"
#include "qecwit/overlap.hpp"
#include "qecwit/wigner.hpp"

namespace qecwit {

/// Bumped whenever a field of the JSON reports changes meaning or is removed.
inline constexpr int kSchemaVersion = 1;

/// Doubles in CSV output use 17 significant digits.
std::string format_double(double value);

nlohmann::json to_json(const OverlapReport& r);
nlohmann::json to_json(const Verdict& v);
nlohmann::json to_json(const MonteCarloEstimate& e);

/// `# `-prefixed comment lines, then `hbar,Q,positive,negative,total,ratio,predicted_factor`.
void write_sweep_csv(std::ostream& os, const SweepConfig& config, const SweepResult& result);

struct HighDimRow {
  double hbar = 0.0;
  double Q = 0.0;
  OverlapReport reduction;
  MonteCarloEstimate montecarlo;
};

/// Sweep schema plus the Monte Carlo estimate and its standard error.
void write_highdim_csv(std::ostream& os, const SeparableShellND& shell,
                       const std::vector<HighDimRow>& rows);

/// `epsilon,positive,negative,total`.
void write_balazs_csv(std::ostream& os, const TangencyStudy& study);

/// `# p_axis: ...` and `# q_axis: ...` headers, then one CSV row of W values
/// per p_axis entry.
void write_grid_csv(std::ostream& os, const WignerGrid& grid);

/// `p,q` samples of the shell circle (closed: first point repeated last).
void write_polyline_csv(std::ostream& os, const CircularShell& shell, std::size_t points);

}  // namespace qecwit
