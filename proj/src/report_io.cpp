#include "qecwit/report_io.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

namespace qecwit {

std::string format_double(double value) {
  std::ostringstream os;
  os.precision(17);
  os << value;
  return os.str();
}

nlohmann::json to_json(const OverlapReport& r) {
  return {{"method", std::string(to_string(r.method))},
          {"positive_term", r.positive_term},
          {"negative_term", r.negative_term},
          {"total", r.total},
          {"ratio", r.ratio},
          {"predicted_factor", r.predicted_factor},
          {"normalization_constant", r.normalization_constant}};
}

nlohmann::json to_json(const Verdict& v) {
  nlohmann::json methods = nlohmann::json::array();
  for (const auto& r : v.methods) methods.push_back(to_json(r));
  return {{"schema_version", kSchemaVersion},
          {"inputs", {{"R", v.R}, {"omega", v.omega}, {"hbar", v.hbar}, {"Q", v.Q}}},
          {"methods", methods},
          {"primary", to_json(v.primary())},
          {"quadrature_skipped", v.quadrature_skipped},
          {"methods_agree", v.methods_agree},
          {"negativity", std::string(to_string(v.negativity))}};
}

nlohmann::json to_json(const MonteCarloEstimate& e) {
  return {{"estimate", e.estimate},
          {"standard_error", e.standard_error},
          {"positive", e.positive},
          {"positive_error", e.positive_error},
          {"negative", e.negative},
          {"negative_error", e.negative_error},
          {"samples", e.samples},
          {"smearing", e.smearing},
          {"shell_volume", e.shell_volume}};
}

void write_sweep_csv(std::ostream& os, const SweepConfig& config, const SweepResult& result) {
  os << "# qecwit hbar sweep, schema_version " << kSchemaVersion << '\n'
     << "# R=" << format_double(config.R) << " omega=" << format_double(config.omega)
     << " K=" << format_double(config.K) << " gamma=" << format_double(config.gamma) << '\n'
     << "# Q = K * hbar^gamma; terms from the exact Bessel closed forms\n"
     << "hbar,Q,positive,negative,total,ratio,predicted_factor\n";
  for (const auto& row : result.rows) {
    os << format_double(row.hbar) << ',' << format_double(row.Q) << ','
       << format_double(row.positive) << ',' << format_double(row.negative) << ','
       << format_double(row.total) << ',' << format_double(row.ratio) << ','
       << format_double(row.predicted_factor) << '\n';
  }
}

void write_highdim_csv(std::ostream& os, const SeparableShellND& shell,
                       const std::vector<HighDimRow>& rows) {
  os << "# qecwit high-dimensional overlap, schema_version " << kSchemaVersion << '\n'
     << "# N=" << shell.dimension() << " R=" << format_double(shell.radius())
     << " omega=" << format_double(shell.omega()) << " transverse=";
  for (std::size_t j = 0; j < shell.transverse().size(); ++j) {
    os << (j ? ";" : "") << format_double(shell.transverse()[j]);
  }
  os << '\n'
     << "# positive..predicted_factor from the transverse-energy reduction; "
        "mc_estimate and stderr from Monte Carlo\n"
     << "hbar,Q,positive,negative,total,ratio,predicted_factor,mc_estimate,stderr\n";
  for (const auto& row : rows) {
    const OverlapReport& r = row.reduction;
    os << format_double(row.hbar) << ',' << format_double(row.Q) << ','
       << format_double(r.positive_term) << ',' << format_double(r.negative_term) << ','
       << format_double(r.total) << ',' << format_double(r.ratio) << ','
       << format_double(r.predicted_factor) << ',' << format_double(row.montecarlo.estimate)
       << ',' << format_double(row.montecarlo.standard_error) << '\n';
  }
}

void write_balazs_csv(std::ostream& os, const TangencyStudy& study) {
  os << "# qecwit Balazs tangency ladder, schema_version " << kSchemaVersion << '\n'
     << "# negative_exponent=" << format_double(study.negative_exponent)
     << " positive_exponent=" << format_double(study.positive_exponent) << '\n'
     << "epsilon,positive,negative,total\n";
  for (const auto& row : study.rows) {
    os << format_double(row.epsilon) << ',' << format_double(row.positive) << ','
       << format_double(row.negative) << ',' << format_double(row.total) << '\n';
  }
}

namespace {

void write_axis(std::ostream& os, const char* name, const std::vector<double>& axis) {
  os << "# " << name << ": ";
  for (std::size_t i = 0; i < axis.size(); ++i) os << (i ? "," : "") << format_double(axis[i]);
  os << '\n';
}

}  // namespace

void write_grid_csv(std::ostream& os, const WignerGrid& grid) {
  write_axis(os, "p_axis", grid.p_axis);
  write_axis(os, "q_axis", grid.q_axis);
  const std::size_t nq = grid.q_axis.size();
  for (std::size_t ip = 0; ip < grid.p_axis.size(); ++ip) {
    for (std::size_t iq = 0; iq < nq; ++iq) {
      os << (iq ? "," : "") << format_double(grid.values[ip * nq + iq]);
    }
    os << '\n';
  }
}

void write_polyline_csv(std::ostream& os, const CircularShell& shell, std::size_t points) {
  os << "p,q\n";
  for (std::size_t i = 0; i <= points; ++i) {
    // theta = pi lands exactly on the leftmost point of the circle.
    const double theta = std::numbers::pi * (1.0 + 2.0 * static_cast<double>(i % points) /
                                                     static_cast<double>(points));
    auto [p, q] = shell.point_at(theta);
    if (i % points == 0) {
      p = shell.center_p() - shell.radius();
      q = shell.center_q();
    }
    os << format_double(p) << ',' << format_double(q) << '\n';
  }
}

}  // namespace qecwit
