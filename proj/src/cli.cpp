#include "qecwit/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qecwit/balazs.hpp"
#include "qecwit/highdim.hpp"
#include "qecwit/overlap.hpp"
#include "qecwit/report_io.hpp"
#include "qecwit/selftest.hpp"

namespace qecwit {
namespace {

// Thrown for problems the user can fix by changing flags.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::ofstream open_output(const std::string& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw UsageError("cannot open output file '" + path + "'");
  return file;
}

void close_output(std::ofstream& file, const std::string& path) {
  file.close();
  if (!file) throw UsageError("failed writing output file '" + path + "'");
}

std::string sibling_path(const std::string& path, const std::string& suffix) {
  std::filesystem::path p(path);
  p.replace_extension();
  return p.string() + suffix;
}

struct VerdictFlags {
  double R = 1.0;
  double omega = 1.0;
  double hbar = 0.0;
  std::optional<double> K;
  std::optional<double> gamma;
  std::optional<double> Q;
};

int cmd_verdict(const VerdictFlags& f, std::ostream& out) {
  if (f.Q && (f.K || f.gamma)) throw UsageError("--Q excludes --K and --gamma");
  if (!f.Q && !f.K) throw UsageError("give either --K (with optional --gamma) or --Q");
  const double Q = f.Q ? *f.Q : *f.K * std::pow(f.hbar, f.gamma.value_or(0.2));
  // Validates Q and hbar before any engine runs.
  const CatWitness witness(Q, f.hbar);
  const Verdict v = evaluate_methods(f.R, f.omega, witness.hbar(), witness.separation());
  out << to_json(v).dump(2) << '\n';
  return v.methods_agree ? kExitOk : kExitDisagreement;
}

struct SweepFlags {
  double R = 1.0;
  double omega = 1.0;
  double K = 1.0;
  double gamma = 0.2;
  double hbar_max = 1e-2;
  double hbar_min = 1e-6;
  int per_decade = 1;
  std::vector<double> hbar;
  std::string output;
  unsigned workers = 0;
};

void print_fit(std::ostream& os, const SweepResult& result) {
  const SweepFit& fit = result.fit;
  os << "rows: " << result.rows.size() << '\n';
  if (!fit.available) {
    os << "fit: " << fit.note << '\n';
    return;
  }
  os << "slope: " << format_double(fit.slope) << '\n'
     << "predicted_slope: " << format_double(fit.predicted_slope) << '\n'
     << "slope_ratio: " << format_double(fit.slope_ratio) << '\n'
     << "regime: " << (result.regime == SweepRegime::kFlat ? "flat" : "exponential") << '\n';
  if (!fit.note.empty()) os << "note: " << fit.note << '\n';
}

int cmd_sweep(const SweepFlags& f, std::ostream& out, std::ostream& err) {
  SweepConfig config;
  config.R = f.R;
  config.omega = f.omega;
  config.K = f.K;
  config.gamma = f.gamma;
  config.hbar_values =
      f.hbar.empty() ? descending_log_grid(f.hbar_max, f.hbar_min, f.per_decade) : f.hbar;
  const SweepResult result = hbar_sweep(config, f.workers);
  if (f.output.empty()) {
    write_sweep_csv(out, config, result);
    print_fit(err, result);
  } else {
    std::ofstream file = open_output(f.output);
    write_sweep_csv(file, config, result);
    close_output(file, f.output);
    print_fit(out, result);
  }
  return kExitOk;
}

struct GridFlags {
  std::string witness = "cat";
  double hbar = 1e-2;
  std::optional<double> Q;
  double K = 1.0;
  double gamma = 0.2;
  double q1 = -0.5;
  double q2 = 0.5;
  double epsilon = 1e-2;
  double R = 1.0;
  double omega = 1.0;
  std::optional<double> p_min, p_max, q_min, q_max;
  std::size_t n_p = 201;
  std::size_t n_q = 201;
  std::size_t polyline_points = 720;
  std::string output;
  unsigned workers = 0;
};

int cmd_grid(const GridFlags& f, std::ostream& out) {
  Rectangle region;
  WignerGrid grid;
  std::optional<CircularShell> shell;
  if (f.witness == "cat") {
    const CatWitness w(f.Q ? *f.Q : f.K * std::pow(f.hbar, f.gamma), f.hbar);
    const double half_q = w.separation() + 6.0 * std::sqrt(f.hbar);
    const double half_p = 6.0 * std::sqrt(f.hbar);
    region = {f.p_min.value_or(-half_p), f.p_max.value_or(half_p), f.q_min.value_or(-half_q),
              f.q_max.value_or(half_q)};
    grid = wigner_grid(w, region, f.n_p, f.n_q, f.workers);
    shell = CircularShell::through_origin(f.R, f.omega);
  } else if (f.witness == "balazs") {
    const BalazsWitness w(f.q1, f.q2, f.epsilon);
    const double span = std::abs(f.q2 - f.q1);
    region = {f.p_min.value_or(-2.0 * f.R), f.p_max.value_or(2.0 * f.R),
              f.q_min.value_or(std::min(f.q1, f.q2) - 0.5 * span),
              f.q_max.value_or(std::max(f.q1, f.q2) + 0.5 * span)};
    grid = wigner_grid([&](double p, double q) { return balazs_wigner(w, f.hbar, p, q); }, region,
                       f.n_p, f.n_q, f.workers);
    shell = balazs_tangent_shell(w, f.R, f.omega);
  } else {
    throw UsageError("--witness must be 'cat' or 'balazs'");
  }

  std::ofstream file = open_output(f.output);
  write_grid_csv(file, grid);
  close_output(file, f.output);

  const std::string shell_path = sibling_path(f.output, ".shell.csv");
  std::ofstream poly = open_output(shell_path);
  write_polyline_csv(poly, *shell, f.polyline_points);
  close_output(poly, shell_path);

  out << "grid: " << f.output << " (" << f.n_p << " x " << f.n_q << ")\n"
      << "shell: " << shell_path << '\n';
  return kExitOk;
}

struct HighDimFlags {
  double R = 1.0;
  double omega = 1.0;
  std::vector<double> transverse{1.0};
  std::vector<double> hbar{1e-2};
  double K = 1.0;
  double gamma = 0.2;
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 1;
  double smearing = 0.0;
  unsigned workers = 0;
  std::string output;
};

// Monte Carlo and reduction are declared inconsistent beyond this many
// standard errors.
constexpr double kDisagreementSigmas = 4.0;

int cmd_highdim(const HighDimFlags& f, std::ostream& out) {
  const SeparableShellND shell(f.R, f.omega, f.transverse);
  MonteCarloConfig mc;
  mc.samples = f.samples;
  mc.seed = f.seed;
  mc.smearing = f.smearing;
  mc.workers = f.workers;

  std::vector<HighDimRow> rows;
  bool agree = true;
  for (double hbar : f.hbar) {
    const CatWitnessND witness{CatWitness::from_scaling(f.K, f.gamma, hbar),
                               f.transverse.size()};
    HighDimRow row{hbar, witness.planar.separation(), overlap_nd_reduction(shell, witness),
                   overlap_nd_montecarlo(shell, witness, mc)};
    const double gap = std::abs(row.montecarlo.estimate - row.reduction.total);
    if (gap > kDisagreementSigmas * row.montecarlo.standard_error) agree = false;
    rows.push_back(row);
  }

  if (f.output.empty()) {
    write_highdim_csv(out, shell, rows);
  } else {
    std::ofstream file = open_output(f.output);
    write_highdim_csv(file, shell, rows);
    close_output(file, f.output);
    for (const auto& row : rows) {
      out << "hbar " << format_double(row.hbar) << ": reduction "
          << format_double(row.reduction.total) << ", monte carlo "
          << format_double(row.montecarlo.estimate) << " +- "
          << format_double(row.montecarlo.standard_error) << '\n';
    }
  }
  return agree ? kExitOk : kExitDisagreement;
}

struct BalazsFlags {
  double hbar = 1.0;
  double R = 1.0;
  double omega = 1.0;
  double q1 = -0.5;
  double q2 = 0.5;
  std::vector<double> ladder;
  unsigned workers = 0;
  std::string output;
};

std::vector<double> default_ladder(double hbar) {
  std::vector<double> ladder;
  for (double e : {1e-2, 5e-3, 2e-3, 1e-3, 5e-4, 2e-4, 1e-4}) ladder.push_back(e * std::sqrt(hbar));
  return ladder;
}

int cmd_balazs(const BalazsFlags& f, std::ostream& out) {
  const std::vector<double> ladder = f.ladder.empty() ? default_ladder(f.hbar) : f.ladder;
  const BalazsWitness w(f.q1, f.q2, ladder.front());
  const CircularShell shell = balazs_tangent_shell(w, f.R, f.omega);
  const TangencyStudy study = tangency_exponent(shell, w, f.hbar, ladder, f.workers);

  if (f.output.empty()) {
    write_balazs_csv(out, study);
    return kExitOk;
  }
  std::ofstream file = open_output(f.output);
  write_balazs_csv(file, study);
  close_output(file, f.output);
  out << "negative_exponent: " << format_double(study.negative_exponent) << '\n'
      << "positive_exponent: " << format_double(study.positive_exponent) << '\n'
      << "transversal_limit: " << format_double(balazs_transversal_limit(shell, w)) << '\n';
  if (study.crossover_rung) {
    out << "crossover_epsilon: " << format_double(study.rows[*study.crossover_rung].epsilon)
        << '\n';
  } else {
    out << "crossover_epsilon: none (total >= 0 at the smallest epsilon)\n";
  }
  return kExitOk;
}

int cmd_selftest(const SelfTestOptions& options, std::ostream& out) {
  const auto results = run_selftest(options);
  bool all = true;
  for (const auto& r : results) {
    out << (r.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(24) << r.name << r.detail
        << '\n';
    all = all && r.passed;
  }
  out << (all ? "all checks passed" : "some checks failed") << '\n';
  return all ? kExitOk : kExitUsage;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Wigner-function negativity tests for the energy-shell distribution", "qecwit"};
  app.require_subcommand(1);

  VerdictFlags vf;
  auto* verdict_cmd = app.add_subcommand("verdict", "Overlap of the shell with an odd cat witness");
  verdict_cmd->add_option("--R", vf.R, "Shell curvature radius")->capture_default_str();
  verdict_cmd->add_option("--omega", vf.omega, "Shell frequency")->capture_default_str();
  verdict_cmd->add_option("--hbar", vf.hbar, "Planck constant")->required();
  verdict_cmd->add_option("--K", vf.K, "Separation prefactor, Q = K hbar^gamma");
  verdict_cmd->add_option("--gamma", vf.gamma, "Separation exponent (default 0.2)");
  verdict_cmd->add_option("--Q", vf.Q, "Cat separation, instead of --K/--gamma");

  SweepFlags sf;
  auto* sweep_cmd = app.add_subcommand("sweep", "Ratio of positive to negative terms versus hbar");
  sweep_cmd->add_option("--R", sf.R)->capture_default_str();
  sweep_cmd->add_option("--omega", sf.omega)->capture_default_str();
  sweep_cmd->add_option("--K", sf.K)->capture_default_str();
  sweep_cmd->add_option("--gamma", sf.gamma)->capture_default_str();
  sweep_cmd->add_option("--hbar-max", sf.hbar_max)->capture_default_str();
  sweep_cmd->add_option("--hbar-min", sf.hbar_min)->capture_default_str();
  sweep_cmd->add_option("--per-decade", sf.per_decade)->capture_default_str();
  sweep_cmd->add_option("--hbar", sf.hbar, "Explicit descending hbar list")->delimiter(',');
  sweep_cmd->add_option("--output,-o", sf.output, "CSV path (stdout if absent)");
  sweep_cmd->add_option("--workers", sf.workers)->capture_default_str();

  GridFlags gf;
  auto* grid_cmd = app.add_subcommand("grid", "Sample a witness on a grid plus the shell outline");
  grid_cmd->add_option("--witness", gf.witness, "cat or balazs")->capture_default_str();
  grid_cmd->add_option("--hbar", gf.hbar)->capture_default_str();
  grid_cmd->add_option("--Q", gf.Q, "Cat separation (default K hbar^gamma)");
  grid_cmd->add_option("--K", gf.K)->capture_default_str();
  grid_cmd->add_option("--gamma", gf.gamma)->capture_default_str();
  grid_cmd->add_option("--q1", gf.q1)->capture_default_str();
  grid_cmd->add_option("--q2", gf.q2)->capture_default_str();
  grid_cmd->add_option("--epsilon", gf.epsilon)->capture_default_str();
  grid_cmd->add_option("--R", gf.R)->capture_default_str();
  grid_cmd->add_option("--omega", gf.omega)->capture_default_str();
  grid_cmd->add_option("--p-min", gf.p_min);
  grid_cmd->add_option("--p-max", gf.p_max);
  grid_cmd->add_option("--q-min", gf.q_min);
  grid_cmd->add_option("--q-max", gf.q_max);
  grid_cmd->add_option("--np", gf.n_p)->capture_default_str();
  grid_cmd->add_option("--nq", gf.n_q)->capture_default_str();
  grid_cmd->add_option("--shell-points", gf.polyline_points)
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  grid_cmd->add_option("--output,-o", gf.output, "Grid CSV path")->required();
  grid_cmd->add_option("--workers", gf.workers)->capture_default_str();

  HighDimFlags hf;
  auto* highdim_cmd = app.add_subcommand("highdim", "Separable N-dimensional shell");
  highdim_cmd->add_option("--R", hf.R)->capture_default_str();
  highdim_cmd->add_option("--omega", hf.omega)->capture_default_str();
  highdim_cmd->add_option("--transverse", hf.transverse, "Transverse frequencies")
      ->delimiter(',');
  highdim_cmd->add_option("--hbar", hf.hbar)->delimiter(',');
  highdim_cmd->add_option("--K", hf.K)->capture_default_str();
  highdim_cmd->add_option("--gamma", hf.gamma)->capture_default_str();
  highdim_cmd->add_option("--samples", hf.samples)->capture_default_str();
  highdim_cmd->add_option("--seed", hf.seed)->capture_default_str();
  highdim_cmd->add_option("--smearing", hf.smearing, "Energy kernel width (0: resolve the interference fringes)");
  highdim_cmd->add_option("--workers", hf.workers)->capture_default_str();
  highdim_cmd->add_option("--output,-o", hf.output, "CSV path (stdout if absent)");

  BalazsFlags bf;
  auto* balazs_cmd = app.add_subcommand("balazs", "Tangency study with the position-pair witness");
  balazs_cmd->add_option("--hbar", bf.hbar)->capture_default_str();
  balazs_cmd->add_option("--R", bf.R)->capture_default_str();
  balazs_cmd->add_option("--omega", bf.omega)->capture_default_str();
  balazs_cmd->add_option("--q1", bf.q1)->capture_default_str();
  balazs_cmd->add_option("--q2", bf.q2)->capture_default_str();
  balazs_cmd->add_option("--ladder", bf.ladder, "Descending epsilon ladder")->delimiter(',');
  balazs_cmd->add_option("--workers", bf.workers)->capture_default_str();
  balazs_cmd->add_option("--output,-o", bf.output, "CSV path (stdout if absent)");

  SelfTestOptions stf;
  auto* selftest_cmd = app.add_subcommand("selftest", "Run the oracle cross-checks");
  selftest_cmd->add_option("--bessel-crossover", stf.bessel_crossover)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*verdict_cmd) return cmd_verdict(vf, out);
    if (*sweep_cmd) return cmd_sweep(sf, out, err);
    if (*grid_cmd) return cmd_grid(gf, out);
    if (*highdim_cmd) return cmd_highdim(hf, out);
    if (*balazs_cmd) return cmd_balazs(bf, out);
    if (*selftest_cmd) return cmd_selftest(stf, out);
  } catch (const MethodDisagreement& e) {
    err << "error: " << e.what() << '\n';
    return kExitDisagreement;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace qecwit
