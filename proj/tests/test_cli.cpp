#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qecwit/cli.hpp"

using namespace qecwit;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "qecwit");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::filesystem::path scratch(const std::string& name) {
  const std::filesystem::path dir(QECWIT_TEST_TMPDIR);
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("verdict") {
  const Run r = run({"verdict", "--R", "1", "--omega", "1", "--hbar", "1e-3", "--K", "1",
                     "--gamma", "0.2"});
  CHECK(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("schema_version") == 1);
  CHECK(j.at("primary").at("total").get<double>() < 0.0);
  CHECK(j.at("methods_agree") == true);

  const Run again = run({"verdict", "--R", "1", "--omega", "1", "--hbar", "1e-3", "--K", "1",
                         "--gamma", "0.2"});
  CHECK(again.out == r.out);

  CHECK(run({"verdict", "--hbar", "1e-3", "--Q", "0.3"}).code == kExitOk);
}

TEST_CASE("verdict usage errors") {
  const Run missing = run({"verdict", "--R", "1", "--K", "1"});
  CHECK(missing.code == kExitUsage);
  CHECK(missing.err.find("hbar") != std::string::npos);
  CHECK(run({"verdict", "--hbar", "1e-2", "--Q", "0"}).code == kExitUsage);
  CHECK(run({"verdict", "--hbar", "1e-2", "--Q", "0.3", "--K", "1"}).code == kExitUsage);
  CHECK(run({"verdict", "--hbar", "1e-2"}).code == kExitUsage);
  CHECK(run({"verdict", "--hbar", "abc", "--Q", "0.3"}).code == kExitUsage);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("verdict disagreement exit code") {
  const Run r = run({"verdict", "--hbar", "0.5", "--Q", "0.1"});
  CHECK(r.code == kExitDisagreement);
  CHECK(nlohmann::json::parse(r.out).at("methods_agree") == false);
}

TEST_CASE("sweep") {
  const auto path = scratch("sweep.csv");
  const Run r = run({"sweep", "--output", path.string()});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("predicted_slope: -0.25") != std::string::npos);
  const std::string first = slurp(path);
  CHECK(first.find("hbar,Q,positive,negative,total,ratio,predicted_factor\n") != std::string::npos);
  CHECK(run({"sweep", "--output", path.string()}).code == kExitOk);
  CHECK(slurp(path) == first);

  const Run single = run({"sweep", "--hbar", "1e-3"});
  CHECK(single.code == kExitOk);
  CHECK(single.err.find("insufficient points") != std::string::npos);

  const Run flat = run({"sweep", "--gamma", "0.49", "--output", scratch("flat.csv").string()});
  CHECK(flat.out.find("regime: flat") != std::string::npos);

  CHECK(run({"sweep", "--output", "/nonexistent/dir/x.csv"}).code == kExitUsage);
  CHECK(run({"sweep", "--gamma", "0.7"}).code == kExitUsage);
}

TEST_CASE("grid") {
  const auto path = scratch("grid.csv");
  const Run r = run({"grid", "--hbar", "0.01", "--Q", "0.3", "--np", "41", "--nq", "61",
                     "--output", path.string()});
  CHECK(r.code == kExitOk);
  const std::string grid = slurp(path);
  CHECK(grid.starts_with("# p_axis: "));
  const std::string shell = slurp(scratch("grid.shell.csv"));
  CHECK(shell.starts_with("p,q\n0,0\n"));

  CHECK(run({"grid", "--witness", "balazs", "--hbar", "1", "--output",
             scratch("balazs_grid.csv").string()})
            .code == kExitOk);
  CHECK(run({"grid", "--witness", "squid", "--output", path.string()}).code == kExitUsage);
  CHECK(run({"grid", "--p-min", "1", "--p-max", "-1", "--output", path.string()}).code ==
        kExitUsage);
  CHECK(run({"grid"}).code == kExitUsage);
}

TEST_CASE("highdim") {
  const Run r = run({"highdim", "--samples", "20000", "--seed", "3"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("mc_estimate,stderr") != std::string::npos);
  const Run again = run({"highdim", "--samples", "20000", "--seed", "3", "--workers", "3"});
  CHECK(again.out == r.out);
  CHECK(run({"highdim", "--transverse", "-1"}).code == kExitUsage);
}

TEST_CASE("balazs") {
  const auto path = scratch("balazs.csv");
  const Run r = run({"balazs", "--output", path.string()});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("negative_exponent: -0.5") != std::string::npos);
  CHECK(slurp(path).find("epsilon,positive,negative,total\n") != std::string::npos);
  CHECK(run({"balazs", "--ladder", "1e-2,1e-3"}).code == kExitUsage);
}

TEST_CASE("selftest") {
  const Run ok = run({"selftest"});
  CHECK(ok.code == kExitOk);
  CHECK(ok.out.find("FAIL") == std::string::npos);
  // Negative control: a wrong crossover radius must be caught.
  const Run bad = run({"selftest", "--bessel-crossover", "3"});
  CHECK(bad.code != kExitOk);
  CHECK(bad.out.find("FAIL  bessel_dispatch") != std::string::npos);
}
