#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

// Process-level checks of the CLI contract: grammar, exit codes, and
// byte-stable reports. The binary path arrives via CONELAB_CLI.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "conelab/io.hpp"

namespace {

std::string cli_path() {
  const char* env = std::getenv("CONELAB_CLI");
  REQUIRE_MESSAGE(env != nullptr, "CONELAB_CLI must point at the binary");
  return env;
}

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& args) {
  const std::string out_file = "cli_test_stdout.tmp";
  const std::string cmd =
      cli_path() + " " + args + " > " + out_file + " 2>/dev/null";
  const int raw = std::system(cmd.c_str());
  std::ifstream in(out_file);
  std::ostringstream ss;
  ss << in.rdbuf();
  std::remove(out_file.c_str());
  return {WEXITSTATUS(raw), ss.str()};
}

}  // namespace

TEST_CASE("verify runs a suite and reports Pass") {
  const RunResult r = run(
      "verify --suite GyoeNormIdentities --dims 2 --trials 50 --seed 1");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"verdict\":\"Pass\"") != std::string::npos);
  CHECK(r.output.find("\"seed\":1") != std::string::npos);
}

TEST_CASE("verify output is byte-identical across runs") {
  const std::string args =
      "verify --suite HooEquivalence,Thm36Equivalences:2 --dims 2,3 "
      "--trials 40 --seed 7";
  const RunResult a = run(args);
  const RunResult b = run(args);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(a.output.front() == '[');  // multi-suite runs emit an array
}

TEST_CASE("unknown suites and flags are usage errors") {
  CHECK(run("verify --suite Bogus --dims 2").exit_code == 2);
  CHECK(run("verify --suite GyoeNormIdentities --dims 2 --no-such-flag")
            .exit_code == 2);
  CHECK(run("verify --dims 2").exit_code == 2);
  CHECK(run("frobnicate").exit_code == 2);
  CHECK(run("verify --suite GyoeNormIdentities --dims 0").exit_code == 2);
  CHECK(run("verify --suite GyoeNormIdentities --dims 2 --format yaml")
            .exit_code == 2);
}

TEST_CASE("fail and inconclusive verdicts map to exit codes 1 and 3") {
  // An impossible tolerance turns numerical residue into a Fail.
  const RunResult fail = run(
      "verify --suite GyoeNormIdentities --dims 2 --trials 20 --seed 1 "
      "--tol 1e-16");
  CHECK(fail.exit_code == 1);
  CHECK(fail.output.find("\"verdict\":\"Fail\"") != std::string::npos);

  // Commutative algebras have no non-central weight for the example.
  const RunResult inc = run(
      "verify --suite Example38NonAdditive --dims 1 --trials 10 --seed 1");
  CHECK(inc.exit_code == 3);
  CHECK(inc.output.find("\"verdict\":\"Inconclusive\"") != std::string::npos);
  CHECK(inc.output.find("\"inconclusive_reason\"") != std::string::npos);

  // Fail dominates Inconclusive in multi-suite runs.
  const RunResult both = run(
      "verify --suite Example38NonAdditive,GyoeNormIdentities --dims 1 "
      "--trials 10 --seed 1 --tol 1e-16");
  CHECK(both.exit_code == 1);
}

TEST_CASE("text format is human readable") {
  const RunResult r = run(
      "verify --suite GyoeNormIdentities --dims 2 --trials 30 --seed 2 "
      "--format text");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("GyoeNormIdentities") != std::string::npos);
  CHECK(r.output.find("[Pass]") != std::string::npos);
}

TEST_CASE("element generation, file io and the witness command") {
  const std::string elem_file = "cli_test_element.json";

  // Deterministic generation.
  const RunResult e1 = run("elem random --dims 2 --class PositiveInvertible "
                           "--seed 5");
  const RunResult e2 = run("elem random --dims 2 --class PositiveInvertible "
                           "--seed 5");
  CHECK(e1.exit_code == 0);
  CHECK(e1.output == e2.output);
  CHECK(e1.output.find("\"shape\":[2]") != std::string::npos);

  // Pinned lower bound forces rank deficiency.
  const RunResult sing = run(
      "elem random --dims 3 --class Positive --lo 0 --hi 1 --pin-lo "
      "--seed 5");
  CHECK(sing.exit_code == 0);
  const conelab::Element parsed = conelab::element_from_json(sing.output);
  CHECK(conelab::classify(parsed).positive);
  CHECK_FALSE(conelab::classify(parsed).positive_invertible);

  // Non-central 2x2 element: the nonadditivity witness must be found.
  {
    std::ofstream f(elem_file);
    f << "{\"blocks\":[[[[2,0],[1,0]],[[1,0],[1,0]]]],\"shape\":[2]}\n";
  }
  const RunResult w = run("witness --kind nonadditivity --element " +
                          elem_file + " --budget 2000 --seed 3");
  CHECK(w.exit_code == 0);
  CHECK(w.output.find("\"found\":true") != std::string::npos);
  CHECK(w.output.find("\"conclusive\":true") != std::string::npos);

  // Central element: confirmed additive, no witness.
  {
    std::ofstream f(elem_file);
    f << "{\"blocks\":[[[[2,0],[0,0]],[[0,0],[2,0]]]],\"shape\":[2]}\n";
  }
  const RunResult none = run("witness --kind nonadditivity --element " +
                             elem_file + " --budget 200 --seed 3");
  CHECK(none.exit_code == 0);
  CHECK(none.output.find("\"found\":false") != std::string::npos);

  // Squaring and seminorm-gap kinds run end to end.
  {
    std::ofstream f(elem_file);
    f << "{\"blocks\":[[[[1,0],[0,0]],[[0,0],[2,0]]]],\"shape\":[2]}\n";
  }
  CHECK(run("witness --kind squaring --element " + elem_file +
            " --budget 2000 --seed 3").exit_code == 0);
  CHECK(run("witness --kind seminorm-gap --element " + elem_file +
            " --budget 2000 --seed 3").exit_code == 0);

  // Malformed element files are usage-grade errors.
  {
    std::ofstream f(elem_file);
    f << "{\"shape\":[2],\"blocks\":[[[1,0]]]}\n";
  }
  CHECK(run("witness --kind squaring --element " + elem_file +
            " --budget 10 --seed 1").exit_code == 2);
  CHECK(run("witness --kind bogus --element " + elem_file +
            " --budget 10 --seed 1").exit_code == 2);

  std::remove(elem_file.c_str());
}

TEST_CASE("verify writes reports to files") {
  const std::string out_file = "cli_test_report.json";
  const RunResult r = run(
      "verify --suite GyoeNormIdentities --dims 2 --trials 30 --seed 4 "
      "--out " + out_file);
  CHECK(r.exit_code == 0);
  std::ifstream in(out_file);
  std::ostringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str().find("\"verdict\":\"Pass\"") != std::string::npos);
  std::remove(out_file.c_str());
}
