/* End-to-end checks of the command-line front end, run exactly as a user
 * would: spawn the built binary, capture stdout, inspect the JSON report
 * and the exit code. */

#include "wodzicki/report.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#ifndef WODZICKI_CLI_PATH
#error "WODZICKI_CLI_PATH must point at the built binary"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

/* Runs the CLI with the given argument string; stderr is dropped so error
 * paths stay quiet in the test log. */
RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(WODZICKI_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  size_t n = 0;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
  int status = pclose(pipe);
  REQUIRE(WIFEXITED(status));
  r.exit_code = WEXITSTATUS(status);
  return r;
}

wodzicki::Json parse(const RunResult& r) {
  REQUIRE(!r.out.empty());
  return wodzicki::Json::parse(r.out);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out.good());
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

TEST_CASE("verify --suite tadpole reports exact zeros and exits 0", "[cli]") {
  RunResult r = run_cli("verify --suite tadpole --dim 2 --seed 7");
  CHECK(r.exit_code == 0);
  wodzicki::Json j = parse(r);
  CHECK(j.at("schema") == wodzicki::kReportSchema);
  CHECK(j.at("command") == "verify");
  CHECK(j.at("pass") == true);
  CHECK(j.at("calibration").at("pass") == true);
  REQUIRE(j.at("suites").size() == 1);
  const wodzicki::Json& suite = j.at("suites")[0];
  CHECK(suite.at("suite") == "tadpole");
  CHECK(suite.at("pass") == true);
  int zero_checks = 0;
  for (const auto& e : suite.at("results"))
    if (e.at("kind") == "check") {
      CHECK(e.at("value") == "0");
      CHECK(e.at("expected") == "0");
      ++zero_checks;
    }
  CHECK(zero_checks == 3);  // operator orders 0, 1, 2 on the 2-torus
}

TEST_CASE("reports are byte-identical across runs and worker counts", "[cli]") {
  RunResult a = run_cli("verify --dim 2 --seed 11");
  RunResult b = run_cli("verify --dim 2 --seed 11");
  RunResult c = run_cli("verify --dim 2 --seed 11 --jobs 4");
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);

  // Env fallback for the worker count changes nothing either.
  const std::string cmd = "WODZICKI_JOBS=3 " + std::string(WODZICKI_CLI_PATH) +
                          " verify --dim 2 --seed 11 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t n = 0;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
  REQUIRE(WEXITSTATUS(pclose(pipe)) == 0);
  CHECK(a.out == out);
}

TEST_CASE("default verify runs every applicable suite", "[cli]") {
  RunResult r = run_cli("verify --dim 2 --seed 11");
  wodzicki::Json j = parse(r);
  REQUIRE(r.exit_code == 0);
  std::vector<std::string> names;
  for (const auto& s : j.at("suites")) {
    names.push_back(s.at("suite").get<std::string>());
    CHECK(s.at("pass") == true);
  }
  CHECK(names == std::vector<std::string>{"tadpole", "powers", "zeta0", "einstein", "parity",
                                          "alpha"});

  // Odd dimension: the einstein suite drops out of the default set.
  RunResult odd = run_cli("verify --dim 3 --seed 5 --max-freq 1 --modes 1");
  wodzicki::Json jo = parse(odd);
  REQUIRE(odd.exit_code == 0);
  for (const auto& s : jo.at("suites")) CHECK(s.at("suite") != "einstein");
}

TEST_CASE("boundary subcommand lists the proof-step trace identities per dimension", "[cli]") {
  RunResult r = run_cli("boundary --dims 2,4,6 --jobs 3");
  REQUIRE(r.exit_code == 0);
  wodzicki::Json j = parse(r);
  CHECK(j.at("pass") == true);
  REQUIRE(j.at("results").size() == 3);
  const std::vector<std::string> traces{
      "Tr chi (E^A - E) vanishes",
      "Tr ((E^A)^2 - E^2) is the field-strength square",
      "Tr sum ((Omega^A)^2 - Omega^2) is the field-strength square",
      "every Tr chi chi_{:a} vanishes",
      "Tr chi (E^A_{;d} - E_{:d}) vanishes",
  };
  for (const auto& entry : j.at("results")) {
    CHECK(entry.at("pass") == true);
    CHECK(entry.at("endomorphism").at("pass") == true);
    const wodzicki::Json& canc = entry.at("cancellations");
    CHECK(canc.at("pass") == true);
    for (const auto& name : traces) {
      bool found = false;
      for (const auto& red : canc.at("reduced")) {
        if (red.at("name") == name) {
          found = true;
          CHECK(red.at("residual") == "0");
        }
      }
      INFO("missing trace identity: " << name << " at dimension "
                                      << entry.at("dimension").get<int>());
      CHECK(found);
    }
  }
}

TEST_CASE("explicit Fourier-table manifests run and are echoed canonically", "[cli]") {
  const std::string manifest_path = "/tmp/wodzicki_cli_manifest.json";
  const std::string report_path = "/tmp/wodzicki_cli_report.json";
  write_file(manifest_path, R"({
    "dimension": 2,
    "one_form": {
      "components": [
        [ {"frequency": [1, 0], "im": "1/2"}, {"frequency": [-1, 0], "im": "1/2"} ],
        [ {"frequency": [0, 1], "im": "-2"}, {"frequency": [0, -1], "im": "-2"} ]
      ]
    },
    "suites": ["tadpole", "powers"],
    "output": ")" + report_path + R"("
  })");
  RunResult r = run_cli("verify --manifest " + manifest_path);
  REQUIRE(r.exit_code == 0);
  CHECK(r.out == read_file(report_path));  // file and stdout carry the same bytes
  wodzicki::Json j = parse(r);
  CHECK(j.at("pass") == true);
  const wodzicki::Json& echoed = j.at("manifest").at("one_form").at("components");
  REQUIRE(echoed.size() == 2);
  CHECK(echoed[0][0].at("re") == "0");  // canonical echo fills both parts
  CHECK(echoed[0][0].at("im") == "1/2");
  std::remove(manifest_path.c_str());
  std::remove(report_path.c_str());
}

TEST_CASE("ncint serializes exact scalars symbolically", "[cli]") {
  RunResult quad = run_cli("ncint --dim 4 --seed 3 --power 2");
  REQUIRE(quad.exit_code == 0);
  wodzicki::Json jq = parse(quad);
  CHECK(jq.at("result").at("value") == "(40292/27)*pi^2");
  CHECK(jq.at("result").at("zero") == false);
  CHECK(jq.at("floor") == -4);

  RunResult lin = run_cli("ncint --dim 2 --seed 3 --power 1");
  REQUIRE(lin.exit_code == 0);
  wodzicki::Json jl = parse(lin);
  CHECK(jl.at("result").at("value") == "0");
  CHECK(jl.at("result").at("zero") == true);
}

TEST_CASE("usage and manifest errors exit 1", "[cli]") {
  CHECK(run_cli("bogus").exit_code == 1);
  CHECK(run_cli("verify").exit_code == 1);                            // no --dim, no manifest
  CHECK(run_cli("verify --suite nope --dim 2").exit_code == 1);       // unknown suite
  CHECK(run_cli("verify --suite einstein --dim 3").exit_code == 1);   // parity mismatch
  CHECK(run_cli("verify --dim 1").exit_code == 1);                    // dimension too small
  CHECK(run_cli("calibrate --dim 5").exit_code == 1);                 // unsupported oracle dim
  CHECK(run_cli("zeta-residue --dim 7").exit_code == 1);
  CHECK(run_cli("boundary --dims 3").exit_code == 1);                 // odd boundary dimension
  CHECK(run_cli("ncint --dim 4 --floor -2").exit_code == 1);          // floor above -d
  CHECK(run_cli("ncint --dim 2 --power 0").exit_code == 1);
  CHECK(run_cli("tadpole --dim 2 --orders 9").exit_code == 1);        // order beyond dimension
  CHECK(run_cli("verify --help").exit_code == 0);                     // help is not an error

  const std::string bad = "/tmp/wodzicki_cli_bad_manifest.json";
  write_file(bad, "{\"dimension\": 2, \"one_form\": {\"components\": [[{\"frequency\": [1, 0], "
                  "\"re\": \"1\"}], []]}}");
  CHECK(run_cli("verify --manifest " + bad).exit_code == 1);  // not selfadjoint
  write_file(bad, "not json");
  CHECK(run_cli("verify --manifest " + bad).exit_code == 1);
  std::remove(bad.c_str());
  CHECK(run_cli("verify --manifest /tmp/wodzicki_cli_missing.json").exit_code == 1);
}

TEST_CASE("calibrate and zeta-residue agree on the spectral residue", "[cli]") {
  RunResult cal = run_cli("calibrate --dim 3");
  REQUIRE(cal.exit_code == 0);
  wodzicki::Json jc = parse(cal);
  CHECK(jc.at("result").at("pass") == true);
  CHECK(jc.at("result").at("exact") == "(8)*pi");

  RunResult zr = run_cli("zeta-residue --dim 3");
  REQUIRE(zr.exit_code == 0);
  wodzicki::Json jz = parse(zr);
  CHECK(jz.at("result").at("converged") == true);
  // The two subcommands quote the same extrapolated number.
  CHECK(jz.at("result").at("estimate").get<double>() ==
        jc.at("result").at("oracle").at("value").get<double>());
}
