#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hsp/cli.hpp"

using namespace hsp;

namespace {

struct CliResult {
  int code = 0;
  std::string out, err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliResult r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

}  // namespace

TEST_CASE("usage errors exit with status 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"verify"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"verify", "--identity", "nope", "--all"}).code == 2);
  CHECK(run({"verify", "--family", "so"}).code == 2);
  CHECK(run({"verify", "--format", "xml", "--all"}).code == 2);
  const CliResult guard = run({"verify", "--family", "sostar", "--n", "8"});
  CHECK(guard.code == 2);
  CHECK(guard.err.find("cost guard") != std::string::npos);
}

TEST_CASE("version and help") {
  const CliResult v = run({"--version"});
  CHECK(v.code == 0);
  CHECK(v.out == std::string(tool_version) + "\n");
  const CliResult h = run({"--help"});
  CHECK(h.code == 0);
  CHECK(h.out.find("verify") != std::string::npos);
}

TEST_CASE("passing selection prints stable text and exits 0") {
  const std::vector<std::string> args{"verify", "--identity", "nilpotency",
                                      "--family", "sp"};
  const CliResult r = run(args);
  CHECK(r.code == 0);
  CHECK(r.out ==
        "PASS nilpotency sp n=1\n"
        "PASS nilpotency sp n=2\n"
        "PASS nilpotency sp n=3\n"
        "summary: 3 checks, 3 passed, 0 failed\n");
  // Identical bytes regardless of worker count.
  const CliResult parallel = run({"verify", "--identity", "nilpotency", "--family",
                                  "sp", "--jobs", "4"});
  CHECK(parallel.out == r.out);
}

TEST_CASE("failing checks exit 1 and carry the witness") {
  const CliResult r = run({"verify", "--identity", "msf-det", "--p", "1", "--q", "1",
                           "--sign-mode", "as-printed"});
  CHECK(r.code == 1);
  CHECK(r.out ==
        "FAIL minor-summation-determinant p=1 q=1 sign_mode=0 "
        "witness: term 2 * z[1,1] * xi[1,1]\n"
        "summary: 1 checks, 0 passed, 1 failed\n");
  const CliResult mut = run({"verify", "--identity", "nilpotency", "--family",
                             "sostar", "--n", "2", "--mutate", "1", "3"});
  CHECK(mut.code == 1);
  CHECK(mut.out.find("witness: entry (1,3)") != std::string::npos);
}

TEST_CASE("json format carries schema and per-report fields") {
  const CliResult r = run({"verify", "--identity", "gen-fn", "--family", "su",
                           "--p", "2", "--q", "1", "--format", "json"});
  CHECK(r.code == 0);
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc.at("schema_version") == 1);
  CHECK(doc.at("tool_version") == "1.0.0");
  CHECK(doc.at("summary").at("total") == 1);
  CHECK(doc.at("summary").at("failed") == 0);
  const auto& rep = doc.at("reports").at(0);
  CHECK(rep.at("identity") == "generating-function");
  CHECK(rep.at("family") == "su");
  CHECK(rep.at("params").at("p") == 2);
  CHECK(rep.at("status") == "pass");
  CHECK(rep.at("witness") == "");
  CHECK(rep.at("elapsed_ms").is_number());
  CHECK(rep.at("tool_version") == "1.0.0");
}

TEST_CASE("report can be written to a file") {
  const std::string path = "cli_out_test.json";
  const CliResult r = run({"verify", "--identity", "phi", "--n", "1", "--format",
                           "json", "--out", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  REQUIRE(in.good());
  const nlohmann::json doc = nlohmann::json::parse(in);
  CHECK(doc.at("reports").at(0).at("identity") == "phi-generating-function");
  CHECK(doc.at("reports").at(0).at("family") == "-");
  in.close();
  std::remove(path.c_str());
}

TEST_CASE("full run over every identity passes") {
  const CliResult r = run({"verify", "--all", "--jobs", "4"});
  CHECK(r.code == 0);
  CHECK(r.out.find("summary: 91 checks, 91 passed, 0 failed") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("dump prints constructed objects") {
  const CliResult basis = run({"dump", "--what", "basis", "--family", "su", "--p",
                               "1", "--q", "1"});
  CHECK(basis.code == 0);
  CHECK(basis.out ==
        "H[1]: (1,1)=1 (2,2)=-1\n"
        "X+[1,1]: (1,2)=1\n"
        "X-[1,1]: (2,1)=1\n");
  const CliResult gamma = run({"dump", "--what", "gamma", "--family", "sp", "--n", "1"});
  CHECK(gamma.code == 0);
  CHECK(gamma.out ==
        "gamma_0 = 1\n"
        "gamma_1 = 2 * z[1,1] * xi[1,1]\n");
  const CliResult one = run({"dump", "--what", "Gamma", "--family", "sp", "--n", "1",
                             "--k", "1"});
  CHECK(one.out == "Gamma_1 = 2 * z[1,1] * d[1,1]\n");
  const CliResult phi = run({"dump", "--what", "phi", "--n", "1"});
  CHECK(phi.out == "[0, u]\n[-u, 0]\n");
  const CliResult sigma = run({"dump", "--what", "sigma-tilde", "--family", "sostar",
                               "--n", "1"});
  CHECK(sigma.code == 0);
  CHECK(sigma.out == "[u, 0]\n[0, -u]\n");
  CHECK(run({"dump", "--what", "basis"}).code == 2);
  CHECK(run({"dump", "--what", "sigma", "--family", "su", "--p", "2"}).code == 2);
  CHECK(run({"dump"}).code == 2);
}
