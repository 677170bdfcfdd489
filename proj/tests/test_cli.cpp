#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

std::string cli() { return BMQC_CLI_PATH; }

int run(const std::string& args) {
  std::string cmd = cli() + " " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path tmpdir() {
  fs::path d = fs::temp_directory_path() / "bmqc_cli_test";
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("kl-check writes residuals and is byte-deterministic") {
  fs::path out1 = tmpdir() / "kl1.csv";
  fs::path out2 = tmpdir() / "kl2.csv";
  REQUIRE(run("kl-check --code N1S1 --errors I,a -o " + out1.string()) == 0);
  REQUIRE(run("kl-check --code N1S1 --errors I,a -o " + out2.string()) == 0);
  std::string body1 = slurp(out1), body2 = slurp(out2);
  CHECK(body1 == body2);
  CHECK(body1.find("# config-hash:") != std::string::npos);
  CHECK(body1.find("# tolerances:") != std::string::npos);
  CHECK(body1.find("cross") != std::string::npos);
}

TEST_CASE("config errors exit with code 1 and name the offending key") {
  CHECK(run("kl-check --code BOGUS") == 1);
  CHECK(run("cluster --topology nonsense") == 1);
  CHECK(run("cluster --strategy sideways") == 1);
  CHECK(run("definitely-not-a-command") == 1);
}

TEST_CASE("cz-tomo emits the map and a json summary") {
  fs::path prefix = tmpdir() / "tomo";
  REQUIRE(run("cz-tomo --beta 1.0 -o " + prefix.string()) == 0);
  std::string csv = slurp(prefix.string() + ".csv");
  CHECK(csv.find("II,IX") != std::string::npos);
  CHECK(csv.find("max|delta|") != std::string::npos);
  std::string js = slurp(prefix.string() + ".json");
  CHECK(js.find("\"delta\"") != std::string::npos);
  CHECK(js.find("\"fidelity_psi1_psi2\"") != std::string::npos);
}

TEST_CASE("prep writes the per-target rows") {
  fs::path out = tmpdir() / "prep.csv";
  REQUIRE(run("prep --targets plus --betas 0.999 -o " + out.string()) == 0);
  std::string body = slurp(out);
  CHECK(body.find("name,beta,F1,F2,success_prob,alpha,r,beta_rot,zeta") != std::string::npos);
  CHECK(body.find("plus,0.999") != std::string::npos);
}

TEST_CASE("cluster accepts an edge-list graph file") {
  fs::path graph = tmpdir() / "pair.graph";
  {
    std::ofstream g(graph);
    g << "1 2\n[substitutions]\n2 0.785398 0\n";
  }
  fs::path out = tmpdir() / "cluster.csv";
  REQUIRE(run("cluster --graph " + graph.string() + " --strategy per-edge --betas 1.0 -o " +
              out.string()) == 0);
  std::string body = slurp(out);
  CHECK(body.find("beta,vertex,stabilizer") != std::string::npos);
  CHECK(body.find("1,1,") != std::string::npos);
}
