#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "recmech/cli.hpp"

namespace {

int run_cli(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"recmech"};
  argv.insert(argv.end(), args.begin(), args.end());
  return recmech::cli_main(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::ostringstream out;
  out << f.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path);
  f << body;
}

struct TempFile {
  std::string path;
  explicit TempFile(std::string p) : path(std::move(p)) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("gen then run round-trips a facility instance") {
  TempFile pts("cli_pts.csv");
  CHECK(run_cli({"gen", "--named", "fl-worst-max", "--rho", "1.5", "--out",
                 pts.path.c_str()}) == 0);
  const std::string body = slurp(pts.path);
  CHECK(body.rfind("x,y\n", 0) == 0);

  TempFile out("cli_run.json");
  CHECK(run_cli({"run", "facility-mbb", "--input", pts.path.c_str(), "--advice",
                 "0.3535533905932738,0.3535533905932738", "--out",
                 out.path.c_str()}) == 0);
  const auto j = nlohmann::json::parse(slurp(out.path));
  CHECK(j["report"]["ratio"].get<double>() == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(j["payments"].size() == 3);
}

TEST_CASE("sweep emits a grid-cardinality CSV") {
  TempFile pts("cli_sweep_pts.csv");
  write_file(pts.path, "x,y\n0,0\n1,1\n0.2,0.8\n");
  TempFile out("cli_sweep.csv");
  CHECK(run_cli({"sweep", "facility-cmp", "--input", pts.path.c_str(), "--grid",
                 "4", "--lambda", "0.5", "--format", "csv", "--out",
                 out.path.c_str()}) == 0);
  const std::string body = slurp(out.path);
  CHECK(body.rfind("idx,param,rho_hat,eta,ratio\n", 0) == 0);
  CHECK(std::count(body.begin(), body.end(), '\n') == 17);  // header + 16 rows
}

TEST_CASE("audit subcommand reports no violations on a truthful mechanism") {
  TempFile out("cli_audit.json");
  CHECK(run_cli({"audit", "sp", "--setting", "house", "--trials", "25", "--seed",
                 "7", "--out", out.path.c_str()}) == 0);
  const auto j = nlohmann::json::parse(slurp(out.path));
  CHECK(j["trials"] == 25);
  CHECK(j["violations"].empty());
}

TEST_CASE("oracle subcommand prints the exact optimum") {
  TempFile pts("cli_oracle_pts.csv");
  write_file(pts.path, "x,y\n0,0\n2,0\n");
  TempFile out("cli_oracle.json");
  CHECK(run_cli({"oracle", "facility-egalitarian", "--input", pts.path.c_str(),
                 "--out", out.path.c_str()}) == 0);
  const auto j = nlohmann::json::parse(slurp(out.path));
  CHECK(j["value"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("run house-ttc end to end") {
  TempFile vals("cli_house.csv");
  write_file(vals.path, "1,0\n0,1\n");
  TempFile out("cli_house.json");
  CHECK(run_cli({"run", "house-ttc", "--input", vals.path.c_str(),
                 "--normalization", "unit-range", "--advice", "2,1", "--out",
                 out.path.c_str()}) == 0);
  const auto j = nlohmann::json::parse(slurp(out.path));
  CHECK(j["matching"] == "1,2");  // both agents trade back to their favorites
  CHECK(j["report"]["ratio"] == 1.0);
}

TEST_CASE("run multi-unit-mir end to end") {
  TempFile curves("cli_mu.csv");
  write_file(curves.path, "2,4\n0,10,10,10,10\n0,6,12,18,24\n");
  TempFile out("cli_mu.json");
  CHECK(run_cli({"run", "multi-unit-mir", "--input", curves.path.c_str(),
                 "--advice-counts", "4,0", "--out", out.path.c_str()}) == 0);
  const auto j = nlohmann::json::parse(slurp(out.path));
  CHECK(j["allocation"] == "1,3");
  CHECK(j["report"]["mech_value"] == 28.0);
}

TEST_CASE("exit codes: 1 for usage errors, 2 for data errors") {
  CHECK(run_cli({"run", "no-such-mechanism", "--input", "whatever.csv"}) == 1);
  CHECK(run_cli({"frobnicate"}) == 1);
  CHECK(run_cli({"run", "facility-mbb", "--input", "missing_file.csv",
                 "--advice", "0,0"}) == 2);
  TempFile bad("cli_bad.csv");
  write_file(bad.path, "x,y\nnope,1\n");
  CHECK(run_cli({"run", "facility-mbb", "--input", bad.path.c_str(), "--advice",
                 "0,0"}) == 2);
}

TEST_CASE("--help succeeds for every subcommand") {
  CHECK(run_cli({"--help"}) == 0);
  for (const char* sub : {"run", "sweep", "gen", "oracle"}) {
    CHECK(run_cli({sub, "--help"}) == 0);
  }
  CHECK(run_cli({"audit", "sp", "--help"}) == 0);
}
