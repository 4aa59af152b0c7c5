#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <random>
#include <string>

#include "random_graphs.hpp"

using unobs::testing::data_path;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(UNOBS_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  Run r;
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string grid(const char* name) { return "--grid " + data_path(name); }

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("unobs_cli_test_" + name);
}

}  // namespace

TEST_CASE("analyze path-3") {
  Run r = run("analyze " + grid("path3.json") + " --pmus 3");
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["min_sparsity"] == 2);
  CHECK(j["provenance"]["input_sha256"].get<std::string>().size() == 64);
  CHECK(j["provenance"]["pmu_model"] == 1);

  Run full = run("analyze " + grid("path3.json") + " --pmus 1,2,3");
  REQUIRE(full.code == 0);
  CHECK(nlohmann::json::parse(full.out)["min_sparsity"] == "inf");

  CHECK(run("analyze " + grid("path3.json") + " --pmus 9").code == 2);
}

TEST_CASE("analyze output is byte-stable and written to --out") {
  auto out = temp_file("report.json");
  std::string args = "analyze " + grid("twocuts10.json") + " --pmus 7,9 --seed 5 --out " + out.string();
  Run a = run(args);
  Run b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  std::ifstream in(out);
  std::string written((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(written == a.out);
  auto j = nlohmann::json::parse(a.out);
  CHECK(j["provenance"]["seed"] == 5);
  CHECK(j["provenance"]["reactance_range"] == nlohmann::json::array({0.8, 1.2}));
  std::filesystem::remove(out);
}

TEST_CASE("place path-3 under model 2") {
  auto csv = temp_file("trace.csv");
  Run r = run("place " + grid("path3.json") + " --model 2 --trace " + csv.string());
  REQUIRE(r.code == 0);
  CHECK(r.out.find("PMUs used: 2 / 3") != std::string::npos);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "m,bus_added,min_sparsity,max_impact_sparsest,max_impact_all");
  std::filesystem::remove(csv);

  CHECK(run("place --grid /nonexistent/grid.json").code == 2);
}

TEST_CASE("feasibility verdicts") {
  Run r = run("feasibility " + grid("path3.json") + " --pmus 3 --attack-set 1,2");
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["feasible"] == true);
  CHECK(j["certificate"] == "dimension");

  Run no = run("feasibility " + grid("path3.json") + " --pmus 3 --attack-set 1");
  REQUIRE(no.code == 0);
  CHECK(nlohmann::json::parse(no.out)["feasible"] == false);

  CHECK(run("feasibility " + grid("path3.json") + " --pmus 3 --attack-set 1 --unalterable 1").code == 2);
}

TEST_CASE("oracle self-audit") {
  CHECK(run("oracle " + grid("path3.json") + " --pmus 3 --check").code == 0);
  Run c4 = run("oracle " + grid("cycle4.json") + " --pmus 1 --check");
  CHECK(c4.code == 0);
  CHECK(nlohmann::json::parse(c4.out)["agree"] == true);

  std::mt19937_64 rng(1);
  unobs::Grid big = unobs::testing::random_connected_grid(rng, 20, 0.1);
  nlohmann::json doc;
  for (const auto& b : big.buses()) doc["buses"].push_back({{"id", b.id}});
  for (const auto& l : big.lines()) doc["lines"].push_back({{"from", l.from}, {"to", l.to}, {"x", l.reactance}});
  auto path = temp_file("big.json");
  std::ofstream(path) << doc.dump();
  CHECK(run("oracle --grid " + path.string() + " --pmus 1").code == 2);
  std::filesystem::remove(path);
}

TEST_CASE("usage errors exit 2 and help exits 0") {
  CHECK(run("").code == 2);
  CHECK(run("analyze --pmus 3").code == 2);
  CHECK(run("analyze " + grid("path3.json") + " --pmus 3 --model 5").code == 2);
  CHECK(run("analyze " + grid("path3.json") + " --pmus 3 --tol -1").code == 2);
  CHECK(run("analyze " + grid("path3.json") + " --pmus 3 --randomize-x 1.2,0.8").code == 2);
  CHECK(run("--help").code == 0);
}
