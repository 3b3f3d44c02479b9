#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "hcsp/instance.hpp"
#include "hcsp/report_io.hpp"

using namespace hcsp;
namespace fs = std::filesystem;

namespace {

const char* cli() { return HCSP_CLI_PATH; }

fs::path work_dir() {
  const fs::path p = fs::temp_directory_path() / "hcsp_test_cli";
  fs::create_directories(p);
  return p;
}

int run(const std::string& args) {
  const std::string cmd = std::string(cli()) + " " + args + " >/dev/null 2>&1";
  return std::system(cmd.c_str());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)), {});
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("generate writes the requested number of reloadable files") {
  const fs::path out = work_dir() / "gen";
  fs::remove_all(out);
  REQUIRE(run("generate --services 10 --count 10 --seed 7 --out " + out.string()) == 0);
  int files = 0;
  for (const auto& e : fs::directory_iterator(out))
    if (e.path().extension() == ".json" && e.path().filename() != "manifest.json") {
      ++files;
      CHECK_NOTHROW(load_instance(e.path()));
    }
  CHECK(files == 10);
  CHECK(fs::exists(out / "manifest.json"));
}

TEST_CASE("generate is reproducible: same flags, identical bytes") {
  const fs::path out1 = work_dir() / "gen_a";
  const fs::path out2 = work_dir() / "gen_b";
  fs::remove_all(out1);
  fs::remove_all(out2);
  REQUIRE(run("generate --services 6 --caregivers 2 --seed 3 --profile tiny --out " +
              out1.string()) == 0);
  REQUIRE(run("generate --services 6 --caregivers 2 --seed 3 --profile tiny --out " +
              out2.string()) == 0);
  for (const auto& e : fs::directory_iterator(out1)) {
    if (e.path().filename() == "manifest.json") continue;
    CHECK(slurp(e.path()) == slurp(out2 / e.path().filename()));
  }
}

TEST_CASE("invalid sizes are a usage error") {
  CHECK(run("generate --services 0 --out " + (work_dir() / "bad").string()) != 0);
}

TEST_CASE("solve twice with the same seed produces byte-identical fronts") {
  const fs::path out = work_dir();
  fs::remove_all(out / "inst");
  REQUIRE(run("generate --services 6 --caregivers 2 --seed 5 --profile tiny --out " +
              (out / "inst").string()) == 0);
  fs::path instance;
  for (const auto& e : fs::directory_iterator(out / "inst"))
    if (e.path().filename() != "manifest.json") instance = e.path();
  REQUIRE(!instance.empty());

  fs::remove_all(out / "run_a");
  fs::remove_all(out / "run_b");
  REQUIRE(run("solve " + instance.string() + " --preset smoke --seed 42 --out " +
              (out / "run_a").string()) == 0);
  REQUIRE(run("solve " + instance.string() + " --preset smoke --seed 42 --out " +
              (out / "run_b").string()) == 0);
  const std::string front_a = slurp(out / "run_a" / "front.csv");
  CHECK(!front_a.empty());
  CHECK(front_a == slurp(out / "run_b" / "front.csv"));

  SUBCASE("solve emits manifest, log and solutions") {
    CHECK(fs::exists(out / "run_a" / "manifest.json"));
    CHECK(fs::exists(out / "run_a" / "run_log.jsonl"));
    CHECK(fs::exists(out / "run_a" / "solutions" / "sol_0001.json"));
  }

  SUBCASE("a solved solution file passes eval") {
    const std::string cmd = std::string(cli()) + " eval " + instance.string() + " " +
                            (out / "run_a" / "solutions" / "sol_0001.json").string() + " > " +
                            (out / "eval.json").string() + " 2>/dev/null";
    REQUIRE(std::system(cmd.c_str()) == 0);
    Json j;
    std::ifstream(out / "eval.json") >> j;
    CHECK(j["feasible"].get<bool>());
    CHECK(j["objectives"].contains("cost"));
  }

  SUBCASE("exact solves the instance and compare runs against the metaheuristic") {
    fs::remove_all(out / "exact");
    REQUIRE(run("exact " + instance.string() + " --full-grid --out " +
                (out / "exact").string()) == 0);
    CHECK(fs::exists(out / "exact" / "front.csv"));

    fs::remove_all(out / "cmp");
    REQUIRE(run("compare " + (out / "exact" / "front.csv").string() + " " +
                (out / "run_a" / "front.csv").string() + " --labels exact,alg --out " +
                (out / "cmp").string()) == 0);
    const std::string report = slurp(out / "cmp" / "report.csv");
    CHECK(report.find("method,CV,EPS,GD,IGD") == 0);
    CHECK(report.find("exact,") != std::string::npos);
    CHECK(report.find("alg,") != std::string::npos);

    // plot data row counts equal front sizes
    const auto count_rows = [](const fs::path& p) {
      std::ifstream in(p);
      std::string line;
      int rows = -1;  // skip header
      while (std::getline(in, line))
        if (!line.empty()) ++rows;
      return rows;
    };
    CHECK(count_rows(out / "cmp" / "plot_exact.csv") ==
          count_rows(out / "exact" / "front.csv"));
    CHECK(count_rows(out / "cmp" / "plot_alg.csv") == count_rows(out / "run_a" / "front.csv"));
  }

  SUBCASE("compare of a front with itself reports zeros") {
    fs::remove_all(out / "self");
    REQUIRE(run("compare " + (out / "run_a" / "front.csv").string() + " " +
                (out / "run_a" / "front.csv").string() + " --labels a,b --out " +
                (out / "self").string()) == 0);
    std::ifstream in(out / "self" / "report.csv");
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(row.rfind("a,0,0,0,0,", 0) == 0);
  }
}

TEST_CASE("exact with --emit-lp writes one LP file per solved grid point") {
  const fs::path out = work_dir();
  fs::remove_all(out / "inst2");
  REQUIRE(run("generate --services 4 --caregivers 2 --seed 8 --profile tiny --out " +
              (out / "inst2").string()) == 0);
  fs::path instance;
  for (const auto& e : fs::directory_iterator(out / "inst2"))
    if (e.path().filename() != "manifest.json") instance = e.path();

  fs::remove_all(out / "lp_run");
  REQUIRE(run("exact " + instance.string() + " --g2 5 --emit-lp --out " +
              (out / "lp_run").string()) == 0);
  Json manifest;
  std::ifstream(out / "lp_run" / "manifest.json") >> manifest;
  const int solved = manifest["trace"]["grid_points_solved"].get<int>();
  int lp_files = 0;
  for (const auto& e : fs::directory_iterator(out / "lp_run" / "lp"))
    if (e.path().filename().string().rfind("grid_", 0) == 0) ++lp_files;
  CHECK(lp_files == solved);
}

TEST_CASE("oversized instances without a solver give a clean error") {
  const fs::path out = work_dir();
  fs::remove_all(out / "inst3");
  REQUIRE(run("generate --services 9 --caregivers 2 --seed 9 --profile tiny --out " +
              (out / "inst3").string()) == 0);
  fs::path instance;
  for (const auto& e : fs::directory_iterator(out / "inst3"))
    if (e.path().filename() != "manifest.json") instance = e.path();
  CHECK(run("exact " + instance.string() + " --out " + (out / "too_big").string()) != 0);
}

TEST_CASE("malformed front files are rejected by compare") {
  const fs::path bad = work_dir() / "bad_front.csv";
  std::ofstream(bad) << "f1,f2\n1,notanumber\n";
  CHECK(run("compare " + bad.string() + " " + bad.string() + " --out " +
            (work_dir() / "bad_cmp").string()) != 0);
}

TEST_SUITE_END();
