#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pairint/sweep.hpp"

using namespace pairint;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SweepConfig small_config() {
  SweepConfig cfg;
  cfg.L_min = 0.5;
  cfg.L_max = 1.5;
  cfg.L_steps = 3;
  cfg.G_min = 0.5;
  cfg.G_max = 1.5;
  cfg.G_steps = 3;
  cfg.n = 60;
  cfg.workers = 2;
  return cfg;
}

}  // namespace

TEST_CASE("phase point json round trip") {
  PhasePoint p;
  p.iL = 2;
  p.iG = 5;
  p.L = 1.25;
  p.G = 0.375;
  p.ok = true;
  p.tag = SolutionTag::DiracLattice;
  p.n_atoms = 4;
  p.spacing = 0.25;
  p.E_R = -0.125;
  p.alpha = 0.99;
  p.n = 200;
  p.tol = 1e-8;
  p.seed = 7;
  p.wall_ms = 12.5;
  PhasePoint q = phase_point_from_json(phase_point_to_json(p, true));
  CHECK(q.iL == p.iL);
  CHECK(q.iG == p.iG);
  CHECK(q.tag == p.tag);
  CHECK(q.n_atoms == p.n_atoms);
  CHECK(q.E_R == p.E_R);
  CHECK(q.alpha == p.alpha);
  CHECK(q.wall_ms == p.wall_ms);
  // the volatile field stays out of the durable form
  CHECK(phase_point_to_json(p, false).find("wall_ms") == std::string::npos);
}

TEST_CASE("sweep runs, checkpoints and resumes to identical tables") {
  fs::path dir = fs::temp_directory_path() / "pairint_sweep_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  SweepConfig cfg = small_config();

  auto table_string = [](const SweepResult& r) {
    std::string s;
    for (const PhasePoint& p : r.table) s += phase_point_to_json(p, false) + "\n";
    return s;
  };

  SweepResult full = phase_sweep(cfg, (dir / "a.jsonl").string());
  CHECK(full.table.size() == 9);
  for (const PhasePoint& p : full.table) CHECK(p.ok);

  // truncate a copy of the checkpoint to simulate an interrupted run
  {
    std::ifstream in(dir / "a.jsonl");
    std::ofstream out(dir / "b.jsonl");
    std::string line;
    for (int i = 0; i < 4 && std::getline(in, line); ++i) out << line << "\n";
  }
  SweepResult resumed = phase_sweep(cfg, (dir / "b.jsonl").string());
  CHECK(table_string(resumed) == table_string(full));

  // a second full pass over a complete checkpoint recomputes nothing
  SweepResult cached = phase_sweep(cfg, (dir / "a.jsonl").string());
  CHECK(table_string(cached) == table_string(full));
  fs::remove_all(dir);
}

TEST_CASE("region labeling") {
  SweepConfig cfg = small_config();
  std::vector<PhasePoint> table;
  for (int iL = 0; iL < 3; ++iL)
    for (int iG = 0; iG < 3; ++iG) {
      PhasePoint p;
      p.iL = iL;
      p.iG = iG;
      p.ok = true;
      p.tag = SolutionTag::Constant;
      table.push_back(p);
    }
  RegionMap one = classify_regions(cfg, table);
  CHECK(one.num_regions == 1);

  // checkerboard of two kinds: every cell is its own region
  for (PhasePoint& p : table)
    p.tag = (p.iL + p.iG) % 2 == 0 ? SolutionTag::Constant : SolutionTag::SingleDelta;
  RegionMap checker = classify_regions(cfg, table);
  CHECK(checker.num_regions == 9);

  // lattices with different atom counts are distinct kinds
  for (PhasePoint& p : table) {
    p.tag = SolutionTag::DiracLattice;
    p.n_atoms = p.iL == 0 ? 2 : 3;
  }
  RegionMap bands = classify_regions(cfg, table);
  CHECK(bands.num_regions == 2);
}

TEST_CASE("cli artifacts embed config and reproduce hashes") {
  fs::path dir = fs::temp_directory_path() / "pairint_cli_test";
  fs::remove_all(dir);
  fs::create_directories(dir);

  std::string cli = PAIRINT_CLI_PATH;
  auto run = [&](const std::string& args) {
    std::string cmd = cli + " " + args + " > /dev/null 2>&1";
    return std::system(cmd.c_str());
  };

  std::string out1 = (dir / "r1").string(), out2 = (dir / "r2").string();
  REQUIRE(run("solve --family local --lc 0.1 --n 60 --out " + out1) == 0);
  REQUIRE(run("solve --family local --lc 0.1 --n 60 --out " + out2) == 0);

  auto j1 = nlohmann::ordered_json::parse(slurp(fs::path(out1) / "relaxation.json"));
  auto j2 = nlohmann::ordered_json::parse(slurp(fs::path(out2) / "relaxation.json"));
  CHECK(j1["schema"] == 1);
  CHECK(j1["config"]["family"] == "local");
  CHECK(j1["config"]["n"] == 60);
  CHECK(j1.contains("content_hash"));
  CHECK(j1["content_hash"] == j2["content_hash"]);
  CHECK(slurp(fs::path(out1) / "dual_decomposition.csv") ==
        slurp(fs::path(out2) / "dual_decomposition.csv"));

  // config file + flag override: flags win
  {
    std::ofstream cfg(dir / "run.cfg");
    cfg << "family=local\nlc=0.1\nn=44\n";
  }
  REQUIRE(run("solve --config " + (dir / "run.cfg").string() + " --n 60 --out " +
              (dir / "r3").string()) == 0);
  auto j3 = nlohmann::ordered_json::parse(slurp(dir / "r3" / "relaxation.json"));
  CHECK(j3["config"]["n"] == 60);
  CHECK(j3["content_hash"] == j1["content_hash"]);

  // exit codes: bad parameters are configuration errors
  CHECK(run("solve --family local --lc 0 --n 32 --out " + (dir / "bad").string()) != 0);

  // a zero tabulated potential solves to the degenerate zero objective
  {
    std::ofstream z(dir / "zero.txt");
    z << "1 16\n";
    for (int i = 0; i < 16; ++i) z << "0 ";
  }
  REQUIRE(run("solve --tabulated " + (dir / "zero.txt").string() + " --out " +
              (dir / "rz").string()) == 0);
  auto jz = nlohmann::ordered_json::parse(slurp(dir / "rz" / "relaxation.json"));
  CHECK(jz["degenerate"] == true);
  CHECK(std::abs(jz["E_R"].get<double>()) <= 1e-10);

  fs::remove_all(dir);
}

TEST_CASE("tiny sweep via the cli emits table and regions") {
  fs::path dir = fs::temp_directory_path() / "pairint_cli_sweep";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::string cli = PAIRINT_CLI_PATH;
  std::string cmd = cli +
                    " sweep --family morse1d --sigma 0.1 --L-min 0.5 --L-max 1.5 --L-steps 2"
                    " --G-min 0.5 --G-max 1.5 --G-steps 2 --n 48 --out " +
                    dir.string() + " > /dev/null 2>&1";
  REQUIRE(std::system(cmd.c_str()) == 0);
  CHECK(fs::exists(dir / "checkpoint.jsonl"));
  CHECK(fs::exists(dir / "table.jsonl"));
  CHECK(fs::exists(dir / "regions.csv"));
  std::ifstream table(dir / "table.jsonl");
  int lines = 0;
  std::string line;
  while (std::getline(table, line))
    if (!line.empty()) ++lines;
  CHECK(lines == 4);
  fs::remove_all(dir);
}
