#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
  std::string cmd = std::string(GSM_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// timing columns change run to run; blank them before comparing
std::string mask_wall_time(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  std::getline(in, line);
  out += line + "\n";
  int col = -1;
  {
    std::istringstream hs(line);
    std::string h;
    for (int i = 0; std::getline(hs, h, ','); ++i)
      if (h.rfind("wall", 0) == 0) col = i;
  }
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (col >= 0 && col < static_cast<int>(cells.size())) cells[col] = "-";
    for (std::size_t i = 0; i < cells.size(); ++i)
      out += (i ? "," : "") + cells[i];
    out += "\n";
  }
  return out;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag)
      : path(fs::temp_directory_path() / ("gsm_cli_" + tag)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str() const { return path.string(); }
};

}  // namespace

TEST_CASE("generate writes a graph and oracle labels") {
  TempDir dir("gen");
  REQUIRE(run_cli("generate --kind er --n 10 --p 0.5 --seed 7 --out-dir " + dir.str()) ==
          0);
  auto graph = nlohmann::json::parse(slurp(dir.path / "graph.json"));
  CHECK(graph.at("n") == 10);
  auto labels = nlohmann::json::parse(slurp(dir.path / "labels.json"));
  CHECK(labels.contains("connected"));
}

TEST_CASE("split cycles are labeled disconnected") {
  TempDir dir("cyc");
  REQUIRE(run_cli("generate --kind cycles --n 6 --split --seed 3 --out-dir " +
                  dir.str()) == 0);
  auto labels = nlohmann::json::parse(slurp(dir.path / "labels.json"));
  CHECK(labels.at("connected") == false);
}

TEST_CASE("generate is bytewise reproducible under a fixed seed") {
  TempDir a("det_a"), b("det_b");
  std::string args = "generate --kind er --n 16 --p 0.3 --seed 123 --out-dir ";
  REQUIRE(run_cli(args + a.str()) == 0);
  REQUIRE(run_cli(args + b.str()) == 0);
  CHECK(slurp(a.path / "graph.json") == slurp(b.path / "graph.json"));
  CHECK(slurp(a.path / "labels.json") == slurp(b.path / "labels.json"));
}

TEST_CASE("tokenize khop on K3 gives 3 sequences of length 3") {
  TempDir dir("khop");
  REQUIRE(run_cli("generate --kind er --n 3 --p 1.0 --seed 1 --out-dir " + dir.str()) ==
          0);
  REQUIRE(run_cli("tokenize --method khop --k 2 --out-dir " + dir.str()) == 0);
  auto tok = nlohmann::json::parse(slurp(dir.path / "tokens.json"));
  REQUIRE(tok.at("sequences").size() == 3);
  for (const auto& seq : tok.at("sequences")) CHECK(seq.size() == 3);
}

TEST_CASE("hac tokenization writes the tree and position table") {
  TempDir dir("hac");
  REQUIRE(run_cli("generate --kind grid --rows 3 --cols 3 --out-dir " + dir.str()) == 0);
  REQUIRE(run_cli("tokenize --method hac-bfs --pe --seed 5 --out-dir " + dir.str()) == 0);
  CHECK(fs::exists(dir.path / "hac_tree.json"));
  CHECK(fs::exists(dir.path / "tokens.json"));
  std::string pe = slurp(dir.path / "pe.csv");
  CHECK(pe.rfind("u,v,d0", 0) == 0);
  // repeat into a second dir: identical bytes
  TempDir dir2("hac2");
  REQUIRE(run_cli("generate --kind grid --rows 3 --cols 3 --out-dir " + dir2.str()) == 0);
  REQUIRE(run_cli("tokenize --method hac-bfs --pe --seed 5 --out-dir " + dir2.str()) ==
          0);
  CHECK(slurp(dir2.path / "hac_tree.json") == slurp(dir.path / "hac_tree.json"));
  CHECK(slurp(dir2.path / "pe.csv") == pe);
}

TEST_CASE("mot routing file matches the requested candidates") {
  TempDir dir("mot");
  REQUIRE(run_cli("generate --kind er --n 5 --p 0.6 --seed 2 --out-dir " + dir.str()) ==
          0);
  // 17 fallback feature dims x 3 candidates
  nlohmann::json w;
  w["W_r"] = std::vector<std::vector<double>>(17, {0.1, -0.2, 0.3});
  std::ofstream((dir.path / "w.json")) << w.dump();
  REQUIRE(run_cli("tokenize --method mot --weights " + (dir.path / "w.json").string() +
                  " --candidates node,khop,hac-dfs --out-dir " + dir.str()) == 0);
  auto routing = nlohmann::json::parse(slurp(dir.path / "routing.json"));
  CHECK(routing.at("candidates").size() == 3);
  CHECK(routing.at("top2").size() == 5);
}

TEST_CASE("encode emits readable binary sequences") {
  TempDir dir("enc");
  REQUIRE(run_cli("generate --kind er --n 6 --p 0.5 --seed 4 --out-dir " + dir.str()) ==
          0);
  REQUIRE(run_cli("tokenize --method node --out-dir " + dir.str()) == 0);
  REQUIRE(run_cli("encode --d-local 4 --depth 1 --seed 9 --out-dir " + dir.str()) == 0);
  auto index = nlohmann::json::parse(slurp(dir.path / "encoded_index.json"));
  REQUIRE(index.at("sequences").size() == 6);
  CHECK(fs::exists(dir.path / "encoded_000000.bin"));
}

TEST_CASE("run reports exact construction matches") {
  TempDir dir("run");
  REQUIRE(run_cli("run --task color-count --instances 10 --seed 11 --out-dir " +
                  dir.str()) == 0);
  std::string metrics = slurp(dir.path / "metrics.csv");
  CHECK(metrics.rfind("task,method,exact_match_rate,wall_time_ms,peak_window\n", 0) == 0);
  CHECK(metrics.find("color-count,ssm-identity-state,1,") != std::string::npos);

  TempDir dir2("run2");
  REQUIRE(run_cli("run --task color-count --instances 10 --seed 11 --out-dir " +
                  dir2.str()) == 0);
  CHECK(mask_wall_time(slurp(dir2.path / "metrics.csv")) == mask_wall_time(metrics));
}

TEST_CASE("run covers the streaming pipeline") {
  TempDir dir("runs");
  REQUIRE(run_cli("run --task stream-connectivity --instances 8 --seed 13 --out-dir " +
                  dir.str()) == 0);
  std::string metrics = slurp(dir.path / "metrics.csv");
  CHECK(metrics.find("stream-connectivity,window-automaton-hac-order,1,") !=
        std::string::npos);
}

TEST_CASE("verify exits zero on a passing suite and writes a report") {
  TempDir dir("ver");
  REQUIRE(run_cli("verify --suite hac-mst --out-dir " + dir.str()) == 0);
  auto report = nlohmann::json::parse(slurp(dir.path / "report.json"));
  REQUIRE(report.size() >= 1);
  CHECK(report[0].at("passed") == true);
  REQUIRE(run_cli("verify --suite hac-mst --format csv --out-dir " + dir.str()) == 0);
  CHECK(slurp(dir.path / "report.csv").rfind("name,passed,detail\n", 0) == 0);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("") == 2);
  CHECK(run_cli("generate --kind nosuch") == 2);
  CHECK(run_cli("verify --suite nosuch") == 2);
  CHECK(run_cli("frobnicate") == 2);
}

TEST_CASE("help exits zero") {
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("generate --help") == 0);
}
