#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kFixture = LBSNET_FIXTURES "/crossnet10/";

struct Run {
  int code = -1;
  std::string err;
};

Run lbsnet(const std::string& args, const std::string& env = {}) {
  const auto err_path = fs::temp_directory_path() / ("lbsnet_cli_err_" + std::to_string(::getpid()));
  const std::string cmd = env + " '" LBSNET_CLI "' " + args + " >/dev/null 2>'" + err_path.string() + "'";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(err_path);
  std::stringstream ss;
  ss << in.rdbuf();
  r.err = ss.str();
  fs::remove(err_path);
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("lbsnet_cli_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
  std::string str() const { return path.string(); }
};

std::string crossnet_args(const std::string& out) {
  return "crossnet --target " + kFixture + "target.tsv --source " + kFixture + "source.tsv --mapping " + kFixture +
         "mapping.tsv --log " + kFixture + "interactions.tsv --interests " + kFixture + "interests.tsv -o " + out;
}

}  // namespace

TEST_CASE("generate is deterministic") {
  TempDir a("gen_a"), b("gen_b");
  REQUIRE(lbsnet("generate --family er --n 1000 --mean-degree 10 --seed 1 -o " + a.str()).code == 0);
  REQUIRE(lbsnet("generate --family er --n 1000 --mean-degree 10 --seed 1 -o " + b.str()).code == 0);
  CHECK(slurp(a / "graph.tsv") == slurp(b / "graph.tsv"));
  CHECK(slurp(a / "graph.tsv.meta.json") == slurp(b / "graph.tsv.meta.json"));
  CHECK(slurp(a / "graph.json") == slurp(b / "graph.json"));

  const auto meta = nlohmann::json::parse(slurp(a / "graph.tsv.meta.json"));
  CHECK(meta["seed"] == 1);
  CHECK(meta["version"] == "0.1.0");
  CHECK(meta["config"]["family"] == "er");
  const auto sidecar = nlohmann::json::parse(slurp(a / "graph.json"));
  CHECK(sidecar["summary"]["node_count"] == 1000);
}

TEST_CASE("generated edge lists re-ingest with identical statistics") {
  TempDir d("roundtrip");
  REQUIRE(lbsnet("generate --family ring --n 300 --k 6 --beta 0.2 --seed 4 -o " + d.str()).code == 0);
  REQUIRE(lbsnet("metrics --input " + (d / "graph.tsv") + " -o " + d.str()).code == 0);
  const auto gen = nlohmann::json::parse(slurp(d / "graph.json"))["summary"];
  const auto met = nlohmann::json::parse(slurp(d / "metrics.json"));
  CHECK(gen["mean_k"] == met["mean_k"]);
  CHECK(gen["mean_k2"] == met["mean_k2"]);
  CHECK(gen["edge_count"] == met["edge_count"]);
  CHECK(gen["clustering_mean_local"].get<double>() == doctest::Approx(met["clustering_mean_local"].get<double>()));
}

TEST_CASE("sweep output does not depend on the thread count") {
  TempDir d("sweep");
  REQUIRE(lbsnet("generate --family er --n 3000 --mean-degree 10 --seed 2 -o " + d.str()).code == 0);
  const std::string base = "sweep --source " + (d / "graph.tsv") + " --p1 1,0.5 --p2 0.05,0.2,0.6 --replicas 3 --seed 8";
  REQUIRE(lbsnet(base + " --threads 1 -o " + (d / "t1")).code == 0);
  REQUIRE(lbsnet(base + " --threads 3 -o " + (d / "t3")).code == 0);
  CHECK(slurp(d / "t1/sweep.csv") == slurp(d / "t3/sweep.csv"));
  CHECK(slurp(d / "t1/sweep_summary.json").size() > 0);
}

TEST_CASE("sweep, theory and compare pipeline") {
  TempDir d("pipeline");
  REQUIRE(lbsnet("generate --family er --n 20000 --mean-degree 10 --seed 3 -o " + d.str()).code == 0);
  REQUIRE(lbsnet("sweep --source " + (d / "graph.tsv") + " --p1 1 --p2 0.02,0.5,0.9 --replicas 2 -o " + d.str()).code == 0);
  REQUIRE(lbsnet("theory --mean-k 10 --mean-k2 110 --n 20000 --p1 1 --p2 0.5 -o " + d.str()).code == 0);
  const auto theory = nlohmann::json::parse(slurp(d / "theory.json"));
  CHECK(theory["predictions"]["gcc_threshold"]["value"].get<double>() == doctest::Approx(1.0 / 11.0));
  CHECK(theory["predictions"]["moments"]["mean_k"].get<double>() == doctest::Approx(5.0));
  CHECK(theory["predictions"]["reciprocity"].get<double>() == 0.5);

  REQUIRE(lbsnet("compare --source " + (d / "graph.tsv") + " --sweep " + (d / "sweep.csv") + " -o " + d.str()).code == 0);
  std::istringstream csv(slurp(d / "compare.csv"));
  std::string line;
  std::getline(csv, line);
  std::vector<std::string> header;
  {
    std::stringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) header.push_back(cell);
  }
  auto col = [&](const std::string& name) {
    return static_cast<std::size_t>(std::find(header.begin(), header.end(), name) - header.begin());
  };
  int rows = 0;
  while (std::getline(csv, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    ++rows;
    CHECK(std::abs(std::stod(cells[col("dev_reciprocity")])) < 0.05);
    CHECK(std::abs(std::stod(cells[col("dev_mean_k")])) < 0.1);
    CHECK(cells[col("weak_matches")] == "1");
  }
  CHECK(rows == 6);
  const auto summary = nlohmann::json::parse(slurp(d / "compare_summary.json"));
  CHECK(summary["weak_match_rate"] == 1.0);
}

TEST_CASE("crossnet on the fixture matches the oracle CSVs") {
  TempDir d("crossnet");
  REQUIRE(lbsnet(crossnet_args(d.str())).code == 0);
  CHECK(slurp(d / "user_metrics.csv") == slurp(kFixture + "user_metrics.csv"));
  CHECK(slurp(d / "pair_metrics.csv") == slurp(kFixture + "pair_metrics.csv"));
  const auto summary = nlohmann::json::parse(slurp(d / "crossnet_summary.json"));
  CHECK(summary["links"]["copied"] == 9);
  CHECK(summary["links"]["native"] == 11);
  CHECK(summary["mapping"]["unknown_target_ids"] == 1);
  CHECK(summary["interactions"]["non_social_events"] == 3);
  CHECK(fs::exists(d / "cdf_copy_ratio.csv"));
  CHECK(fs::exists(d / "binned_cr_out_by_activity.csv"));
  CHECK(fs::exists(d / "user_metrics.csv.meta.json"));

  TempDir again("crossnet_again");
  REQUIRE(lbsnet(crossnet_args(again.str()) + " --friend-set copied").code == 0);
  CHECK(slurp(again / "user_metrics.csv") == slurp(d / "user_metrics.csv"));
}

TEST_CASE("default output directory comes from the environment") {
  TempDir d("env");
  REQUIRE(lbsnet("generate --family er --n 100 --mean-degree 3", "LBSNET_OUT_DIR='" + d.str() + "'").code == 0);
  CHECK(fs::exists(d / "graph.tsv"));
}

TEST_CASE("usage errors exit with 2") {
  CHECK(lbsnet("generate --no-such-flag").code == 2);
  CHECK(lbsnet("").code == 2);
  CHECK(lbsnet("sample --p1 0.5").code == 2);  // missing --source
  TempDir d("usage");
  CHECK(lbsnet("generate --family er --n 100 --mean-degree 0 -o " + d.str()).code == 2);
  CHECK(fs::is_empty(d.path));
}

TEST_CASE("parse failures exit with 3, name the line and leave no outputs") {
  TempDir d("parse");
  {
    std::ofstream bad(d / "bad.tsv");
    bad << "a\tb\nb\tc\nc\td\te\n";
  }
  const auto r = lbsnet("metrics --input " + (d / "bad.tsv") + " -o " + (d / "out"));
  CHECK(r.code == 3);
  CHECK(r.err.find("bad.tsv:3") != std::string::npos);
  CHECK(!fs::exists(d / "out/metrics.json"));

  CHECK(lbsnet("metrics --input " + (d / "missing.tsv") + " -o " + (d / "out")).code == 3);
}

TEST_CASE("sample writes per-replica artifacts") {
  TempDir d("sample");
  REQUIRE(lbsnet("generate --family er --n 500 --mean-degree 6 -o " + d.str()).code == 0);
  REQUIRE(lbsnet("sample --source " + (d / "graph.tsv") + " --p1 0.5 --p2 0.5 --replicas 2 --seed 3 -o " + d.str()).code == 0);
  CHECK(fs::exists(d / "copied_r0.tsv"));
  CHECK(fs::exists(d / "sampled_r1.txt"));
  const auto s = nlohmann::json::parse(slurp(d / "sample_summary.json"));
  CHECK(s["replicas"].size() == 2);
  CHECK(s["p_e"] == 0.25);
}
