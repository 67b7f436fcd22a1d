#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli/commands.hpp"

namespace fs = std::filesystem;
using pagrowth::cli::run_cli;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("pagrowth_cli_" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "pagrowth");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("usage errors exit 1 with field messages") {
  auto r = run({"simulate"});
  CHECK(r.code == 1);
  CHECK(r.err.find("output:") != std::string::npos);
  r = run({"simulate", "-o", "x", "--kernel", "fitness"});
  CHECK(r.code == 1);
  CHECK(r.err.find("kernel:") != std::string::npos);
  r = run({"simulate", "-o", "x", "--m", "0"});
  CHECK(r.code == 1);
  CHECK(r.err.find("simulation:") != std::string::npos);
  r = run({"measure", "-o", "x", "-i", "y", "--dt", "0"});
  CHECK(r.code == 1);
  CHECK(r.err.find("dt:") != std::string::npos);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({}).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("simulate is byte-identical for a fixed seed") {
  TempDir tmp;
  const std::vector<std::string> args = {"simulate", "--n", "800", "--kernel", "hybrid",
                                         "--alpha", "0.7", "--beta", "0.2", "--out-degree",
                                         "geometric", "--seed", "42"};
  auto a = args;
  a.insert(a.end(), {"-o", tmp / "a"});
  auto b = args;
  b.insert(b.end(), {"-o", tmp / "b"});
  REQUIRE(run(a).code == 0);
  REQUIRE(run(b).code == 0);
  CHECK(slurp(tmp / "a/edges.tsv") == slurp(tmp / "b/edges.tsv"));
  CHECK(slurp(tmp / "a/metadata.json") == slurp(tmp / "b/metadata.json"));
  CHECK_FALSE(slurp(tmp / "a/edges.tsv").empty());
}

TEST_CASE("flags override the config file") {
  TempDir tmp;
  write(tmp / "run.conf", "# simulation\nn = 300\nseed = 5\nout_degree = \"geometric\"\nno-timestamp = true\n");
  REQUIRE(run({"simulate", "--config", tmp / "run.conf", "-o", tmp / "s", "--seed", "9"}).code == 0);
  const auto meta = nlohmann::json::parse(slurp(tmp / "s/metadata.json"));
  CHECK(meta.dump().find("\"rng_seed\":9") != std::string::npos);
  CHECK(meta.dump().find("geometric") != std::string::npos);
  CHECK(meta.dump().find("\"n_final\":300") != std::string::npos);

  write(tmp / "bad.conf", "n 300\n");
  const auto r = run({"simulate", "--config", tmp / "bad.conf", "-o", tmp / "t"});
  CHECK(r.code == 1);
  CHECK(r.err.find("line 1") != std::string::npos);
}

TEST_CASE("ingest writes a normalized file and a report") {
  TempDir tmp;
  write(tmp / "in.tsv", "a\tb\t3\nb\tc\t1\nc\tc\t2\nc\ta\t2\n");
  const auto r = run({"ingest", "-i", tmp / "in.tsv", "-o", tmp / "n"});
  REQUIRE(r.code == 0);
  const auto report = nlohmann::json::parse(slurp(tmp / "n/ingest_report.json"));
  CHECK(report["edges_kept"] == 3);
  CHECK(report["self_loops"] == 1);
  CHECK(report["nodes"] == 3);
  CHECK(slurp(tmp / "n/edges.tsv") == "0\t1\t1\n1\t2\t2\n2\t0\t3\n");

  write(tmp / "garbled.tsv", "a b\n");
  const auto bad = run({"ingest", "-i", tmp / "garbled.tsv", "-o", tmp / "g"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("line 1") != std::string::npos);
  CHECK(run({"ingest", "-i", tmp / "missing.tsv", "-o", tmp / "g"}).code == 2);
}

TEST_CASE("SNAP ingest skips undated citing papers") {
  TempDir tmp;
  write(tmp / "edges.txt", "# Directed graph\n1001\t1002\n1003\t1001\n1002\t1004\n");
  write(tmp / "dates.txt", "1001\t1992-02-01\n1002\t1992-01-10\n1004\t1991-12-30\n");
  const auto r = run({"ingest", "--format", "snap", "-i", tmp / "edges.txt", "--dates",
                      tmp / "dates.txt", "-o", tmp / "n"});
  REQUIRE(r.code == 0);
  const auto report = nlohmann::json::parse(slurp(tmp / "n/ingest_report.json"));
  CHECK(report["missing_dates"] == 1);
  CHECK(report["edges_kept"] == 2);
  CHECK(run({"ingest", "--format", "snap", "-i", tmp / "edges.txt", "-o", tmp / "m"}).code == 1);
}

TEST_CASE("measure on the toy fixture reproduces hand values") {
  TempDir tmp;
  write(tmp / "toy.tsv", "0\t1\t1\n1\t2\t1\n3\t0\t5\n3\t1\t5\n");
  const auto r = run({"measure", "-i", tmp / "toy.tsv", "-o", tmp / "m", "--start", "5", "--dt",
                      "1", "--windows", "1", "--c0", "1", "--k0", "1,2", "--no-timestamp"});
  REQUIRE(r.code == 0);
  const auto degree = slurp(tmp / "m/windows/w0000/degree.csv");
  CHECK(degree.find("1,1,2,0.3333333333333333,0.3333333333333333\n") != std::string::npos);
  CHECK(degree.find("2,1,1,0.6666666666666666,1\n") != std::string::npos);
  CHECK(fs::exists(tmp / "m/windows/w0000/phi_c1.csv"));
  CHECK(fs::exists(tmp / "m/windows/w0000/pi_k2.csv"));
  const auto manifest = nlohmann::json::parse(slurp(tmp / "m/manifest.json"));
  CHECK_FALSE(manifest.contains("generated_at"));
  CHECK(manifest["windows"].size() == 1);
}

TEST_CASE("a window before the first edge is flagged and the run is insufficient") {
  TempDir tmp;
  write(tmp / "toy.tsv", "0\t1\t10\n1\t2\t11\n");
  const auto r = run({"measure", "-i", tmp / "toy.tsv", "-o", tmp / "m", "--start", "0", "--dt",
                      "5", "--windows", "1"});
  CHECK(r.code == 3);
  const auto window = nlohmann::json::parse(slurp(tmp / "m/windows/w0000/window.json"));
  CHECK(window["empty"] == true);
  CHECK(slurp(tmp / "m/windows/w0000/degree.csv") == "axis_value,A,n,T,kappa\n");
}

TEST_CASE("report is deterministic without timestamps") {
  TempDir tmp;
  REQUIRE(run({"simulate", "--n", "2500", "--kernel", "hybrid", "--alpha", "0.7", "--beta", "0.2",
               "--out-degree", "geometric", "--seed", "1", "-o", tmp / "s"})
              .code == 0);
  for (const char* name : {"r1", "r2"}) {
    const auto r = run({"report", "-i", tmp / "s/edges.tsv", "-o", tmp / name, "--no-timestamp",
                        "--threads", name[1] == '1' ? "1" : "3"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("alpha") != std::string::npos);
  }
  for (const char* file : {"manifest.json", "report.json", "series_alpha.csv", "series_beta.csv",
                           "windows/w0002/hybrid.csv"}) {
    CHECK(slurp(tmp / (std::string("r1/") + file)) == slurp(tmp / (std::string("r2/") + file)));
  }
  // fit re-reads the bundles and reproduces the series.
  REQUIRE(run({"fit", "-i", tmp / "r1", "-o", tmp / "f"}).code == 0);
  CHECK(slurp(tmp / "f/series_gamma.csv") == slurp(tmp / "r1/series_gamma.csv"));
  CHECK(run({"fit", "-i", tmp / "nothing", "-o", tmp / "f2"}).code == 2);
}
