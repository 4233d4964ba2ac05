// End-to-end checks of the command-line binary: exit codes, emitted files,
// and byte-level determinism. The binary path comes in via GDL_CLI_PATH.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const fs::path kScratch = "cli_scratch";

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

int run_cli(const std::string& args) {
  fs::create_directories(kScratch);
  const std::string cmd = quoted(GDL_CLI_PATH) + " " + args + " > " +
                          (kScratch / "last_output.txt").string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string last_output() {
  std::ifstream in(kScratch / "last_output.txt");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing file ", path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::size_t line_count(const std::string& text) {
  std::size_t lines = 0;
  for (const char c : text) {
    if (c == '\n') {
      ++lines;
    }
  }
  return lines;
}

// Fresh per-test output directory.
fs::path out_dir(const std::string& name) {
  const fs::path dir = kScratch / name;
  fs::remove_all(dir);
  return dir;
}

fs::path write_input(const std::string& name, const std::string& text) {
  fs::create_directories(kScratch);
  const fs::path path = kScratch / name;
  std::ofstream out(path, std::ios::binary);
  out << text;
  return path;
}

}  // namespace

TEST_CASE("run on a generated dataset emits the full artifact set") {
  const fs::path dir = out_dir("run_multiscale");
  const int code = run_cli("run --synth multiscale --engine agdl --nT 3 --out-dir " +
                           dir.string());
  CAPTURE(last_output());
  REQUIRE(code == 0);
  for (const char* name : {"dataset.csv", "assignments.csv", "merge_trace.csv",
                           "plot_data.csv", "metrics.json", "metrics.txt"}) {
    CAPTURE(name);
    CHECK(fs::exists(dir / name));
  }
  // 600 rows plus header
  CHECK(line_count(read_file(dir / "assignments.csv")) == 601);
  CHECK(line_count(read_file(dir / "plot_data.csv")) == 601);

  const auto j = nlohmann::json::parse(read_file(dir / "metrics.json"));
  CHECK(j.at("n") == 600);
  CHECK(j.at("engine") == "agdl");
  CHECK(j.at("nT") == 3);
  CHECK(j.at("final_clusters") == 3);
  const double nmi = j.at("nmi").get<double>();
  CHECK(nmi >= 0.0);
  CHECK(nmi <= 1.0);
  CHECK(j.at("sigma_sq").get<double>() > 0.0);
  // no elimination requested, so no outlier artifacts
  CHECK_FALSE(fs::exists(dir / "outliers.csv"));
  CHECK_FALSE(j.contains("removed_cluster_ids"));
}

TEST_CASE("identical configurations give byte-identical artifacts") {
  const fs::path dir_a = out_dir("det_a");
  const fs::path dir_b = out_dir("det_b");
  const std::string args =
      "run --synth blobs --seed 42 --engine agdl --K 12 --nT 2 --out-dir ";
  REQUIRE(run_cli(args + dir_a.string()) == 0);
  REQUIRE(run_cli(args + dir_b.string()) == 0);
  CHECK(read_file(dir_a / "assignments.csv") == read_file(dir_b / "assignments.csv"));
  CHECK(read_file(dir_a / "merge_trace.csv") == read_file(dir_b / "merge_trace.csv"));
  CHECK(read_file(dir_a / "dataset.csv") == read_file(dir_b / "dataset.csv"));
  CHECK(read_file(dir_a / "plot_data.csv") == read_file(dir_b / "plot_data.csv"));
}

TEST_CASE("the table and incremental engines agree end to end") {
  const fs::path dir_a = out_dir("eng_gdl");
  const fs::path dir_b = out_dir("eng_gdlu");
  const std::string tail = " --seed 7 --K 10 --nT 2 --out-dir ";
  REQUIRE(run_cli("run --synth blobs --engine gdl" + tail + dir_a.string()) == 0);
  REQUIRE(run_cli("run --synth blobs --engine gdl-u" + tail + dir_b.string()) == 0);
  CHECK(read_file(dir_a / "assignments.csv") == read_file(dir_b / "assignments.csv"));
}

TEST_CASE("a missing input file fails cleanly with no partial outputs") {
  const fs::path dir = out_dir("missing_input");
  const int code =
      run_cli("run --input cli_scratch/no_such_file.csv --nT 2 --out-dir " +
              dir.string());
  CHECK(code == 2);
  CHECK_FALSE(fs::exists(dir));
}

TEST_CASE("a malformed input file also exits with the parse code") {
  const fs::path bad = write_input("bad_rows.csv", "points\n1,2\n3\n");
  const fs::path dir = out_dir("bad_rows_out");
  const int code =
      run_cli("run --input " + bad.string() + " --nT 1 --out-dir " + dir.string());
  CHECK(code == 2);
  CHECK_FALSE(fs::exists(dir));
}

TEST_CASE("asking for more clusters than seeds is its own failure") {
  const fs::path dir = out_dir("too_many");
  const int code =
      run_cli("run --synth blobs --nT 500 --out-dir " + dir.string());
  CHECK(code == 4);
  CHECK_FALSE(fs::exists(dir));
}

TEST_CASE("coincident points cannot calibrate the kernel") {
  const fs::path pts = write_input("coincident.csv", "points\n1,1\n1,1\n1,1\n");
  const fs::path dir = out_dir("coincident_out");
  const int code = run_cli("run --input " + pts.string() + " --K 1 --nT 1 --out-dir " +
                           dir.string());
  CHECK(code == 5);
  CHECK_FALSE(fs::exists(dir));
}

TEST_CASE("Kc is rejected outside the agdl engine") {
  const fs::path dir = out_dir("kc_misuse");
  CHECK(run_cli("run --synth blobs --engine gdl --Kc 5 --nT 2 --out-dir " +
                dir.string()) == 3);
  CHECK(run_cli("sweep --synth blobs --engine glink --Kc 5 --nT 2 --a-values 1 "
                "--out-dir " + dir.string()) == 3);
  CHECK(run_cli("bench --bench-sizes 60,120 --engine gdl-u --Kc 5 --out-dir " +
                dir.string()) == 3);
  CHECK_FALSE(fs::exists(dir));
  // the same flag with agdl engines is accepted
  CHECK(run_cli("run --synth blobs --engine agdl --Kc 5 --nT 2 --out-dir " +
                dir.string()) == 0);
}

TEST_CASE("flag misuse is caught by the option parser") {
  // --metric documents the layout of --input files; it cannot apply to --synth
  CHECK(run_cli("run --synth blobs --metric chi2 --nT 2 --out-dir x") != 0);
  // exactly one source must be given
  CHECK(run_cli("run --nT 2 --out-dir x") != 0);
  CHECK(run_cli("run --synth blobs --input a.csv --nT 2 --out-dir x") != 0);
  // unknown engine names are rejected at parse time
  CHECK(run_cli("run --synth blobs --engine fast --nT 2 --out-dir x") != 0);
  // a subcommand is mandatory
  CHECK(run_cli("") != 0);
  // none of the rejected invocations may leave artifacts
  CHECK_FALSE(fs::exists("x"));
}

TEST_CASE("help exits zero") {
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("run --help") == 0);
}

TEST_CASE("precomputed distances drive the whole pipeline") {
  const fs::path dist = write_input(
      "dist4.csv",
      "distances\n"
      "0,0.1,5,5\n"
      "0.1,0,5,5\n"
      "5,5,0,0.1\n"
      "5,5,0.1,0\n");
  const fs::path dir = out_dir("precomputed_out");
  const int code = run_cli("run --input " + dist.string() +
                           " --metric precomputed --K 1 --nT 2 --out-dir " +
                           dir.string());
  CAPTURE(last_output());
  REQUIRE(code == 0);
  const std::string assignments = read_file(dir / "assignments.csv");
  CHECK(assignments == "index,cluster_id\n0,0\n1,0\n2,1\n3,1\n");
  // distance matrices have no coordinates to plot
  CHECK_FALSE(fs::exists(dir / "plot_data.csv"));
  // nothing labeled, so no quality metrics
  const auto j = nlohmann::json::parse(read_file(dir / "metrics.json"));
  CHECK_FALSE(j.contains("nmi"));
}

TEST_CASE("a points file with a label column yields quality metrics") {
  const fs::path pts = write_input(
      "labeled8.csv",
      "points\n"
      "0,0,0\n0.1,0,0\n0,0.1,0\n0.1,0.1,0\n"
      "9,9,1\n9.1,9,1\n9,9.1,1\n9.1,9.1,1\n");
  const fs::path dir = out_dir("labeled_out");
  const int code = run_cli("run --input " + pts.string() +
                           " --labeled --K 3 --nT 2 --out-dir " + dir.string());
  CAPTURE(last_output());
  REQUIRE(code == 0);
  const auto j = nlohmann::json::parse(read_file(dir / "metrics.json"));
  CHECK(j.at("nmi").get<double>() == 1.0);
  CHECK(j.at("clustering_error").get<double>() == 0.0);
}

TEST_CASE("outlier elimination writes its report and unassigns vertices") {
  const fs::path dir = out_dir("outliers_out");
  const int code = run_cli(
      "run --synth blobs_with_outliers --eliminate-outliers --nT 6 --out-dir " +
      dir.string());
  CAPTURE(last_output());
  REQUIRE(code == 0);
  REQUIRE(fs::exists(dir / "outliers.csv"));
  const std::string report = read_file(dir / "outliers.csv");
  CHECK(line_count(report) >= 2);  // header plus at least one removed vertex
  const std::string assignments = read_file(dir / "assignments.csv");
  CHECK(assignments.find(",-1\n") != std::string::npos);
  const auto j = nlohmann::json::parse(read_file(dir / "metrics.json"));
  CHECK(j.at("removed_vertex_count").get<std::size_t>() >= 1);
  CHECK(j.at("removed_cluster_ids").size() >= 1);
}

TEST_CASE("bench requires at least two distinct sizes") {
  const fs::path dir = out_dir("bench_bad");
  CHECK(run_cli("bench --bench-sizes 100 --out-dir " + dir.string()) == 3);
  CHECK(run_cli("bench --bench-sizes 100,100 --out-dir " + dir.string()) == 3);
  CHECK_FALSE(fs::exists(dir));
}

TEST_CASE("bench writes one timing row per engine and size") {
  const fs::path dir = out_dir("bench_out");
  const int code = run_cli(
      "bench --bench-sizes 120,60 --engine agdl,gdl-u --K 8 --out-dir " +
      dir.string());
  CAPTURE(last_output());
  REQUIRE(code == 0);
  const std::string csv = read_file(dir / "bench.csv");
  CHECK(line_count(csv) == 5);  // header + 2 sizes x 2 engines
  CHECK(csv.find("agdl,60,") != std::string::npos);
  CHECK(csv.find("agdl,120,") != std::string::npos);
  CHECK(csv.find("gdl-u,60,") != std::string::npos);
  CHECK(csv.find("gdl-u,120,") != std::string::npos);
}

TEST_CASE("sweep scores every kernel scale on labeled data") {
  const fs::path dir = out_dir("sweep_out");
  const int code = run_cli(
      "sweep --synth blobs --K 12 --nT 2 --a-values 0.5,1,2 --out-dir " +
      dir.string());
  CAPTURE(last_output());
  REQUIRE(code == 0);
  const std::string csv = read_file(dir / "sweep.csv");
  CHECK(line_count(csv) == 4);  // header + one row per scale
  CHECK(csv.rfind("a,nmi,clustering_error,final_clusters\n", 0) == 0);
  CHECK(last_output().find("best a = ") != std::string::npos);

  SUBCASE("unlabeled input is rejected") {
    const fs::path pts = write_input("unlabeled.csv", "points\n0,0\n1,0\n0,1\n1,1\n");
    const fs::path dir2 = out_dir("sweep_bad");
    CHECK(run_cli("sweep --input " + pts.string() +
                  " --K 1 --nT 1 --a-values 1 --out-dir " + dir2.string()) == 3);
    CHECK_FALSE(fs::exists(dir2));
  }
}
