#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <string>
#include <vector>

#include "commands.hpp"
#include "slag/io.hpp"
#include "slag/shapes.hpp"

namespace fs = std::filesystem;
using slag::cli::dispatch;

namespace {

fs::path test_dir() {
  const fs::path dir = fs::temp_directory_path() / "slaglab_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) { return slag::read_file(p.string()); }

}  // namespace

TEST_CASE("no arguments: usage, exit 1") {
  CHECK(dispatch(std::vector<std::string>{}) == 1);
  CHECK(dispatch({"frobnicate"}) == 1);
}

TEST_CASE("phase subcommand") {
  const fs::path out = test_dir() / "phase.json";
  CHECK(dispatch({"phase", "--class", "2,1", "--out", out.string()}) == 0);
  const std::string text = slurp(out);
  CHECK(text.find("\"phi\":0.46364760900080609") != std::string::npos);
  CHECK(text.find("\"mu\":0.5") != std::string::npos);
  // Vertical class reports the infinite marker.
  const fs::path out2 = test_dir() / "phase_v.json";
  CHECK(dispatch({"phase", "--class", "0,1", "--out", out2.string()}) == 0);
  CHECK(slurp(out2).find("\"mu\":null") != std::string::npos);
  CHECK(dispatch({"phase", "--class", "0,0"}) == 1);
}

TEST_CASE("flow exit codes") {
  const fs::path dir = test_dir();

  SUBCASE("converged is 0") {
    CHECK(dispatch({"flow", "--line", "1,0", "--perturb", "0.05", "--n", "96",
                    "--seed", "7", "--max-time", "10"}) == 0);
  }
  SUBCASE("singular is 2") {
    const auto geom = slag::TorusCY::unit_square();
    const auto ring = slag::circle(geom, {0.5, 0.5}, 0.2, 96);
    const fs::path in = dir / "ring.json";
    slag::write_file(in.string(), slag::curve_to_json(ring));
    CHECK(dispatch({"flow", in.string(), "--max-time", "5"}) == 2);
  }
  SUBCASE("timeout is 3") {
    CHECK(dispatch({"flow", "--line", "2,1", "--perturb", "0.1", "--n", "128",
                    "--seed", "3", "--max-time", "1e-5"}) == 3);
  }
  SUBCASE("missing input is 1") {
    CHECK(dispatch({"flow"}) == 1);
    CHECK(dispatch({"flow", dir.string() + "/does_not_exist.json"}) == 1);
  }
}

TEST_CASE("flow writes csv and final curve") {
  const fs::path dir = test_dir();
  const fs::path csv = dir / "flow.csv";
  const fs::path final_curve = dir / "final.json";
  CHECK(dispatch({"flow", "--line", "1,1", "--perturb", "0.06", "--n", "96",
                  "--seed", "11", "--out-csv", csv.string(), "--out-curve",
                  final_curve.string()}) == 0);
  const std::string header = slurp(csv).substr(0, 64);
  CHECK(header.rfind("time,length,phase_mean,phase_spread,moment_norm,"
                     "cumulative_flux",
                     0) == 0);
  const auto curve = slag::curve_from_json(slurp(final_curve));
  CHECK(curve.closure() == std::array<int, 2>{1, 1});
}

TEST_CASE("surgery subcommand") {
  const fs::path dir = test_dir();
  const auto geom = slag::TorusCY::unit_square();
  const fs::path a = dir / "l1.json";
  const fs::path b = dir / "l2.json";
  slag::write_file(a.string(),
                   slag::curve_to_json(slag::straight_line(geom, 1, 0, 64,
                                                           {0.0, 0.25})));
  slag::write_file(b.string(),
                   slag::curve_to_json(slag::straight_line(geom, 1, 1, 64)));
  const fs::path out = dir / "sum.json";
  const fs::path report = dir / "report.json";
  CHECK(dispatch({"surgery", a.string(), b.string(), "--necks", "0.12",
                  "--out", out.string(), "--report", report.string()}) == 0);
  const auto sum = slag::curve_from_json(slurp(out));
  CHECK(sum.closure() == std::array<int, 2>{2, 1});
  const std::string rep = slurp(report);
  CHECK(rep.find("\"gradeable\":true") != std::string::npos);
  CHECK(rep.find("\"class\":[2,1]") != std::string::npos);

  // Reversed order: window fails, reported and rejected.
  CHECK(dispatch({"surgery", b.string(), a.string(), "--report",
                  (dir / "bad.json").string()}) == 1);
  CHECK(slurp(dir / "bad.json").find("\"gradeable\":false") !=
        std::string::npos);
}

TEST_CASE("stability and mirror subcommands") {
  const fs::path dir = test_dir();
  const fs::path out = dir / "stab.json";
  CHECK(dispatch({"stability", "--class", "2,1", "--bound", "6", "--out",
                  out.string()}) == 0);
  CHECK(slurp(out).find("\"status\":\"stable\"") != std::string::npos);
  CHECK(dispatch({"stability", "--class", "3,0", "--bound", "5", "--out",
                  out.string()}) == 0);
  CHECK(slurp(out).find("\"status\":\"parallel_only\"") != std::string::npos);

  const fs::path m = dir / "mirror.json";
  CHECK(dispatch({"mirror", "--class", "0,1", "--out", m.string()}) == 0);
  const std::string text = slurp(m);
  CHECK(text.find("\"rank\":0") != std::string::npos);
  CHECK(text.find("\"degree\":1") != std::string::npos);
  CHECK(text.find("\"stable\":true") != std::string::npos);
}

TEST_CASE("twist subcommand distribute mode") {
  const fs::path out = test_dir() / "twist.json";
  CHECK(dispatch({"twist", "(T L1 2 (sum L1 L2))", "--dim", "2", "--mode",
                  "distribute", "--out", out.string()}) == 0);
  const std::string text = slurp(out);
  CHECK(text.find("\"normal_form\":\"(sum (shift L1 -2) (T L1 2 L2))\"") !=
        std::string::npos);
  CHECK(text.find("\"class_agrees_with_lattice\":true") != std::string::npos);
}

TEST_CASE("monodromy subcommand csv") {
  const fs::path dir = test_dir();
  const fs::path out = dir / "track.json";
  const fs::path csv = dir / "track.csv";
  CHECK(dispatch({"monodromy", "--model", "k3", "--samples", "480", "--out",
                  out.string(), "--out-csv", csv.string()}) == 0);
  CHECK(slurp(out).find("\"winding\":1") != std::string::npos);
  CHECK(slurp(out).find("\"monodromy\":\"T^2\"") != std::string::npos);
  CHECK(slurp(csv).rfind("t,re_u,im_u,radius,phi1", 0) == 0);
}

TEST_CASE("identical invocations give byte-identical outputs") {
  const fs::path dir = test_dir();
  const fs::path out1 = dir / "rep1.json";
  const fs::path out2 = dir / "rep2.json";

  SUBCASE("stability") {
    const std::vector<std::string> base{"stability", "--class", "2,1",
                                        "--bound", "8"};
    auto run = [&](const fs::path& p) {
      auto args = base;
      args.push_back("--out");
      args.push_back(p.string());
      REQUIRE(dispatch(args) == 0);
    };
    run(out1);
    run(out2);
    // The manifests differ in the output path; compare the payloads.
    auto payload = [&](const fs::path& p) {
      const std::string s = slurp(p);
      return s.substr(s.find("\"class\""));
    };
    CHECK(payload(out1) == payload(out2));
  }
  SUBCASE("flow with a fixed seed") {
    auto run = [&](const fs::path& json, const fs::path& csv) {
      REQUIRE(dispatch({"flow", "--line", "2,1", "--perturb", "0.1", "--n",
                        "128", "--seed", "12345", "--max-time", "10",
                        "--out", json.string(), "--out-csv",
                        csv.string()}) == 0);
    };
    const fs::path csv1 = dir / "rep1.csv";
    const fs::path csv2 = dir / "rep2.csv";
    run(out1, csv1);
    run(out2, csv2);
    CHECK(slurp(csv1) == slurp(csv2));
    auto payload = [&](const fs::path& p) {
      const std::string s = slurp(p);
      return s.substr(s.find("\"status\""));
    };
    CHECK(payload(out1) == payload(out2));
  }
}
