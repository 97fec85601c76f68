#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef ORBITLAB_CLI
#error "ORBITLAB_CLI must point at the CLI binary"
#endif

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(ORBITLAB_CLI) + " " + args;
  const int status = std::system(cmd.c_str());
  if (status < 0) return -1;
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("classify subcommand emits the orbit record") {
  REQUIRE(run_cli("classify --a 3 --x -1 --y 1 --iters 100 > /tmp/orbitlab_cli_classify.json") ==
          0);
  const auto j = nlohmann::json::parse(slurp("/tmp/orbitlab_cli_classify.json"));
  CHECK(j["tag"] == "BoundedCandidate");
  CHECK(j["a"] == 3.0);
  CHECK(j["n_exit"].is_null());
  CHECK(j["point"][0] == -1.0);
}

TEST_CASE("normal-form subcommand") {
  REQUIRE(run_cli("normal-form --a 3 > /tmp/orbitlab_cli_nf.json") == 0);
  const auto j = nlohmann::json::parse(slurp("/tmp/orbitlab_cli_nf.json"));
  CHECK(std::fabs(j["gamma0"].get<double>() + 2.0943951023931953) < 1e-9);
  CHECK(j["gamma2"].is_null());
}

TEST_CASE("regions subcommand") {
  REQUIRE(run_cli("regions --a 2 --x 2 --y 3 > /tmp/orbitlab_cli_regions.json") == 0);
  const auto j = nlohmann::json::parse(slurp("/tmp/orbitlab_cli_regions.json"));
  bool has_t0 = false;
  for (const auto& t : j["tags"]) has_t0 = has_t0 || t == "T0_PLUS";
  CHECK(has_t0);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run_cli("frobnicate 2>/dev/null") == 2);
  CHECK(run_cli("classify --a 2 2>/dev/null") == 2);          // missing --x/--y
  CHECK(run_cli("render --a 2 --out /tmp/x.ppm 2>/dev/null") == 2);  // no range, no --torus
  CHECK(run_cli("verify --suite nosuch 2>/dev/null") == 2);
}

TEST_CASE("render determinism and config defaults") {
  {
    std::ofstream cfg("/tmp/orbitlab_cli_cfg.json");
    cfg << R"({"a": 2.0, "xmin": -3.0, "xmax": 2.0, "ymin": -2.0, "ymax": 3.0,)"
        << R"( "width": 32, "height": 32, "iters": 120})";
  }
  REQUIRE(run_cli("render --config /tmp/orbitlab_cli_cfg.json --out /tmp/orbitlab_cli_a.ppm "
                  "--stats-out /tmp/orbitlab_cli_a.json") == 0);
  REQUIRE(run_cli("render --config /tmp/orbitlab_cli_cfg.json --out /tmp/orbitlab_cli_b.ppm "
                  "--stats-out /tmp/orbitlab_cli_b.json") == 0);
  const std::string a = slurp("/tmp/orbitlab_cli_a.ppm");
  CHECK(a.substr(0, 10) == "P6\n32 32\n2");
  CHECK(a == slurp("/tmp/orbitlab_cli_b.ppm"));
  CHECK(slurp("/tmp/orbitlab_cli_a.json") == slurp("/tmp/orbitlab_cli_b.json"));

  // Flags override config values.
  REQUIRE(run_cli("render --config /tmp/orbitlab_cli_cfg.json --width 16 --height 16 "
                  "--out /tmp/orbitlab_cli_c.ppm") == 0);
  CHECK(slurp("/tmp/orbitlab_cli_c.ppm").substr(0, 9) == "P6\n16 16\n");
}

TEST_CASE("verify subcommand exit code") {
  CHECK(run_cli("verify --suite a3 > /dev/null") == 0);
}

TEST_CASE("trace-arcs writes csv and metadata") {
  REQUIRE(run_cli("trace-arcs --iters 8 --resolution 64 --out-prefix /tmp/orbitlab_cli_arc") ==
          0);
  const auto meta = nlohmann::json::parse(slurp("/tmp/orbitlab_cli_arc_meta.json"));
  CHECK(meta["arcs"].size() == 6);
  const std::string csv = slurp("/tmp/orbitlab_cli_arc_unstable_w0.csv");
  CHECK(csv.substr(0, 33) == "chart_x,chart_y,plane_x,plane_y\n0");
}
