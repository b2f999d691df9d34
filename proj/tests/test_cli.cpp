#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

#include "cli.hpp"

namespace fs = std::filesystem;
using helmholtz::cli::parse_range;
using helmholtz::cli::run;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("helmholtz_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("range syntax") {
  CHECK(parse_range("20:200:20").size() == 10);
  CHECK(parse_range("20:200:20").back() == 200.0);
  CHECK(parse_range("0.1:0.3:0.1").size() == 3);
  CHECK(parse_range("1..5") == std::vector<double>{1, 2, 3, 4, 5});
  CHECK(parse_range("2,3.5,7") == std::vector<double>{2, 3.5, 7});
  CHECK(parse_range("4") == std::vector<double>{4});
  CHECK_THROWS_AS(parse_range("5..1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_range("1:2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_range("1:5:0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_range("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_range("1.5..3"), std::invalid_argument);
}

TEST_CASE("radial run writes a manifest and matches J_m") {
  const fs::path dir = scratch("radial");
  const Result r = call({"radial", "--m", "4", "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "radial.csv"));
  CHECK(fs::exists(dir / "radial.svg"));
  const auto summary = nlohmann::json::parse(slurp(dir / "radial_summary.json"));
  CHECK(summary.at("max_scaled_deviation_from_bessel").get<double>() < 1e-8);
  const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(manifest.at("tool") == "helmholtz_lab");
  CHECK(manifest.at("subcommand") == "radial");
  CHECK(manifest.at("config").at("m") == "4");
  CHECK(manifest.at("config").at("rtol") == "1e-10");
}

TEST_CASE("replaying a manifest reproduces the outputs byte for byte") {
  const fs::path a = scratch("replay_a"), b = scratch("replay_b");
  const Result first = call({"three-ball", "--kappa", "-1", "--kr", "2:16:2", "--policy", "free_search", "--out",
                             a.string()});
  REQUIRE(first.code == 0);
  const Result again = call({"replay", (a / "manifest.json").string(), "--out", b.string()});
  CHECK(again.code == 0);
  CHECK(again.out == first.out);
  for (const char* f : {"three_ball.csv", "three_ball_summary.json", "three_ball.svg"}) CHECK(slurp(a / f) == slurp(b / f));
  const auto ma = nlohmann::json::parse(slurp(a / "manifest.json"));
  const auto mb = nlohmann::json::parse(slurp(b / "manifest.json"));
  CHECK(ma.at("config").at("policy") == mb.at("config").at("policy"));
  CHECK(mb.at("config").at("out") == b.string());
}

TEST_CASE("serial and parallel runs write identical files") {
  const fs::path a = scratch("serial"), b = scratch("parallel");
  REQUIRE(call({"reverse", "--k", "1..4", "--serial", "--out", a.string()}).code == 0);
  REQUIRE(call({"reverse", "--k", "1..4", "--out", b.string()}).code == 0);
  CHECK(slurp(a / "reverse.json") == slurp(b / "reverse.json"));
}

TEST_CASE("exit codes") {
  const fs::path dir = scratch("codes");
  CHECK(call({}).code == 2);
  CHECK(call({"radial"}).code == 2);
  CHECK(call({"three-ball", "--policy", "greedy"}).code == 2);
  CHECK(call({"--help"}).code == 0);
  CHECK(call({"three-ball", "--help"}).code == 0);

  const Result bad = call({"three-ball", "--kappa", "1", "--r", "1", "--out", dir.string()});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("radius_admissible") != std::string::npos);
  CHECK(fs::exists(dir / "manifest.json"));

  const Result bad_range = call({"bessel-zero", "--l", "9..3", "--out", dir.string()});
  CHECK(bad_range.code == 2);

  CHECK(call({"replay", (dir / "missing.json").string()}).code == 2);
}

TEST_CASE("other subcommands") {
  const fs::path dir = scratch("misc");
  CHECK(call({"bessel-zero", "--l", "1..30", "--out", dir.string()}).code == 0);
  CHECK(slurp(dir / "bessel_zero.csv").rfind("l,bracket_lo,bracket_hi,j_l,inside\n", 0) == 0);
  CHECK(call({"caccioppoli", "--m", "3", "--k", "6", "--out", dir.string()}).code == 0);
  CHECK(nlohmann::json::parse(slurp(dir / "caccioppoli.json")).at("verdict") == "pass");
  CHECK(call({"equator", "--n", "2..10", "--out", dir.string()}).code == 0);
  const Result o = call({"oracle", "--theorem", "sonin", "--count", "3", "--out", dir.string()});
  CHECK(o.code == 0);
  const auto j = nlohmann::json::parse(slurp(dir / "oracle.json"));
  CHECK(j.at("sonin").at("passed") == 3);
  CHECK(j.at("injected").size() == 1);
}
