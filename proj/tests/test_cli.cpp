#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dwg/cli.hpp"

using namespace dwg::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_args(const std::vector<std::string>& args) {
  std::vector<const char*> argv = {"dwg"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::stringstream ss(s);
  while (std::getline(ss, item, sep)) parts.push_back(item);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

// Numeric fields must agree to a relative 1e-9 (absolute 1e-12 near zero);
// everything else must match exactly.
bool same_field(const std::string& a, const std::string& b) {
  if (a == b) return true;
  char* end_a = nullptr;
  char* end_b = nullptr;
  const double x = std::strtod(a.c_str(), &end_a);
  const double y = std::strtod(b.c_str(), &end_b);
  if (*end_a != '\0' || *end_b != '\0' || a.empty() || b.empty()) return false;
  return std::abs(x - y) <= 1e-12 + 1e-9 * std::max(std::abs(x), std::abs(y));
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("grid parsing") {
  const auto g = parse_grid("-1:1:5");
  CHECK(g.linspace() == std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0});
  const std::vector<double> centers = {-0.8, -0.4, 0.0, 0.4, 0.8};
  const auto c = g.cell_centers();
  REQUIRE(c.size() == centers.size());
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i] == doctest::Approx(centers[i]).epsilon(1e-15));
  CHECK(parse_grid("2:2:1").linspace() == std::vector<double>{2.0});
  CHECK_THROWS_AS(parse_grid("0:1:0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("0:1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("a:1:3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("1:0:3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("0:1:3x"), std::invalid_argument);
}

TEST_CASE("csv writer") {
  Table t;
  t.columns = {"a", "b", "c"};
  t.rows = {{0.1, 3LL, std::string("x,y")}};
  std::ostringstream os;
  write_csv(t, os);
  CHECK(os.str() == "a,b,c\n0.10000000000000001,3,\"x,y\"\n");
}

TEST_CASE("golden files") {
  const std::filesystem::path dir = DWG_GOLDEN_DIR;
  std::ifstream manifest(dir / "cases.txt");
  REQUIRE(manifest);
  std::string line;
  int cases = 0;
  while (std::getline(manifest, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string file, arg;
    ss >> file;
    std::vector<std::string> args;
    while (ss >> arg) args.push_back(arg);
    CAPTURE(file);
    const auto res = run_args(args);
    REQUIRE(res.code == 0);
    const auto got = lines(res.out);
    const auto want = lines(slurp(dir / file));
    REQUIRE(got.size() == want.size());
    CHECK(got.front() == want.front());
    for (std::size_t i = 1; i < got.size(); ++i) {
      const auto a = split(got[i], ',');
      const auto b = split(want[i], ',');
      REQUIRE(a.size() == b.size());
      for (std::size_t j = 0; j < a.size(); ++j) {
        CAPTURE(i);
        CAPTURE(a[j]);
        CAPTURE(b[j]);
        CHECK(same_field(a[j], b[j]));
      }
    }
    ++cases;
  }
  CHECK(cases >= 15);
}

TEST_CASE("csv has one header row and full precision") {
  const auto res = run_args({"bound-spectrum", "--kind", "electric", "--k", "2.5", "--v0", "4"});
  REQUIRE(res.code == 0);
  const auto rows = lines(res.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == "level,E,character,exterior_decay,interior_momentum,interior_character");
  const auto fields = split(rows[1], ',');
  CHECK(std::abs(std::stod(fields[1]) + 1.1294202) < 1e-6);
  CHECK(fields[1].size() >= 18);
}

TEST_CASE("output is deterministic across runs and worker counts") {
  const std::vector<std::string> base = {"bound-spectrum", "--kind", "magnetic", "--a0", "4", "--curves", "k",
                                         "--sweep-grid", "-6:2:33", "--grid-points", "400"};
  auto many = base;
  many.insert(many.end(), {"--jobs", "4"});
  const auto a = run_args(base);
  const auto b = run_args(base);
  const auto c = run_args(many);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
}

TEST_CASE("json envelope") {
  const auto res = run_args({"transmission", "--kind", "magnetic", "--k", "1", "--a0", "4", "--grid", "0.1:1.5:8",
                             "--format", "json"});
  REQUIRE(res.code == 0);
  const auto doc = nlohmann::json::parse(res.out);
  CHECK(doc["meta"]["tool"] == "dwg");
  CHECK(doc["meta"]["version"] == kVersion);
  CHECK(doc["meta"]["command"] == "transmission");
  CHECK(doc["meta"]["flags"]["a0"] == 4.0);
  CHECK(doc["meta"].contains("units"));
  CHECK(std::abs(std::sin(doc["meta"]["classical_limit_alpha"].get<double>()) - 0.2) < 1e-12);
  CHECK(doc["columns"].size() == 6);
  CHECK(doc["rows"].size() == 8);
}

TEST_CASE("zero-strength transmission is unity") {
  const auto res = run_args({"transmission", "--kind", "magnetic", "--k", "1", "--a0", "0", "--grid", "0.1:1.5:15"});
  REQUIRE(res.code == 0);
  const auto rows = lines(res.out);
  REQUIRE(rows.size() == 16);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::abs(std::stod(split(rows[i], ',')[2]) - 1.0) < 1e-12);
}

TEST_CASE("exit codes") {
  CHECK(run_args({}).code == kUsage);
  CHECK(run_args({"bogus"}).code == kUsage);
  CHECK(run_args({"--version"}).code == kOk);
  CHECK(run_args({"classical-regions", "--kind", "electric", "--v0", "1", "--E-grid", "0:1:0"}).code == kUsage);
  CHECK(run_args({"classical-regions", "--kind", "magnetic", "--plane", "E-a0"}).code == kUsage);
  CHECK(run_args({"transmission", "--kind", "electric", "--k", "1"}).code == kUsage);
  CHECK(run_args({"transmission", "--kind", "electric", "--v0", "1", "--k", "1", "--format", "xml"}).code == kUsage);
  CHECK(run_args({"bound-spectrum", "--kind", "electric", "--v0", "4", "--k", "2.5", "--E-min", "3", "--E-max", "4"}).code ==
        kRegime);

  const auto forbidden = run_args({"trajectory", "--kind", "electric", "--k", "3", "--v0", "1", "--E", "1"});
  CHECK(forbidden.code == kRegime);
  CHECK(forbidden.err.find("|E + v0| < |k|") != std::string::npos);
  const auto forbidden_m = run_args({"trajectory", "--kind", "magnetic", "--k", "1", "--a0", "1", "--E", "0.5"});
  CHECK(forbidden_m.code == kRegime);
  CHECK(forbidden_m.err.find("|k + a0|") != std::string::npos);

  const auto level = run_args({"wavefunction", "--kind", "electric", "--k", "2.5", "--v0", "4", "--level", "99"});
  CHECK(level.code == kRange);
  CHECK(run_args({"wavefunction", "--kind", "magnetic", "--k", "-3", "--a0", "4", "--character", "edge", "--level", "2"})
            .code == kRange);

  CHECK(run_args({"transmission", "--kind", "magnetic", "--k", "1", "--a0", "4", "--output",
                  "/nonexistent-dir/x/out.csv"})
            .code == kUsage);
}

TEST_CASE("output file and directory override") {
  const auto dir = std::filesystem::temp_directory_path() / "dwg_cli_test";
  std::filesystem::create_directories(dir);
  const auto abs_path = dir / "abs.csv";
  const auto res = run_args({"trajectory", "--kind", "electric", "--k", "1", "--v0", "1", "--E", "2", "--output",
                             abs_path.string()});
  REQUIRE(res.code == 0);
  CHECK(res.out.empty());
  CHECK(slurp(abs_path).rfind("x,y,region\n", 0) == 0);

  ::setenv("DWG_OUTPUT_DIR", dir.c_str(), 1);
  const auto rel = run_args({"trajectory", "--kind", "electric", "--k", "1", "--v0", "1", "--E", "2", "--output", "rel.csv"});
  ::unsetenv("DWG_OUTPUT_DIR");
  REQUIRE(rel.code == 0);
  CHECK(slurp(dir / "rel.csv") == slurp(abs_path));
  std::filesystem::remove_all(dir);
}

TEST_CASE("trajectory rows") {
  const auto res = run_args({"trajectory", "--kind", "electric", "--k", "1", "--v0", "1", "--E", "2"});
  REQUIRE(res.code == 0);
  const auto rows = lines(res.out);
  REQUIRE(rows.size() == 5);
  CHECK(split(rows[1], ',')[2] == "I");
  CHECK(split(rows[3], ',')[2] == "II");
  CHECK(split(rows[4], ',')[2] == "III");
}

TEST_CASE("wavefunction columns") {
  const auto res = run_args({"wavefunction", "--kind", "magnetic", "--k", "-3", "--a0", "4", "--character", "edge",
                             "--x-grid", "-3:3:61", "--format", "json"});
  REQUIRE(res.code == 0);
  const auto doc = nlohmann::json::parse(res.out);
  CHECK(doc["columns"] == nlohmann::json({"x", "re_psi1", "im_psi1", "re_psi2", "im_psi2"}));
  CHECK(doc["meta"]["character"] == "edge");
  CHECK(std::abs(doc["meta"]["energy"].get<double>() + 0.2113056) < 1e-6);
}
