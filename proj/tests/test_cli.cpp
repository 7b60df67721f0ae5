#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace {

constexpr double pi = 3.14159265358979323846;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::string& args) {
  const std::string out_path = "/tmp/wavebasis_test_stdout.txt";
  const std::string err_path = "/tmp/wavebasis_test_stderr.txt";
  const std::string cmd =
      std::string(WAVEBASIS_CLI_PATH) + " " + args + " > " + out_path + " 2> " + err_path;
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(status);
  auto slurp = [](const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  };
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  return r;
}

struct Csv {
  std::string version_line;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

Csv parse_csv(const std::string& text) {
  Csv csv;
  std::istringstream is(text);
  std::string line;
  REQUIRE(std::getline(is, line));
  csv.version_line = line;
  REQUIRE(std::getline(is, line));
  std::istringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) csv.columns.push_back(cell);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> row;
    std::istringstream rs(line);
    while (std::getline(rs, cell, ',')) row.push_back(cell);
    csv.rows.push_back(row);
  }
  return csv;
}

}  // namespace

TEST_CASE("help and config errors") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("spectrum --no-such-flag 1").exit_code == 2);
  CHECK(run_cli("spectrum").exit_code == 2);  // no potential given
  CHECK(run_cli("spectrum --potential bogus").exit_code == 2);
  CHECK(run_cli("compare --suite unknown").exit_code == 2);

  const auto bad = run_cli("spectrum --potential bogus");
  CHECK(bad.err.find("\"type\":\"config\"") != std::string::npos);
}

TEST_CASE("hard-wall spectrum values and determinism") {
  const std::string args = "spectrum --potential hard_wall --half-width 1 --n-max 2";
  const auto first = run_cli(args);
  REQUIRE(first.exit_code == 0);
  const Csv csv = parse_csv(first.out);
  CHECK(csv.version_line.rfind("# wavebasis", 0) == 0);
  REQUIRE(csv.columns.size() == 6);
  CHECK(csv.columns[0] == "n");
  REQUIRE(csv.rows.size() == 2);
  CHECK(std::stod(csv.rows[0][1]) == doctest::Approx(pi * pi / 4.0).epsilon(1e-10));
  CHECK(std::stod(csv.rows[1][1]) == doctest::Approx(pi * pi).epsilon(1e-10));
  CHECK(std::stod(csv.rows[1][1]) / std::stod(csv.rows[0][1]) ==
        doctest::Approx(4.0).epsilon(1e-9));

  const auto second = run_cli(args);
  CHECK(second.out == first.out);  // byte-identical reruns
}

TEST_CASE("singular spectrum reproduces the reference numbers") {
  const auto r = run_cli("spectrum --potential singular --beta 0.5 --n-max 1");
  REQUIRE(r.exit_code == 0);
  const Csv csv = parse_csv(r.out);
  REQUIRE(csv.rows.size() == 2);
  CHECK(std::stod(csv.rows[0][1]) == doctest::Approx(-1.17474).epsilon(1e-4));
  CHECK(std::stod(csv.rows[1][1]) == doctest::Approx(-0.56475).epsilon(1e-4));
  CHECK(std::stod(csv.rows[0][4]) == doctest::Approx(-1.6534).epsilon(0.01));
  CHECK(std::stod(csv.rows[1][4]) == doctest::Approx(-0.43804).epsilon(0.01));
  CHECK(std::stod(csv.rows[0][5]) == doctest::Approx(0.289).epsilon(0.04));
  CHECK(std::stod(csv.rows[1][5]) == doctest::Approx(0.289).epsilon(0.04));
}

TEST_CASE("wavefunction traces coincide for a constant-k well") {
  std::ofstream spec("/tmp/wavebasis_flat_well.json");
  spec << R"({"type":"piecewise","breakpoints":[-6,-1,1,6],"values":[0,-4,0]})";
  spec.close();
  const auto r = run_cli(
      "wavefunction --spec /tmp/wavebasis_flat_well.json --n 0 "
      "--energy-from quantization --grid-points 100 --window 0.8");
  REQUIRE(r.exit_code == 0);
  const Csv csv = parse_csv(r.out);
  REQUIRE(csv.columns.size() == 5);
  REQUIRE(csv.rows.size() == 100);
  // the flat-well quantization pins k: 2 * 2 * k = pi (n + 1/2)
  const double k = pi / 4.0;
  for (const auto& row : csv.rows) {
    const double u_oracle = std::stod(row[1]);
    CHECK(std::stod(row[2]) == doctest::Approx(u_oracle).epsilon(1e-9));  // new bases
    CHECK(std::stod(row[3]) == doctest::Approx(u_oracle).epsilon(1e-9));  // simple WKB
    // the 1/sqrt(k) pair differs only by a constant amplitude here
    CHECK(std::stod(row[4]) * std::sqrt(k) == doctest::Approx(u_oracle).epsilon(1e-9));
    CHECK(std::stod(row[0]) != 0.0);  // staggered grid never samples x = 0
  }
}

TEST_CASE("wavefunction rejects odd states") {
  CHECK(run_cli("wavefunction --potential harmonic --n 1").exit_code == 2);
}

TEST_CASE("two-layer dispersion table") {
  std::ofstream spec("/tmp/wavebasis_cell.json");
  spec << R"({"type":"piecewise","breakpoints":[0,1,2],"values":[-1,-9]})";
  spec.close();
  const auto r = run_cli("dispersion --spec /tmp/wavebasis_cell.json --drive 0");
  REQUIRE(r.exit_code == 0);
  const Csv csv = parse_csv(r.out);
  REQUIRE(csv.rows.size() == 3);
  CHECK(csv.rows[0][3] == "new");
  CHECK(csv.rows[1][3] == "wkb");
  CHECK(csv.rows[2][3] == "exact");
  CHECK(std::stod(csv.rows[0][1]) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
  CHECK(std::stod(csv.rows[1][1]) == doctest::Approx(2.0).epsilon(1e-12));
  // independent two-layer trace value
  const double ht = std::cos(1.0) * std::cos(3.0) -
                    (1.0 + 9.0) / (2.0 * 3.0) * std::sin(1.0) * std::sin(3.0);
  CHECK(std::stod(csv.rows[2][1]) == doctest::Approx(std::acos(ht) / 2.0).epsilon(1e-6));
}

TEST_CASE("dispersion marks the WKB form as undefined inside gaps") {
  std::ofstream spec("/tmp/wavebasis_gapcell.json");
  spec << R"({"type":"piecewise","breakpoints":[0,1,2],"values":[-1,1]})";
  spec.close();
  const auto r = run_cli("dispersion --spec /tmp/wavebasis_gapcell.json --drive 0");
  REQUIRE(r.exit_code == 0);
  const Csv csv = parse_csv(r.out);
  CHECK(csv.rows[1][1] == "nan");
}

TEST_CASE("dtmm-propagate: free particle is a straight line") {
  std::ofstream spec("/tmp/wavebasis_free.json");
  spec << R"({"type":"piecewise","breakpoints":[-10,10],"values":[0]})";
  spec.close();
  const auto r = run_cli(
      "dtmm-propagate --spec /tmp/wavebasis_free.json --energy 0 --x-max 2 "
      "--segments 8 --u0 0 --du0 1");
  REQUIRE(r.exit_code == 0);
  const Csv csv = parse_csv(r.out);
  REQUIRE(csv.rows.size() == 9);
  for (const auto& row : csv.rows) {
    CHECK(std::stod(row[1]) == doctest::Approx(std::stod(row[0])).epsilon(1e-12));
    CHECK(std::stod(row[3]) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("dtmm-propagate flags domain violations as numerical failures") {
  CHECK(run_cli("dtmm-propagate --potential hard_wall --half-width 1 --energy 1 --x-max 2")
            .exit_code == 3);
}

TEST_CASE("json output format") {
  const auto r = run_cli("spectrum --potential harmonic --n-max 1 --format json");
  REQUIRE(r.exit_code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["command"] == "spectrum");
  CHECK(doc["rows"].size() == 2);
  const double ratio = doc["rows"][0][1].get<double>() / 0.5;
  CHECK(ratio == doctest::Approx(std::sqrt(3.0 * pi * pi / 32.0)).epsilon(1e-10));

  // non-finite values appear as sentinel strings in JSON rows
  const auto gap = run_cli("dispersion --spec /tmp/wavebasis_gapcell.json --drive 0 --format json");
  REQUIRE(gap.exit_code == 0);
  const auto gd = nlohmann::json::parse(gap.out);
  CHECK(gd["rows"][1][1].is_string());
  CHECK(gd["rows"][1][1] == "nan");
}

TEST_CASE("output to file") {
  const auto r = run_cli(
      "spectrum --potential hard_wall --n-max 1 --out /tmp/wavebasis_out.csv");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.empty());
  std::ifstream f("/tmp/wavebasis_out.csv");
  REQUIRE(f.good());
  std::string first_line;
  std::getline(f, first_line);
  CHECK(first_line.rfind("# wavebasis", 0) == 0);
}
