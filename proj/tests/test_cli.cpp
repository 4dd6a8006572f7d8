#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "surface_modes/cli.hpp"
#include "surface_modes/report_io.hpp"

using namespace surface_modes;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> row;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) row.push_back(cell);
    if (!line.empty() && line.back() == ',') row.emplace_back();
    rows.push_back(row);
  }
  return rows;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), {}};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("argument parsing helpers") {
    CHECK(cli::parse_m_range("80") == std::pair{80, 80});
    CHECK(cli::parse_m_range("20:80") == std::pair{20, 80});
    CHECK_THROWS(cli::parse_m_range("20-80"));
    CHECK(cli::parse_real_list("0.3,0.5") == std::vector<double>{0.3, 0.5});
    CHECK_THROWS(cli::parse_real_list("0.3,x"));
    CHECK(report::format_double(0.1) == "0.1");
    CHECK(report::format_double(1e-300) == "1e-300");
    CHECK(std::stod(report::format_double(2.0 / 3.0)) == 2.0 / 3.0);
  }

  TEST_CASE("eigenvalues command") {
    const Run r = run({"eigenvalues", "--n", "2", "--dim", "2", "--s0", "1", "--m", "20:80"});
    CHECK(r.code == 0);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 62);
    CHECK(rows[0] == std::vector<std::string>{"m", "s0", "n", "dim", "bracket_lo", "bracket_hi", "k", "residual",
                                              "sign_change_found", "probe_root_count"});
    CHECK(rows[1][0] == "20");
    CHECK(rows[61][0] == "80");
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][8] == "true");
  }

  TEST_CASE("configuration errors exit with 2") {
    const Run r = run({"eigenvalues", "--n", "1", "--m", "20"});
    CHECK(r.code == 2);
    CHECK(r.err.find("contrast must differ from 1") != std::string::npos);
    CHECK(run({"eigenvalues", "--n", "2", "--m", "30:20"}).code == 2);
    CHECK(run({"eigenvalues", "--n", "2", "--dim", "4"}).code == 2);
    CHECK(run({"localize", "--n", "2", "--tau", "1.2"}).code == 2);
    CHECK(run({"eigenvalues", "--n", "2", "--format", "xml"}).code == 2);
    CHECK(run({"profile", "--n", "2", "--m", "20:30"}).code == 2);
    CHECK(run({"eigenvalues"}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"verify", "--n", "0.5", "--m", "20"}).code == 2);
  }

  TEST_CASE("duality column for n < 1") {
    const Run r = run({"eigenvalues", "--n", "0.5", "--m", "20:22"});
    CHECK(r.code == 0);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].back() == "dual_of");
    for (std::size_t i = 1; i < rows.size(); ++i) {
      CHECK(std::stod(rows[i][6]) == 2.0 * std::stod(rows[i][10]));
    }
  }

  TEST_CASE("localize command") {
    const Run r = run({"localize", "--n", "2", "--m", "20:80", "--tau", "0.5"});
    CHECK(r.code == 0);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 62);
    CHECK(rows[0][5] == "log10_ratio_v");
    double previous = INFINITY;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      CHECK(rows[i][2] == "0.5");
      CHECK(std::stod(rows[i][3]) < 1.0);
      CHECK(std::stod(rows[i][4]) < 1.0);
      if (rows[i][9] == "true") {
        const double v = std::stod(rows[i][5]);
        CHECK(v < previous);
        previous = v;
      }
    }
  }

  TEST_CASE("localize output is deterministic") {
    const auto dir = std::filesystem::temp_directory_path();
    const auto a = dir / "surface_modes_cli_a.csv";
    const auto b = dir / "surface_modes_cli_b.csv";
    CHECK(run({"localize", "--n", "2", "--m", "20:40", "--tau", "0.3,0.5", "--out", a.string()}).code == 0);
    CHECK(run({"localize", "--n", "2", "--m", "20:40", "--tau", "0.3,0.5", "--out", b.string()}).code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(!slurp(a).empty());
    std::filesystem::remove(a);
    std::filesystem::remove(b);
  }

  TEST_CASE("verify command and json round trip") {
    const Run r = run({"verify", "--n", "1.5,2,4", "--m", "20:26", "--tau", "0.3,0.5", "--format", "json"});
    CHECK(r.code == 0);
    const auto doc = nlohmann::ordered_json::parse(r.out);
    CHECK(doc["config"]["command"] == "verify");
    CHECK(doc["rows"].size() > 100);
    CHECK(doc.dump(2) + "\n" == r.out);
    for (const auto& row : doc["rows"]) {
      CHECK(row.contains("check_name"));
      if (row["in_regime"].get<bool>()) CHECK(row["passed"].get<bool>());
    }
  }

  TEST_CASE("profile command") {
    const Run r = run({"profile", "--n", "2", "--m", "80", "--samples", "1000"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("# k=", 0) == 0);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 1001);
    CHECK(rows[0] == std::vector<std::string>{"r", "abs_w_normalized", "abs_v_normalized"});
    CHECK(rows[1][0] == "0");
    CHECK(rows[1000][0] == "1");
    double best = -1.0, r_at = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const double v = std::stod(rows[i][2]);
      if (v > best) {
        best = v;
        r_at = std::stod(rows[i][0]);
      }
    }
    CHECK(r_at > 0.9);
  }

  TEST_CASE("help exits cleanly") { CHECK(run({"--help"}).code == 0); }
}
