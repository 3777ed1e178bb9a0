#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "qes/cli.hpp"
#include "qes/figures.hpp"

using namespace qes;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "qes");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string value_of(const std::string& text, const std::string& key) {
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string k, v;
    ls >> k >> v;
    if (k == key) return v;
  }
  return {};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

bool single_error_line(const std::string& err, const std::string& code) {
  return err.rfind("error code=" + code + ":", 0) == 0 && err.find('\n') == err.size() - 1;
}

}  // namespace

TEST_CASE("solve prints the caption energies") {
  auto r = run({"solve", "--family", "1", "--m", "1", "--L", "1", "--lambda", "1", "--B", "1"});
  CHECK(r.code == 0);
  CHECK(value_of(r.out, "E0") == "-15.5");
  CHECK(value_of(r.out, "E1") == "-1.5");
  CHECK(value_of(r.out, "E0_exact") == "-31/2");
  CHECK(value_of(r.out, "r0") == "1.5811388300841898");

  r = run({"solve", "--family", "2", "--m", "2", "--L", "1", "--lambda", "-1", "--B", "1"});
  CHECK(r.code == 0);
  CHECK(value_of(r.out, "E0") == "-4.5");
  CHECK(value_of(r.out, "E1") == "37.5");

  r = run({"solve", "--family", "1", "--m", "1", "--L", "1", "--lambda", "1", "--B", "2"});
  CHECK(r.code == 0);
  CHECK(value_of(r.out, "E0_exact").empty());  // sqrt(2) is irrational

  r = run({"solve", "--family", "2", "--m", "1", "--L", "1", "--lambda", "-1", "--B", "1",
           "--format", "json"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"E0\": 2.5") != std::string::npos);
  CHECK(r.out.find("\"exact\"") != std::string::npos);

  r = run({"solve", "--family", "1", "--m", "1", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("key,value\n", 0) == 0);
}

TEST_CASE("validation failures exit with code 2") {
  auto r = run({"solve", "--family", "1", "--m", "1", "--lambda", "-1"});
  CHECK(r.code == 2);
  CHECK(single_error_line(r.err, "SignMismatch"));

  r = run({"solve", "--family", "2", "--lambda", "1"});
  CHECK(r.code == 2);
  CHECK(single_error_line(r.err, "SignMismatch"));

  r = run({"solve", "--lambda", "0"});
  CHECK(r.code == 2);
  CHECK(single_error_line(r.err, "DegenerateCurvature"));

  r = run({"solve", "--m", "0"});
  CHECK(r.code == 2);
  CHECK(single_error_line(r.err, "InvalidOrder"));

  r = run({"solve", "--B", "-1"});
  CHECK(r.code == 2);

  r = run({"solve", "--family", "3"});
  CHECK(r.code == 2);
  CHECK(single_error_line(r.err, "InvalidParameter"));

  r = run({"solve", "--L", "x"});
  CHECK(r.code == 2);

  r = run({"solve", "--format", "xml"});
  CHECK(r.code == 2);

  r = run({"nonsense"});
  CHECK(r.code == 2);
  CHECK(single_error_line(r.err, "UsageError"));

  r = run({});
  CHECK(r.code == 2);
}

TEST_CASE("verify exit status") {
  auto r = run({"verify", "--family", "1", "--m", "2", "--L", "1", "--lambda", "1", "--B", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);

  r = run({"verify", "--family", "2", "--m", "1", "--L", "1", "--lambda", "-1", "--B", "1",
           "--perturb", "0.01"});
  CHECK(r.code == 1);
  CHECK(r.out.find("riccati_ground") != std::string::npos);
  CHECK(r.out.find("verification FAILED") != std::string::npos);

  r = run({"verify", "--family", "1", "--m", "1", "--L", "1", "--format", "json"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("spectrum and sweep") {
  auto r = run({"spectrum", "--family", "1", "--m", "1", "--L", "1", "--k", "2", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("n,E,E_raw,richardson_error\n", 0) == 0);
  CHECK(r.out.find("\n0,-15.49999") != std::string::npos);

  r = run({"spectrum", "--family", "0", "--L", "0", "--lambda", "-1", "--coeffs", "0", "--k", "1"});
  CHECK(r.code == 0);

  r = run({"sweep", "--family", "1,2", "--m", "1,2", "--L", "0", "--B", "1", "--jobs", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("family2_m2_L0_lambda-1_B1") != std::string::npos);

  r = run({"sweep", "--family", "2", "--m", "1", "--L", "1", "--B", "1", "--perturb", "0.01"});
  CHECK(r.code == 1);
}

TEST_CASE("figure CSVs match the golden files byte for byte") {
  const auto dir = std::filesystem::temp_directory_path() / "qes_figures_test";
  std::filesystem::remove_all(dir);
  auto r = run({"figures", "--out", dir.string()});
  REQUIRE(r.code == 0);
  for (const char* name : {"fig1", "fig2", "fig3", "fig4"}) {
    CAPTURE(name);
    const std::string got = slurp(dir / (std::string(name) + ".csv"));
    const std::string want = slurp(std::filesystem::path(QES_GOLDEN_DIR) / (std::string(name) + ".csv"));
    REQUIRE_FALSE(want.empty());
    CHECK(got == want);
    CHECK(got.find('\r') == std::string::npos);
  }
  // rerun: deterministic
  CHECK(slurp(dir / "fig2.csv") == to_csv(reference_figures()[1]));
  std::filesystem::remove_all(dir);
}

TEST_CASE("figure contents") {
  const auto figs = reference_figures();
  REQUIRE(figs.size() == 4);
  for (const auto& f : figs) CHECK(f.rows.size() == 1000);
  // fig1: centrifugal wall 2 / r^2 = 800 dominates at r = 0.05
  CHECK(figs[0].rows[0][0] == doctest::Approx(0.05));
  CHECK(figs[0].rows[0][1] == doctest::Approx(800).epsilon(0.02));
  // fig2: psi1 changes sign once, at r0 = sqrt(5/2)
  int changes = 0;
  double at = 0;
  const auto& rows = figs[1].rows;
  double peak0 = 0, peak1 = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    peak0 = std::max(peak0, std::fabs(rows[i][1]));
    peak1 = std::max(peak1, std::fabs(rows[i][2]));
    if (i && (rows[i][2] > 0) != (rows[i - 1][2] > 0)) {
      ++changes;
      at = rows[i][0];
    }
  }
  CHECK(changes == 1);
  CHECK(std::fabs(at - 1.58113883) < 3.0 / 999);
  CHECK(peak0 == 1.0);
  CHECK(peak1 == 1.0);
  // fig3: V grows without bound as r -> 1
  CHECK(figs[2].rows.back()[1] > 1e7);
  CHECK(figs[2].rows.back()[1] > figs[2].rows[900][1]);
}

TEST_CASE("figures report unwritable paths") {
  const auto file = std::filesystem::temp_directory_path() / "qes_not_a_dir";
  std::ofstream(file) << "x";
  auto r = run({"figures", "--out", (file / "sub").string()});
  CHECK(r.code == 3);
  CHECK(single_error_line(r.err, "IoError"));
  std::filesystem::remove(file);
}
