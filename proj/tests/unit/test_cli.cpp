#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "output.hpp"
#include "svg.hpp"

namespace fs = std::filesystem;
using namespace acflab::cli;
using std::numbers::pi;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "acflab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("acflab_cli_" + name)) {
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str() const { return path.string(); }
};

// Data rows of a CSV artifact, header comments and column row removed.
std::vector<std::vector<std::string>> csv_rows(const fs::path& p) {
  std::istringstream in(slurp(p));
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool seen_columns = false;
  while (std::getline(in, line)) {
    if (line.rfind("#", 0) == 0) continue;
    if (!seen_columns) {
      seen_columns = true;
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("integer ranges") {
  CHECK(parse_int_range("3..6") == std::vector<int>{3, 4, 5, 6});
  CHECK(parse_int_range("4") == std::vector<int>{4});
  CHECK(parse_int_range("1..2,7") == std::vector<int>{1, 2, 7});
  CHECK_THROWS(parse_int_range("6..3"));
  CHECK_THROWS(parse_int_range("a..3"));
  CHECK_THROWS(parse_int_range(""));
}

TEST_CASE("real lists accept multiples of pi") {
  const std::vector<double> v = parse_real_list("0.5, pi, pi/3,2pi/3 ,0.25*pi,1e-3");
  REQUIRE(v.size() == 6);
  CHECK(v[0] == 0.5);
  CHECK(v[1] == pi);
  CHECK(v[2] == doctest::Approx(pi / 3));
  CHECK(v[3] == doctest::Approx(2 * pi / 3));
  CHECK(v[4] == doctest::Approx(pi / 4));
  CHECK(v[5] == 1e-3);
  CHECK_THROWS(parse_real_list("pie"));
  CHECK_THROWS(parse_real_list("1,,2"));
  CHECK_THROWS(parse_real_list("pi/0"));
}

TEST_CASE("number formatting round-trips") {
  for (double x : {0.1, 1.0 / 3.0, 9.869604401089358, 1e-300, -2.5}) {
    CHECK(std::stod(format_number(x)) == x);
  }
  CHECK(format_number(std::nan("")) == "nan");
  CHECK(format_number(-INFINITY) == "-inf");
}

TEST_CASE("cap-eigen on the hemisphere") {
  TempDir dir("cap");
  const Result r = invoke({"cap-eigen", "--n", "3", "--theta0", "1.5707963", "--m", "1024",
                           "--output-dir", dir.str()});
  CHECK(r.code == kExitOk);
  CHECK(r.err.empty());
  const auto rows = csv_rows(dir.path / "cap_eigen.csv");
  REQUIRE(rows.size() == 3);
  for (const auto& row : rows) {
    CHECK(std::stod(row[4]) == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(std::stod(row[5]) < 1e-6);
  }
  CHECK(fs::exists(dir.path / "cap_eigen.svg"));
  const std::string text = slurp(dir.path / "cap_eigen.csv");
  CHECK(text.rfind("# acflab 1.0.0\n# command: cap-eigen\n", 0) == 0);
  CHECK(text.find("# seed: 0\n") != std::string::npos);
  CHECK(text.find("# anchor: ") != std::string::npos);
  CHECK(text.find("# tolerance: ") != std::string::npos);
  CHECK(text.find("m=1024") != std::string::npos);
}

TEST_CASE("fh-scan table") {
  TempDir dir("fh");
  const Result r = invoke({"fh-scan", "--n", "3..4", "--grid", "64", "--output-dir", dir.str()});
  CHECK(r.code == kExitOk);
  const auto rows = csv_rows(dir.path / "fh_scan.csv");
  REQUIRE(rows.size() == 2);
  for (const auto& row : rows) {
    CHECK(std::stod(row[2]) >= 2.0 - 1e-5);
    CHECK(std::abs(std::stod(row[1]) - pi / 2) < 1e-4);
  }
  CHECK(csv_rows(dir.path / "fh_samples.csv").size() == 128);
}

TEST_CASE("acf-eval open book") {
  TempDir dir("acf");
  const Result r = invoke({"acf-eval", "--pair", "open-book", "--n", "3", "--radii", "64", "--format", "both",
                           "--output-dir", dir.str()});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("Constant") != std::string::npos);
  const auto rows = csv_rows(dir.path / "jcurve.csv");
  REQUIRE(rows.size() == 64);
  for (const auto& row : rows) CHECK(std::stod(row[3]) == doctest::Approx(pi * pi).epsilon(1e-6));
  const auto doc = nlohmann::json::parse(slurp(dir.path / "jcurve.json"));
  CHECK(doc.at("classification") == "Constant");
  CHECK(doc.at("pair_tag") == "open-book");
  CHECK(doc.at("radii").size() == 64);
  CHECK(doc.at("header").at("command") == "acf-eval");
}

TEST_CASE("outputs are byte-identical for identical configurations") {
  TempDir a("det_a"), b("det_b");
  for (const TempDir* d : {&a, &b}) {
    CHECK(invoke({"rearrange-demo", "--seed", "11", "--format", "both",
                  "--output-dir", d->str()})
              .code == kExitOk);
  }
  for (const char* name : {"rearrange_summary.csv", "rearrange_output.json", "rearrange.svg"}) {
    CHECK(slurp(a.path / name) == slurp(b.path / name));
  }
  TempDir c("det_c");
  invoke({"rearrange-demo", "--seed", "12", "--output-dir", c.str()});
  CHECK(slurp(a.path / "rearrange_summary.csv") != slurp(c.path / "rearrange_summary.csv"));
}

TEST_CASE("remaining commands run") {
  TempDir dir("misc");
  CHECK(invoke({"char-const", "--n", "3..4", "--theta0", "pi/2", "--output-dir", dir.str()}).code == kExitOk);
  CHECK(invoke({"convexity-scan", "--n", "5", "--points", "16", "--m", "128", "--output-dir", dir.str()}).code ==
        kExitOk);
  CHECK(invoke({"convexity-scan", "--potential", "constant", "--c", "1.5", "--points", "8", "--output-dir",
                dir.str(), "--no-plots"})
            .code == kExitOk);
  CHECK(invoke({"rearrange-demo", "--probe", "band", "--n-theta", "48", "--n-phi", "8", "--output-dir",
                dir.str()})
            .code == kExitOk);
  const Result v = invoke({"verify-all", "--only", "10", "--output-dir", dir.str()});
  CHECK(v.code == kExitOk);
  CHECK(v.out.find("[PASS] 10") != std::string::npos);
  for (const char* f : {"char_const.csv", "convexity_scan.csv", "convexity_summary.csv", "rearrange_input.csv",
                        "verify.csv"}) {
    CHECK(fs::exists(dir.path / f));
  }
  for (const auto& entry : fs::directory_iterator(dir.path)) {
    CHECK(entry.path().extension() != ".tmp");
  }
}

TEST_CASE("a failing criterion gives exit code 3") {
  TempDir dir("fail");
  const Result r = invoke({"verify-all", "--only", "4", "--output-dir", dir.str()});
  CHECK(r.code == kExitCheckFailed);
  CHECK(r.out.find("[FAIL] 4") != std::string::npos);
}

TEST_CASE("invalid configurations give exit code 1 and one line") {
  for (const std::vector<std::string>& args :
       std::vector<std::vector<std::string>>{{"cap-eigen", "--n", "2"},
                                             {"fh-scan", "--n", "5..3"},
                                             {"cap-eigen", "--method", "magic"},
                                             {"cap-eigen", "--theta0", "4"},
                                             {"verify-all", "--only", "13"},
                                             {"nonsense"},
                                             {}}) {
    const Result r = invoke(args);
    CHECK(r.code == kExitInvalidConfig);
    CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
  }
  CHECK(invoke({"--help"}).code == kExitOk);
}

TEST_CASE("solver failures give exit code 2") {
  TempDir dir("solver");
  // lambda(1) is about 5.45, so a bracket topping out at 1 holds no eigenvalue.
  const Result r = invoke({"cap-eigen", "--n", "3", "--theta0", "1", "--method", "shooting", "--lambda-max", "1",
                           "--output-dir", dir.str()});
  CHECK(r.code == kExitSolverFailure);
  CHECK(r.err.find("solver failure") != std::string::npos);
}

TEST_CASE("SVG charts are well formed") {
  const std::string svg = render_svg({"t<1>", "x", "y", {{"a&b", {0, 1, 2}, {1, NAN, 3}}}});
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("t&lt;1&gt;") != std::string::npos);
  CHECK(svg.find("a&amp;b") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
}
