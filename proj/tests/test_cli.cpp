#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "symconj/cli.hpp"
#include "symconj/quadrature.hpp"
#include "symconj/verifier.hpp"

using namespace symconj;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "symconj");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("symconj_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

// Writes f sampled on the default grid of a 1-d trig run with truncation N.
fs::path write_input(const fs::path& dir, int N, double (*f)(double)) {
  const QuadratureRule r = build_rule(FamilySpec::trigonometric(), default_rule_size(N));
  const GridFunction g = GridFunction::sample(r, 1, [f](std::span<const double> x) { return f(x[0]); });
  const fs::path p = dir / "input.csv";
  std::ofstream os(p);
  g.write_csv(os);
  return p;
}

// (x, value) rows of a one-dimensional CSV.
std::vector<std::pair<double, double>> read_rows(const fs::path& p) {
  std::vector<std::pair<double, double>> rows;
  const auto ls = lines(slurp(p));
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto comma = ls[i].find(',');
    rows.emplace_back(std::stod(ls[i].substr(0, comma)), std::stod(ls[i].substr(comma + 1)));
  }
  return rows;
}

}  // namespace

TEST_CASE("basis writes one file per index and a manifest") {
  const fs::path dir = scratch("basis");
  const Run r = run({"--family", "trig", "--trunc", "4", "--out", dir.string(), "basis", "--psi"});
  REQUIRE(r.code == kExitOk);
  for (int n = 0; n <= 4; ++n) CHECK(fs::exists(dir / ("phi_" + std::to_string(n) + ".csv")));
  CHECK(fs::exists(dir / "psi_2.csv"));
  CHECK(fs::exists(dir / "psi_-2.csv"));
  const auto phi1 = read_rows(dir / "phi_1.csv");
  REQUIRE(phi1.size() == static_cast<std::size_t>(default_rule_size(4)));
  for (std::size_t i = 0; i < phi1.size(); ++i) {
    CHECK(phi1[i].second == Approx(std::sin(phi1[i].first)).epsilon(1e-14));
    CHECK(phi1[i].second == -phi1[phi1.size() - 1 - i].second);
  }
  const std::string manifest = slurp(dir / "manifest.txt");
  CHECK(manifest.find("family=trig") != std::string::npos);
  int stamps = 0;
  for (const auto& l : lines(manifest)) stamps += l.rfind("timestamp=", 0) == 0;
  CHECK(stamps == 1);
}

TEST_CASE("transform: Riesz transform of cos is -sin") {
  const fs::path dir = scratch("riesz");
  const fs::path in = write_input(dir, 8, [](double x) { return std::cos(x); });
  const Run r = run({"--trunc", "8", "--out", dir.string(), "transform", "--input", in.string(), "riesz", "1"});
  REQUIRE(r.code == kExitOk);
  for (const auto& [x, v] : read_rows(dir / "transform.csv")) CHECK(std::abs(v + std::sin(x)) < 1e-12);
  const auto coeffs = lines(slurp(dir / "coefficients.csv"));
  CHECK(coeffs.front() == "n1,input,output");
  CHECK(coeffs.size() == 10);
}

TEST_CASE("transform: constants and the identity") {
  const fs::path dir = scratch("poisson");
  const fs::path in = write_input(dir, 8, [](double x) { return 0.3 + std::sin(2 * x); });
  REQUIRE(run({"--trunc", "8", "--out", dir.string(), "transform", "--input", in.string(), "poisson", "0"}).code == kExitOk);
  for (const auto& [x, v] : read_rows(dir / "transform.csv")) CHECK(v == Approx(0.3 + std::sin(2 * x)).epsilon(1e-12));

  const fs::path in0 = write_input(dir, 8, [](double) { return 1.0; });
  REQUIRE(run({"--trunc", "8", "--out", dir.string(), "transform", "--input", in0.string(), "riesz", "1"}).code == kExitOk);
  for (const auto& row : read_rows(dir / "transform.csv")) CHECK(std::abs(row.second) < 1e-13);
}

TEST_CASE("transform: conjugate Poisson integral") {
  const fs::path dir = scratch("conjugate");
  const fs::path in = write_input(dir, 8, [](double x) { return std::cos(x); });
  REQUIRE(run({"--trunc", "8", "--out", dir.string(), "transform", "--input", in.string(), "conjugate", "1", "1.0"}).code ==
          kExitOk);
  for (const auto& [x, v] : read_rows(dir / "transform.csv")) CHECK(std::abs(v + std::exp(-1.0) * std::sin(x)) < 1e-12);
  const std::string first = slurp(dir / "transform.csv");
  REQUIRE(run({"--trunc", "8", "--out", dir.string(), "transform", "--input", in.string(), "conjugate", "1", "1.0"}).code ==
          kExitOk);
  CHECK(slurp(dir / "transform.csv") == first);
}

TEST_CASE("transform: projected derivative on the positive half") {
  const fs::path dir = scratch("dpow");
  const fs::path in = write_input(dir, 8, [](double x) { return std::cos(2 * std::abs(x)); });
  REQUIRE(run({"--trunc", "8", "--out", dir.string(), "transform", "--input", in.string(), "dpow", "2"}).code == kExitOk);
  const auto rows = read_rows(dir / "transform.csv");
  CHECK(rows.size() == static_cast<std::size_t>(default_rule_size(8) / 2));
  // δ*δ cos 2x = 4 cos 2x on (0, π)
  for (const auto& [x, v] : rows) CHECK(v == Approx(4 * std::cos(2 * x)).epsilon(1e-10).scale(1.0));
  CHECK(lines(slurp(dir / "coefficients.csv")).front() == "# parity 0");
}

TEST_CASE("verify writes reports and reflects failures in the exit code") {
  const fs::path dir = scratch("verify");
  const Run ok = run({"--trunc", "8", "--out", dir.string(), "verify"});
  CHECK(ok.code == kExitOk);
  CHECK(ok.out.find("phi_orthonormality") != std::string::npos);
  CHECK(lines(slurp(dir / "report.jsonl")).size() == check_ids().size() - 1);
  CHECK(fs::exists(dir / "summary.txt"));
  const Run bad = run({"--family", "hermite", "--trunc", "8", "--out", dir.string(), "verify", "--mutate-ladder"});
  CHECK(bad.code == kExitCheckFailure);
  CHECK(slurp(dir / "report.jsonl").find("\"pass\":false") != std::string::npos);
}

TEST_CASE("configuration file") {
  const fs::path dir = scratch("config");
  {
    std::ofstream cfg(dir / "run.ini");
    cfg << "family=jacobi\nalpha=0.3\nbeta=0.7\ntrunc=6\nout=" << dir.string() << "\n";
  }
  const Run r = run({"--config", (dir / "run.ini").string(), "basis"});
  REQUIRE(r.code == kExitOk);
  CHECK(fs::exists(dir / "phi_6.csv"));
  CHECK(slurp(dir / "manifest.txt").find("jacobi(0.3,0.7)") != std::string::npos);
}

TEST_CASE("usage errors") {
  const fs::path dir = scratch("usage");
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"--family", "bessel", "--out", dir.string(), "basis"}).code == kExitUsage);
  CHECK(run({"--quad", "51", "--out", dir.string(), "basis"}).code == kExitUsage);
  CHECK(run({"--trunc", "8", "--quad", "24", "--out", dir.string(), "basis"}).code == kExitUsage);
  CHECK(run({"--dim", "0", "--out", dir.string(), "verify"}).code == kExitUsage);
  const fs::path in = write_input(dir, 8, [](double x) { return std::cos(x); });
  CHECK(run({"--trunc", "8", "--out", dir.string(), "transform", "--input", in.string(), "fourier"}).code == kExitUsage);
  CHECK(run({"--trunc", "8", "--out", dir.string(), "transform", "--input", in.string(), "riesz"}).code == kExitUsage);
  CHECK(run({"--trunc", "8", "--out", dir.string(), "transform", "--input", in.string(), "poisson", "-1"}).code ==
        kExitUsage);
  // Input sampled on a different grid.
  CHECK(run({"--trunc", "10", "--out", dir.string(), "transform", "--input", in.string(), "riesz", "1"}).code ==
        kExitUsage);
  const Run missing = run({"--out", dir.string(), "transform", "--input", (dir / "absent.csv").string(), "riesz", "1"});
  CHECK(missing.code == kExitUsage);
  CHECK_FALSE(missing.err.empty());
}
