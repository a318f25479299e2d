#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "symconj/verifier.hpp"

using namespace symconj;

namespace {

const CheckReport& find(const std::vector<CheckReport>& r, const std::string& id) {
  const auto it = std::find_if(r.begin(), r.end(), [&](const CheckReport& c) { return c.id == id; });
  REQUIRE(it != r.end());
  return *it;
}

std::string failing(const std::vector<CheckReport>& r) {
  std::string s;
  for (const CheckReport& c : r)
    if (!c.pass) s += c.id + " ";
  return s;
}

}  // namespace

TEST_CASE("check catalogue") {
  const auto& ids = check_ids();
  CHECK(std::set<std::string>(ids.begin(), ids.end()).size() == ids.size());
  CHECK(ids.front() == "phi_orthonormality");
  CHECK(default_tolerance("riesz_contraction") == 1e-12);
  CHECK(default_tolerance("ladder_involution") == 1e-13);
  CHECK_THROWS(default_tolerance("no_such_check"));
}

TEST_CASE("every check passes on the trigonometric family") {
  SuiteConfig cfg;
  const auto r = run_suite(cfg);
  CAPTURE(failing(r));
  CHECK(all_pass(r));
  CHECK(r.size() == check_ids().size() - 1);  // sine_convention is sine-only
  for (const CheckReport& c : r) {
    CHECK(c.family == "trig");
    CHECK(c.truncation == 32);
    CHECK(c.max_defect <= c.tolerance);
  }
}

TEST_CASE("every check passes for each family in two dimensions") {
  for (const FamilySpec& fam : {FamilySpec::hermite_even(), FamilySpec::laguerre(0.5), FamilySpec::jacobi(0.3, 0.7),
                                FamilySpec::ornstein_uhlenbeck()}) {
    SuiteConfig cfg;
    cfg.family = fam;
    cfg.dim = 2;
    cfg.truncation = 12;
    cfg.random_vectors = 10;
    cfg.random_pairs = 5;
    const auto r = run_suite(cfg);
    CAPTURE(fam.name());
    CAPTURE(failing(r));
    CHECK(all_pass(r));
  }
}

TEST_CASE("a corrupted ladder sign is detected") {
  SuiteConfig cfg;
  cfg.family = FamilySpec::hermite_even();
  cfg.truncation = 16;
  cfg.ladder = LadderSign::Corrupted;
  const auto r = run_suite(cfg);
  CHECK_FALSE(all_pass(r));
  CHECK_FALSE(find(r, "skew_symmetry_spectral").pass);
  CHECK(find(r, "phi_orthonormality").pass);
}

TEST_CASE("the sine convention cannot represent even functions") {
  SuiteConfig cfg;
  cfg.family = FamilySpec::sine_augmented();
  cfg.truncation = 16;
  const auto r = run_suite(cfg);
  const CheckReport& s = find(r, "sine_convention");
  // cos x and x² have no expansion in sin(kx) on (0, π); the check reports that.
  CHECK_FALSE(s.pass);
  CHECK(s.max_defect > 1.0);
  for (const CheckReport& c : r)
    if (c.id != "sine_convention") CHECK_MESSAGE(c.pass, c.id);
}

TEST_CASE("reports are deterministic and independent of thread count") {
  SuiteConfig cfg;
  cfg.family = FamilySpec::jacobi(0.3, 0.7);
  cfg.dim = 2;
  cfg.truncation = 8;
  std::ostringstream a, b, c;
  write_jsonl(a, run_suite(cfg));
  write_jsonl(b, run_suite(cfg));
  cfg.threads = 4;
  write_jsonl(c, run_suite(cfg));
  CHECK(a.str() == b.str());
  CHECK(a.str() == c.str());
  const std::string text = a.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == static_cast<long>(check_ids().size() - 1));
  CHECK(text.find("runtime") == std::string::npos);
  cfg.seed = 99;
  std::ostringstream d;
  write_jsonl(d, run_suite(cfg));
  CHECK(d.str() != a.str());
}

TEST_CASE("configuration") {
  SuiteConfig cfg;
  cfg.only = {"riesz_contraction", "semigroup_law"};
  cfg.tolerances = {{"riesz_contraction", 1e-20}, {"semigroup_law", 1.0}};
  const auto r = run_suite(cfg);
  REQUIRE(r.size() == 2);
  CHECK(find(r, "riesz_contraction").tolerance == 1e-20);
  CHECK(find(r, "semigroup_law").tolerance == default_tolerance("semigroup_law"));

  SuiteConfig bad;
  bad.only = {"nonsense"};
  CHECK_THROWS_AS(run_suite(bad), std::invalid_argument);
  bad = SuiteConfig{};
  bad.quad_size = 33;
  CHECK_THROWS_AS(run_suite(bad), std::invalid_argument);
  bad = SuiteConfig{};
  bad.t_values = {-1.0};
  CHECK_THROWS_AS(run_suite(bad), std::invalid_argument);
}

TEST_CASE("summary layout") {
  SuiteConfig cfg;
  cfg.only = {"pi0_idempotence"};
  const auto r = run_suite(cfg);
  std::ostringstream os;
  write_summary(os, r, false);
  CHECK(os.str().find("pi0_idempotence") != std::string::npos);
  CHECK(os.str().find("yes") != std::string::npos);
}
