#pragma once

// Named, tolerance-tagged checks of the identities of the symmetrized scheme,
// run against one family and dimension at a time.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "symconj/operators.hpp"
#include "symconj/quadrature.hpp"

namespace symconj {

struct CheckReport {
  std::string id;
  std::string family;
  int dim = 1;
  int truncation = 0;
  double max_defect = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double runtime_ms = 0.0;
  std::uint64_t seed = 0;
  std::string note;
};

struct SuiteConfig {
  FamilySpec family = FamilySpec::trigonometric();
  int dim = 1;
  int truncation = 32;
  int quad_size = 0;  // 0 selects default_rule_size(truncation)
  std::uint64_t seed = 12345;
  std::vector<double> t_values{0.1, 1.0};
  LadderSign ladder = LadderSign::Standard;
  int random_pairs = 20;
  int random_vectors = 50;
  int threads = 1;
  // Per-check overrides; a value larger than the built-in tolerance is ignored.
  std::map<std::string, double> tolerances;
  // Run only these check ids (empty: all).
  std::vector<std::string> only;
};

// Every check id in execution order.
const std::vector<std::string>& check_ids();
double default_tolerance(const std::string& id);

// Throws std::invalid_argument on configuration errors; failing checks are
// reported, not thrown.
std::vector<CheckReport> run_suite(const SuiteConfig& config);
bool all_pass(const std::vector<CheckReport>& reports);

// Unit-norm vector with Gaussian entries on every basis slot of the engine box.
CoeffVector random_unit_vector(const OperatorEngine& engine, std::mt19937_64& rng);

// D_j^N Φ_n by the closed ladder formula: coefficient and target index. A
// vanishing result (Φ_{-1}, or a zero gap) has coefficient 0.
struct LadderTerm {
  MultiIndex target;
  double coefficient = 0.0;
};
LadderTerm ladder_power(const SymmetrizedBasis& basis, const MultiIndex& n, int axis, int power);

// D^ℓ Φ_n from the product closed form with sign (-1)^{|ℓ|/2 + |(n + h)ℓ̃|},
// with h = 3/2 or h = 1/2. Only h = 1/2 agrees with iterated ladder steps.
enum class ProductSign { ThreeHalves, OneHalf };
LadderTerm product_power(const SymmetrizedBasis& basis, const MultiIndex& n, const MultiIndex& l, ProductSign sign);

// One JSON object per line; runtime is left out so the file is reproducible.
void write_jsonl(std::ostream& os, const std::vector<CheckReport>& reports);
void write_summary(std::ostream& os, const std::vector<CheckReport>& reports, bool with_runtime);

}  // namespace symconj
