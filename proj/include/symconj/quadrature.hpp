#pragma once

// Family-adapted Gauss rules on X_SYM and their tensor products, μ-inner
// products, and the analyze/synthesize pair between node samples and
// coefficients in the Φ basis.

#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "symconj/symmetrization.hpp"
#include "symconj/tensor.hpp"

namespace symconj {

// Nodes ascending and symmetric: node(mirror(i)) = -node(i), equal weights.
class QuadratureRule {
 public:
  QuadratureRule(FamilySpec fam, std::vector<double> nodes, std::vector<double> weights);

  const FamilySpec& family() const { return fam_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  int mirror(int i) const { return size() - 1 - i; }

  bool operator==(const QuadratureRule&) const = default;

 private:
  FamilySpec fam_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

// `size` is the total node count on X_SYM and must be even (0 is never a node).
QuadratureRule build_rule(const FamilySpec& fam, int size);
constexpr int default_rule_size(int truncation) { return 2 * truncation + 32; }
constexpr int minimum_rule_size(int truncation) { return 2 * truncation + 16; }

// Values on the tensor grid of a rule, lexicographic in node indices with the
// first axis most significant.
class GridFunction {
 public:
  GridFunction(QuadratureRule rule, int dim);
  static GridFunction sample(QuadratureRule rule, int dim, const std::function<double(std::span<const double>)>& f);

  const QuadratureRule& rule() const { return rule_; }
  int dim() const { return dim_; }
  std::size_t size() const { return values_.size(); }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  int node_index(std::size_t flat, int axis) const;
  std::vector<double> point(std::size_t flat) const;
  // Product weight of grid point `flat`.
  double weight(std::size_t flat) const;

  // CSV with header x1..xd,value and one row per node.
  void write_csv(std::ostream& os) const;
  // Throws std::invalid_argument if the file does not sit on this rule's grid.
  static GridFunction read_csv(std::istream& is, QuadratureRule rule, int dim);

 private:
  QuadratureRule rule_;
  int dim_;
  std::vector<double> values_;
};

// Σ w f g over the grid.
double inner_product(const GridFunction& f, const GridFunction& g);

// Cached 1-d basis samples B[n][i] = Φ_n(x_i) for the transforms on one grid.
class SpectralGrid {
 public:
  SpectralGrid(SymmetrizedBasis basis, QuadratureRule rule, int dim, int truncation);

  const SymmetrizedBasis& basis() const { return basis_; }
  const QuadratureRule& rule() const { return rule_; }
  int dim() const { return dim_; }
  int truncation() const { return truncation_; }
  Box box() const { return Box(dim_, truncation_); }

  // ⟨f, Φ_n⟩_μ for n in {0..N}^d.
  CoeffVector analyze(const GridFunction& f) const;
  GridFunction synthesize(const CoeffVector& coeffs) const;
  GridFunction sample(const std::function<double(std::span<const double>)>& f) const;

 private:
  SymmetrizedBasis basis_;
  QuadratureRule rule_;
  int dim_;
  int truncation_;
  std::vector<double> matrix_;  // (N+1) x size, row-major
};

CoeffVector analyze(const SymmetrizedBasis& basis, const GridFunction& f, int truncation);
// Σ c_n Φ_n at arbitrary points of X_SYM^d.
std::vector<double> synthesize(const SymmetrizedBasis& basis, const CoeffVector& coeffs,
                               const std::vector<std::vector<double>>& points);

// Shortest decimal string that reads back to the same double.
std::string format_double(double v);

}  // namespace symconj
