#pragma once

// Product structure on 𝕏 = X_SYM^d: multi-indices over the truncation box
// {0..N}^d, dense coefficient vectors, and the distinct-level table used for
// the spectral projections.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "symconj/symmetrization.hpp"

namespace symconj {

class MultiIndex {
 public:
  MultiIndex() = default;
  MultiIndex(std::initializer_list<int> components) : n_(components) {}
  explicit MultiIndex(std::vector<int> components) : n_(std::move(components)) {}

  static MultiIndex zero(int dim) { return MultiIndex(std::vector<int>(static_cast<std::size_t>(dim), 0)); }
  static MultiIndex unit(int dim, int axis);

  int dim() const { return static_cast<int>(n_.size()); }
  int operator[](int j) const { return n_[static_cast<std::size_t>(j)]; }
  int& operator[](int j) { return n_[static_cast<std::size_t>(j)]; }
  // |n| = n_1 + ... + n_d
  int order() const;
  bool is_zero() const { return order() == 0; }
  const std::vector<int>& components() const { return n_; }

  std::string str() const;

  auto operator<=>(const MultiIndex&) const = default;

 private:
  std::vector<int> n_;
};

// All multi-indices of dimension d with |l| = order, in lexicographic order.
std::vector<MultiIndex> multi_indices_of_order(int dim, int order);

// The truncation box {0..N}^d with lexicographic flattening (first axis most
// significant).
class Box {
 public:
  Box(int dim, int truncation);

  int dim() const { return dim_; }
  int truncation() const { return truncation_; }
  int extent() const { return truncation_ + 1; }
  std::size_t size() const { return size_; }
  // Distance in the flat array between neighbours along `axis`.
  std::size_t stride(int axis) const { return strides_[static_cast<std::size_t>(axis)]; }

  std::size_t flatten(const MultiIndex& n) const;
  MultiIndex unflatten(std::size_t flat) const;
  // Component `axis` of the multi-index at position `flat`.
  int component(std::size_t flat, int axis) const;
  bool contains(const MultiIndex& n) const;

  bool operator==(const Box& o) const { return dim_ == o.dim_ && truncation_ == o.truncation_; }

 private:
  int dim_;
  int truncation_;
  std::size_t size_;
  std::vector<std::size_t> strides_;
};

// Truncated expansion coefficients ⟨f, Φ_n⟩_μ over a box.
class CoeffVector {
 public:
  CoeffVector(FamilySpec fam, Box box) : fam_(fam), box_(box), data_(box.size(), 0.0) {}

  static CoeffVector basis_vector(FamilySpec fam, Box box, const MultiIndex& n);

  const FamilySpec& family() const { return fam_; }
  const Box& box() const { return box_; }
  int dim() const { return box_.dim(); }
  std::size_t size() const { return data_.size(); }

  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }
  double& at(const MultiIndex& n) { return data_[box_.flatten(n)]; }
  double at(const MultiIndex& n) const { return data_[box_.flatten(n)]; }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  double norm() const;
  double dot(const CoeffVector& o) const;
  // max_n |a_n - b_n|
  double max_abs_diff(const CoeffVector& o) const;

  CoeffVector& operator+=(const CoeffVector& o);
  CoeffVector& operator-=(const CoeffVector& o);
  CoeffVector& operator*=(double s);

  // Throws std::invalid_argument unless family and box agree.
  void require_compatible(const CoeffVector& o) const;

 private:
  FamilySpec fam_;
  Box box_;
  std::vector<double> data_;
};

CoeffVector operator+(CoeffVector a, const CoeffVector& b);
CoeffVector operator-(CoeffVector a, const CoeffVector& b);
CoeffVector operator*(double s, CoeffVector a);

// Π_i Φ_{n_i}(x_i)
double eval_Phi_multi(const SymmetrizedBasis& basis, const MultiIndex& n, std::span<const double> x);
// Σ_i λ_⟨n_i⟩
double lambda_multi(const SymmetrizedBasis& basis, const MultiIndex& n);
// Φ_n is a genuine basis member (no Φ_0 factor under the sine convention).
bool is_member(const SymmetrizedBasis& basis, const MultiIndex& n);

class LevelTable {
 public:
  struct Level {
    double value;
    std::vector<std::size_t> members;  // flat indices, ascending
  };

  const Box& box() const { return box_; }
  std::size_t count() const { return levels_.size(); }
  const Level& level(std::size_t m) const { return levels_.at(m); }
  const std::vector<Level>& levels() const { return levels_; }
  // Level of a flat index, or -1 for indices outside the basis.
  int level_of(std::size_t flat) const { return level_of_[flat]; }
  // λ_⟨n⟩ for every flat index of the box.
  const std::vector<double>& eigenvalues() const { return lambda_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  friend LevelTable build_levels(const SymmetrizedBasis& basis, int truncation, int dim);
  explicit LevelTable(Box box) : box_(box) {}

  Box box_;
  std::vector<Level> levels_;
  std::vector<int> level_of_;
  std::vector<double> lambda_;
  std::vector<std::string> warnings_;
};

LevelTable build_levels(const SymmetrizedBasis& basis, int truncation, int dim);

// 𝒫_m: keeps the coefficients of level m, zeroes the rest.
CoeffVector project_level(const LevelTable& table, std::size_t m, const CoeffVector& coeffs);

}  // namespace symconj
