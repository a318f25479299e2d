#include "symconj/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace symconj {

MultiIndex MultiIndex::unit(int dim, int axis) {
  if (axis < 0 || axis >= dim) throw std::invalid_argument("axis out of range");
  MultiIndex e = zero(dim);
  e[axis] = 1;
  return e;
}

int MultiIndex::order() const { return std::accumulate(n_.begin(), n_.end(), 0); }

std::string MultiIndex::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < n_.size(); ++i) os << (i ? "," : "") << n_[i];
  os << ')';
  return os.str();
}

namespace {

void compositions(int dim, int remaining, std::vector<int>& cur, std::vector<MultiIndex>& out) {
  const auto pos = static_cast<int>(cur.size());
  if (pos == dim - 1) {
    cur.push_back(remaining);
    out.emplace_back(cur);
    cur.pop_back();
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    cur.push_back(v);
    compositions(dim, remaining - v, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<MultiIndex> multi_indices_of_order(int dim, int order) {
  if (dim < 1 || order < 0) throw std::invalid_argument("invalid dimension or order");
  std::vector<MultiIndex> out;
  std::vector<int> cur;
  compositions(dim, order, cur, out);
  return out;
}

Box::Box(int dim, int truncation) : dim_(dim), truncation_(truncation) {
  if (dim < 1) throw std::invalid_argument("dimension must be at least 1");
  if (truncation < 0) throw std::invalid_argument("truncation must be nonnegative");
  strides_.assign(static_cast<std::size_t>(dim), 1);
  std::size_t s = 1;
  for (int j = dim - 1; j >= 0; --j) {
    strides_[static_cast<std::size_t>(j)] = s;
    s *= static_cast<std::size_t>(extent());
  }
  size_ = s;
}

std::size_t Box::flatten(const MultiIndex& n) const {
  if (!contains(n)) throw std::out_of_range("multi-index " + n.str() + " outside truncation box");
  std::size_t flat = 0;
  for (int j = 0; j < dim_; ++j) flat += static_cast<std::size_t>(n[j]) * strides_[static_cast<std::size_t>(j)];
  return flat;
}

MultiIndex Box::unflatten(std::size_t flat) const {
  std::vector<int> c(static_cast<std::size_t>(dim_));
  for (int j = 0; j < dim_; ++j) c[static_cast<std::size_t>(j)] = component(flat, j);
  return MultiIndex(std::move(c));
}

int Box::component(std::size_t flat, int axis) const {
  return static_cast<int>((flat / strides_[static_cast<std::size_t>(axis)]) % static_cast<std::size_t>(extent()));
}

bool Box::contains(const MultiIndex& n) const {
  if (n.dim() != dim_) return false;
  for (int j = 0; j < dim_; ++j)
    if (n[j] < 0 || n[j] > truncation_) return false;
  return true;
}

CoeffVector CoeffVector::basis_vector(FamilySpec fam, Box box, const MultiIndex& n) {
  CoeffVector v(fam, box);
  v.at(n) = 1.0;
  return v;
}

double CoeffVector::norm() const { return std::sqrt(dot(*this)); }

double CoeffVector::dot(const CoeffVector& o) const {
  require_compatible(o);
  return std::inner_product(data_.begin(), data_.end(), o.data_.begin(), 0.0);
}

double CoeffVector::max_abs_diff(const CoeffVector& o) const {
  require_compatible(o);
  double m = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i) m = std::max(m, std::abs(data_[i] - o.data_[i]));
  return m;
}

CoeffVector& CoeffVector::operator+=(const CoeffVector& o) {
  require_compatible(o);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

CoeffVector& CoeffVector::operator-=(const CoeffVector& o) {
  require_compatible(o);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

CoeffVector& CoeffVector::operator*=(double s) {
  for (auto& v : data_) v *= s;
  return *this;
}

void CoeffVector::require_compatible(const CoeffVector& o) const {
  if (!(fam_ == o.fam_) || !(box_ == o.box_))
    throw std::invalid_argument("coefficient vectors differ in family or truncation box");
}

CoeffVector operator+(CoeffVector a, const CoeffVector& b) { return a += b; }
CoeffVector operator-(CoeffVector a, const CoeffVector& b) { return a -= b; }
CoeffVector operator*(double s, CoeffVector a) { return a *= s; }

double eval_Phi_multi(const SymmetrizedBasis& basis, const MultiIndex& n, std::span<const double> x) {
  if (static_cast<int>(x.size()) != n.dim()) throw std::invalid_argument("point and multi-index dimensions differ");
  double v = 1.0;
  for (int j = 0; j < n.dim(); ++j) v *= basis.eval_Phi(n[j], x[static_cast<std::size_t>(j)]);
  return v;
}

double lambda_multi(const SymmetrizedBasis& basis, const MultiIndex& n) {
  double s = 0.0;
  for (int j = 0; j < n.dim(); ++j) s += basis.lambda(n[j]);
  return s;
}

bool is_member(const SymmetrizedBasis& basis, const MultiIndex& n) {
  for (int j = 0; j < n.dim(); ++j)
    if (basis.is_null(n[j])) return false;
  return true;
}

LevelTable build_levels(const SymmetrizedBasis& basis, int truncation, int dim) {
  LevelTable table{Box(dim, truncation)};
  const Box& box = table.box_;
  const bool exact = basis.family().integer_spectrum();

  table.lambda_.resize(box.size());
  table.level_of_.assign(box.size(), -1);
  std::vector<std::size_t> order;
  order.reserve(box.size());
  for (std::size_t i = 0; i < box.size(); ++i) {
    const MultiIndex n = box.unflatten(i);
    table.lambda_[i] = lambda_multi(basis, n);
    if (is_member(basis, n)) order.push_back(i);
  }
  // Stable sort keeps lexicographic order inside each level.
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return table.lambda_[a] < table.lambda_[b]; });

  for (std::size_t i : order) {
    const double v = table.lambda_[i];
    bool same = false;
    if (!table.levels_.empty()) {
      const double ref = table.levels_.back().value;
      same = exact ? v == ref : std::abs(v - ref) <= 1e-12 * std::max(1.0, std::abs(ref));
      // Reassociated sums of equal eigenvalues may differ in the last bits; only
      // report merges of genuinely different values.
      if (same && std::abs(v - ref) > 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(ref))) {
        std::ostringstream os;
        os.precision(17);
        os << "near-degenerate levels merged: " << ref << " and " << v;
        table.warnings_.push_back(os.str());
      }
    }
    if (!same) table.levels_.push_back({v, {}});
    table.levels_.back().members.push_back(i);
    table.level_of_[i] = static_cast<int>(table.levels_.size() - 1);
  }
  for (auto& level : table.levels_) std::sort(level.members.begin(), level.members.end());
  return table;
}

CoeffVector project_level(const LevelTable& table, std::size_t m, const CoeffVector& coeffs) {
  if (m >= table.count()) throw std::out_of_range("level index out of range");
  if (!(coeffs.box() == table.box())) throw std::invalid_argument("coefficient box does not match level table");
  CoeffVector out(coeffs.family(), coeffs.box());
  for (std::size_t i : table.level(m).members) out[i] = coeffs[i];
  return out;
}

}  // namespace symconj
