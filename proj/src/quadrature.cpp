#include "symconj/quadrature.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "symconj/gauss.hpp"

namespace symconj {

namespace {

struct HalfRule {
  std::vector<double> nodes;  // positive, ascending
  std::vector<double> weights;
};

HalfRule midpoint_half(int s) {
  HalfRule h;
  for (int i = 1; i <= s; ++i) {
    h.nodes.push_back((2 * i - 1) * std::numbers::pi / (2.0 * s));
    h.weights.push_back(1.0 / s);
  }
  return h;
}

HalfRule jacobi_half(double alpha, double beta, int s) {
  const GaussRule g = gauss_rule(JacobiRecurrence(alpha, beta), s, 1.0);
  HalfRule h;
  // cos θ descends as θ ascends.
  for (int i = s - 1; i >= 0; --i) {
    h.nodes.push_back(std::acos(g.nodes[static_cast<std::size_t>(i)]));
    h.weights.push_back(g.weights[static_cast<std::size_t>(i)]);
  }
  return h;
}

// Positive half of the full-line Gauss–Hermite rule with `size` nodes. With
// `function_weights` the weights are those of Hermite functions, W_i e^{x_i²}.
HalfRule hermite_half(int size, bool function_weights) {
  const HermiteRecurrence rc;
  const double p0 = std::pow(std::numbers::pi, -0.25);
  const GaussRule g = gauss_rule(rc, size, p0);
  HalfRule h;
  const int s = size / 2;
  for (int i = 0; i < s; ++i) {
    // Average the mirrored eigenvalues so the rule is exactly symmetric.
    const double x = 0.5 * (g.nodes[static_cast<std::size_t>(s + i)] - g.nodes[static_cast<std::size_t>(s - 1 - i)]);
    const std::vector<double> t = recurrence_table(rc, size, x, function_weights ? p0 * std::exp(-0.5 * x * x) : p0);
    double sum = 0.0;
    for (double v : t) sum += v * v;
    h.nodes.push_back(x);
    h.weights.push_back(1.0 / sum);
  }
  return h;
}

// Gauss–Laguerre in t = x² for t^α e^{-t} dt; each of ±√t_i carries half the
// function weight 1 / Σ ℒ_k(t_i)².
HalfRule laguerre_half(double alpha, int s) {
  const LaguerreRecurrence rc(alpha);
  const double p0 = std::exp(-0.5 * std::lgamma(alpha + 1.0));
  const GaussRule g = gauss_rule(rc, s, p0);
  HalfRule h;
  for (int i = 0; i < s; ++i) {
    const double t = g.nodes[static_cast<std::size_t>(i)];
    const std::vector<double> tab = recurrence_table(rc, s, t, p0 * std::exp(-0.5 * t));
    double sum = 0.0;
    for (double v : tab) sum += v * v;
    h.nodes.push_back(std::sqrt(t));
    h.weights.push_back(0.5 / sum);
  }
  return h;
}

// Multiplies the axis `axis` of a dense array with extents `ext` by the
// row-major matrix m (rows x ext[axis]).
std::vector<double> contract(const std::vector<double>& in, std::vector<int>& ext, int axis,
                             const std::vector<double>& m, int rows) {
  std::size_t outer = 1, inner = 1;
  for (int j = 0; j < axis; ++j) outer *= static_cast<std::size_t>(ext[static_cast<std::size_t>(j)]);
  for (std::size_t j = static_cast<std::size_t>(axis) + 1; j < ext.size(); ++j) inner *= static_cast<std::size_t>(ext[j]);
  const auto cols = static_cast<std::size_t>(ext[static_cast<std::size_t>(axis)]);
  const auto r = static_cast<std::size_t>(rows);
  std::vector<double> out(outer * r * inner, 0.0);
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t row = 0; row < r; ++row) {
      double* dst = &out[(o * r + row) * inner];
      for (std::size_t c = 0; c < cols; ++c) {
        const double mv = m[row * cols + c];
        if (mv == 0.0) continue;
        const double* src = &in[(o * cols + c) * inner];
        for (std::size_t k = 0; k < inner; ++k) dst[k] += mv * src[k];
      }
    }
  ext[static_cast<std::size_t>(axis)] = rows;
  return out;
}

bool same_node(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

}  // namespace

QuadratureRule::QuadratureRule(FamilySpec fam, std::vector<double> nodes, std::vector<double> weights)
    : fam_(fam), nodes_(std::move(nodes)), weights_(std::move(weights)) {
  if (nodes_.size() != weights_.size()) throw std::invalid_argument("node and weight counts differ");
}

QuadratureRule build_rule(const FamilySpec& fam, int size) {
  if (size < 2 || size % 2 != 0)
    throw std::invalid_argument("quadrature size must be even and at least 2 (x = 0 cannot be a node)");
  const int s = size / 2;
  HalfRule h;
  switch (fam.kind()) {
    case FamilyKind::Trigonometric:
    case FamilyKind::SineAugmented:
      h = midpoint_half(s);
      break;
    case FamilyKind::JacobiTrig:
      h = jacobi_half(fam.alpha(), fam.beta(), s);
      break;
    case FamilyKind::HermiteEven:
      h = hermite_half(size, true);
      break;
    case FamilyKind::OrnsteinUhlenbeckEven:
      h = hermite_half(size, false);
      break;
    case FamilyKind::LaguerreConv:
      h = laguerre_half(fam.alpha(), s);
      break;
  }
  std::vector<double> nodes, weights;
  for (int i = s - 1; i >= 0; --i) {
    nodes.push_back(-h.nodes[static_cast<std::size_t>(i)]);
    weights.push_back(h.weights[static_cast<std::size_t>(i)]);
  }
  nodes.insert(nodes.end(), h.nodes.begin(), h.nodes.end());
  weights.insert(weights.end(), h.weights.begin(), h.weights.end());
  return QuadratureRule(fam, std::move(nodes), std::move(weights));
}

GridFunction::GridFunction(QuadratureRule rule, int dim) : rule_(std::move(rule)), dim_(dim) {
  if (dim < 1) throw std::invalid_argument("dimension must be at least 1");
  std::size_t n = 1;
  for (int j = 0; j < dim; ++j) n *= static_cast<std::size_t>(rule_.size());
  values_.assign(n, 0.0);
}

GridFunction GridFunction::sample(QuadratureRule rule, int dim,
                                  const std::function<double(std::span<const double>)>& f) {
  GridFunction g(std::move(rule), dim);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const std::vector<double> x = g.point(i);
    g.values_[i] = f(x);
  }
  return g;
}

int GridFunction::node_index(std::size_t flat, int axis) const {
  const auto s = static_cast<std::size_t>(rule_.size());
  for (int j = dim_ - 1; j > axis; --j) flat /= s;
  return static_cast<int>(flat % s);
}

std::vector<double> GridFunction::point(std::size_t flat) const {
  std::vector<double> x(static_cast<std::size_t>(dim_));
  for (int j = 0; j < dim_; ++j) x[static_cast<std::size_t>(j)] = rule_.nodes()[static_cast<std::size_t>(node_index(flat, j))];
  return x;
}

double GridFunction::weight(std::size_t flat) const {
  double w = 1.0;
  for (int j = 0; j < dim_; ++j) w *= rule_.weights()[static_cast<std::size_t>(node_index(flat, j))];
  return w;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void GridFunction::write_csv(std::ostream& os) const {
  for (int j = 0; j < dim_; ++j) os << 'x' << (j + 1) << ',';
  os << "value\n";
  for (std::size_t i = 0; i < size(); ++i) {
    for (int j = 0; j < dim_; ++j)
      os << format_double(rule_.nodes()[static_cast<std::size_t>(node_index(i, j))]) << ',';
    os << format_double(values_[i]) << '\n';
  }
}

GridFunction GridFunction::read_csv(std::istream& is, QuadratureRule rule, int dim) {
  GridFunction g(std::move(rule), dim);
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("empty CSV input");
  std::size_t row = 0;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (row >= g.size()) throw std::invalid_argument("CSV has more rows than grid points");
    std::vector<double> fields;
    std::size_t start = 0;
    while (start <= line.size()) {
      const std::size_t end = std::min(line.find(',', start), line.size());
      double v = 0.0;
      const auto res = std::from_chars(line.data() + start, line.data() + end, v);
      if (res.ec != std::errc() || res.ptr != line.data() + end)
        throw std::invalid_argument("malformed number in CSV row " + std::to_string(row + 1));
      fields.push_back(v);
      start = end + 1;
    }
    if (fields.size() != static_cast<std::size_t>(dim) + 1)
      throw std::invalid_argument("CSV row " + std::to_string(row + 1) + " has the wrong number of columns");
    const std::vector<double> x = g.point(row);
    for (int j = 0; j < dim; ++j)
      if (!same_node(fields[static_cast<std::size_t>(j)], x[static_cast<std::size_t>(j)]))
        throw std::invalid_argument("CSV row " + std::to_string(row + 1) + " is not on the quadrature grid");
    g.values_[row] = fields.back();
    ++row;
  }
  if (row != g.size()) throw std::invalid_argument("CSV has fewer rows than grid points");
  return g;
}

double inner_product(const GridFunction& f, const GridFunction& g) {
  if (!(f.rule() == g.rule()) || f.dim() != g.dim()) throw std::invalid_argument("grid functions live on different rules");
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f.weight(i) * f[i] * g[i];
  return s;
}

SpectralGrid::SpectralGrid(SymmetrizedBasis basis, QuadratureRule rule, int dim, int truncation)
    : basis_(std::move(basis)), rule_(std::move(rule)), dim_(dim), truncation_(truncation) {
  if (!(rule_.family() == basis_.family())) throw std::invalid_argument("rule and basis belong to different families");
  if (dim < 1 || truncation < 0) throw std::invalid_argument("invalid dimension or truncation");
  if (rule_.size() < minimum_rule_size(truncation))
    throw std::invalid_argument("quadrature size " + std::to_string(rule_.size()) + " is below 2N+16 = " +
                                std::to_string(minimum_rule_size(truncation)));
  const auto s = static_cast<std::size_t>(rule_.size());
  matrix_.resize(static_cast<std::size_t>(truncation + 1) * s);
  for (int n = 0; n <= truncation; ++n)
    for (std::size_t i = 0; i < s; ++i) matrix_[static_cast<std::size_t>(n) * s + i] = basis_.eval_Phi(n, rule_.nodes()[i]);
}

CoeffVector SpectralGrid::analyze(const GridFunction& f) const {
  if (!(f.rule() == rule_) || f.dim() != dim_) throw std::invalid_argument("grid function does not match the spectral grid");
  const auto s = static_cast<std::size_t>(rule_.size());
  std::vector<double> m(matrix_.size());
  for (std::size_t r = 0; r < m.size(); ++r) m[r] = matrix_[r] * rule_.weights()[r % s];
  std::vector<int> ext(static_cast<std::size_t>(dim_), rule_.size());
  std::vector<double> data(f.values().begin(), f.values().end());
  for (int j = 0; j < dim_; ++j) data = contract(data, ext, j, m, truncation_ + 1);
  CoeffVector out(basis_.family(), box());
  for (std::size_t i = 0; i < data.size(); ++i) out[i] = data[i];
  return out;
}

GridFunction SpectralGrid::synthesize(const CoeffVector& coeffs) const {
  if (!(coeffs.box() == box()) || !(coeffs.family() == basis_.family()))
    throw std::invalid_argument("coefficients do not match the spectral grid");
  const auto s = static_cast<std::size_t>(rule_.size());
  const auto n = static_cast<std::size_t>(truncation_ + 1);
  std::vector<double> mt(matrix_.size());
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i = 0; i < s; ++i) mt[i * n + r] = matrix_[r * s + i];
  std::vector<int> ext(static_cast<std::size_t>(dim_), truncation_ + 1);
  std::vector<double> data(coeffs.values().begin(), coeffs.values().end());
  for (int j = 0; j < dim_; ++j) data = contract(data, ext, j, mt, rule_.size());
  GridFunction g(rule_, dim_);
  for (std::size_t i = 0; i < data.size(); ++i) g[i] = data[i];
  return g;
}

GridFunction SpectralGrid::sample(const std::function<double(std::span<const double>)>& f) const {
  return GridFunction::sample(rule_, dim_, f);
}

CoeffVector analyze(const SymmetrizedBasis& basis, const GridFunction& f, int truncation) {
  return SpectralGrid(basis, f.rule(), f.dim(), truncation).analyze(f);
}

std::vector<double> synthesize(const SymmetrizedBasis& basis, const CoeffVector& coeffs,
                               const std::vector<std::vector<double>>& points) {
  const Box& box = coeffs.box();
  const int d = box.dim();
  const auto e = static_cast<std::size_t>(box.extent());
  std::vector<double> out;
  out.reserve(points.size());
  std::vector<double> phi(static_cast<std::size_t>(d) * e);
  for (const auto& x : points) {
    if (static_cast<int>(x.size()) != d) throw std::invalid_argument("point has the wrong dimension");
    for (int j = 0; j < d; ++j)
      for (std::size_t n = 0; n < e; ++n)
        phi[static_cast<std::size_t>(j) * e + n] = basis.eval_Phi(static_cast<int>(n), x[static_cast<std::size_t>(j)]);
    double v = 0.0;
    for (std::size_t i = 0; i < box.size(); ++i) {
      if (coeffs[i] == 0.0) continue;
      double term = coeffs[i];
      for (int j = 0; j < d; ++j) term *= phi[static_cast<std::size_t>(j) * e + static_cast<std::size_t>(box.component(i, j))];
      v += term;
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace symconj
