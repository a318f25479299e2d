#include "symconj/operators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace symconj {

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

void check_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("Poisson time t must be finite and nonnegative");
}

// Applies `line_map` to every line of a (extent)^dim array along `axis`.
template <typename T, typename LineMap>
void map_axis(std::vector<T>& data, int dim, int extent, int axis, LineMap line_map) {
  std::size_t stride = 1;
  for (int j = dim - 1; j > axis; --j) stride *= static_cast<std::size_t>(extent);
  const std::size_t block = stride * static_cast<std::size_t>(extent);
  std::vector<T> line(static_cast<std::size_t>(extent));
  for (std::size_t outer = 0; outer < data.size(); outer += block) {
    for (std::size_t inner = 0; inner < stride; ++inner) {
      const std::size_t base = outer + inner;
      for (int m = 0; m < extent; ++m) line[static_cast<std::size_t>(m)] = data[base + static_cast<std::size_t>(m) * stride];
      const std::vector<T> mapped = line_map(line);
      for (int m = 0; m < extent; ++m) data[base + static_cast<std::size_t>(m) * stride] = mapped[static_cast<std::size_t>(m)];
    }
  }
}

}  // namespace

OperatorEngine::OperatorEngine(FamilySpec fam, int dim, int truncation, EngineOptions options)
    : basis_(fam),
      levels_(build_levels(basis_, truncation + (truncation % 2), dim)),
      options_(options),
      A_(dim * fam.a()),
      raised_(truncation % 2 != 0) {
  member_.resize(box().size());
  for (std::size_t i = 0; i < box().size(); ++i) member_[i] = levels_.level_of(i) >= 0;
}

void OperatorEngine::require_own(const CoeffVector& f) const {
  if (!(f.family() == family()) || !(f.box() == box()))
    throw std::invalid_argument("coefficient vector does not belong to this engine");
}

template <typename Multiplier>
CoeffVector OperatorEngine::apply_multiplier(const CoeffVector& f, Multiplier m) const {
  require_own(f);
  CoeffVector out = zeros();
  for (std::size_t i = 0; i < f.size(); ++i)
    if (member_[i] && f[i] != 0.0) out[i] = m(lambda(i)) * f[i];
  return out;
}

CoeffVector OperatorEngine::restrict_to_basis(const CoeffVector& f) const {
  return apply_multiplier(f, [](double) { return 1.0; });
}

CoeffVector OperatorEngine::pi0(const CoeffVector& f) const {
  return apply_multiplier(f, [](double lam) { return lam == 0.0 ? 0.0 : 1.0; });
}

CoeffVector OperatorEngine::frac_power(double s, const CoeffVector& f) const {
  if (s <= 0.0) return apply_multiplier(f, [s](double lam) { return lam == 0.0 ? 0.0 : std::pow(lam, s); });
  return apply_multiplier(f, [s](double lam) { return std::pow(lam, s); });
}

CoeffVector OperatorEngine::apply_Dj(int axis, const CoeffVector& f) const {
  require_own(f);
  if (axis < 0 || axis >= dim()) throw std::invalid_argument("axis out of range");
  const std::size_t stride = box().stride(axis);
  CoeffVector out = zeros();
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0.0 || !member_[i]) continue;
    const int nj = box().component(i, axis);
    if (nj == 0) continue;  // DΦ_0 = -√(λ_0 - a) Φ_{-1} = 0
    const double amp = std::sqrt(basis_.gap(nj));
    if (nj % 2 == 0) {
      out[i - stride] -= amp * f[i];
    } else {
      out[i + stride] += (options_.ladder == LadderSign::Standard ? amp : -amp) * f[i];
    }
  }
  return out;
}

CoeffVector OperatorEngine::riesz(const MultiIndex& l, const CoeffVector& f) const {
  if (l.dim() != dim()) throw std::invalid_argument("Riesz multi-index has wrong dimension");
  if (l.is_zero()) throw std::invalid_argument("Riesz transform needs a nonzero multi-index");
  for (int j = 0; j < dim(); ++j)
    if (l[j] < 0) throw std::invalid_argument("Riesz multi-index must be nonnegative");
  CoeffVector g = frac_power(-0.5 * l.order(), f);
  for (int j = 0; j < dim(); ++j)
    for (int r = 0; r < l[j]; ++r) g = apply_Dj(j, g);
  return g;
}

double OperatorEngine::riesz_norm_map(int order, const CoeffVector& f) const {
  if (order < 1) throw std::invalid_argument("Riesz order must be at least 1");
  double sq = 0.0;
  for (const MultiIndex& l : multi_indices_of_order(dim(), order)) {
    const double n = riesz(l, f).norm();
    sq += n * n;
  }
  return std::sqrt(sq);
}

CoeffVector OperatorEngine::poisson(double t, const CoeffVector& f) const {
  check_time(t);
  return apply_multiplier(f, [t](double lam) { return std::exp(-t * std::sqrt(lam)); });
}

CoeffVector OperatorEngine::poisson_dt(double t, const CoeffVector& f) const {
  check_time(t);
  return apply_multiplier(f, [t](double lam) {
    const double r = std::sqrt(lam);
    return -r * std::exp(-t * r);
  });
}

CoeffVector OperatorEngine::conjugate_poisson(int axis, double t, const CoeffVector& f) const {
  check_time(t);
  return poisson(t, riesz(MultiIndex::unit(dim(), axis), f));
}

CoeffVector OperatorEngine::conjugate_poisson_dt(int axis, double t, const CoeffVector& f) const {
  check_time(t);
  return poisson_dt(t, riesz(MultiIndex::unit(dim(), axis), f));
}

CoeffVector OperatorEngine::riesz_square_sum(const CoeffVector& f) const {
  CoeffVector sum = zeros();
  for (int j = 0; j < dim(); ++j) {
    MultiIndex l = MultiIndex::zero(dim());
    l[j] = 2;
    sum += riesz(l, f);
  }
  return sum;
}

CoeffVector OperatorEngine::project_level(std::size_t m, const CoeffVector& f) const {
  require_own(f);
  return symconj::project_level(levels_, m, f);
}

InitialExpansion OperatorEngine::projected_derivative(const MultiIndex& n, const CoeffVector& f) const {
  const Box ibox = initial_box();
  if (!(f.family() == family()) || !(f.box() == ibox))
    throw std::invalid_argument("initial expansion must live on the box {0..N/2}^d of this engine");
  if (n.dim() != dim()) throw std::invalid_argument("derivative multi-index has wrong dimension");

  // Even extension: φ_k = √2 Φ_{2k} on each axis. The 2^{d/2} factors of
  // extension and restriction cancel, so coefficients carry over directly.
  CoeffVector g = zeros();
  for (std::size_t i = 0; i < ibox.size(); ++i) {
    if (f[i] == 0.0) continue;
    MultiIndex k = ibox.unflatten(i);
    for (int j = 0; j < dim(); ++j) k[j] *= 2;
    g.at(k) = f[i];
  }
  g = restrict_to_basis(g);
  int flips = 0;
  for (int j = 0; j < dim(); ++j) {
    for (int r = 0; r < n[j]; ++r) g = apply_Dj(j, g);
    flips += n[j] / 2;
  }
  // On odd functions D = -δ*, so D^n and the alternating product differ by (-1)^{⌊n/2⌋} per axis.
  const double sign = flips % 2 == 0 ? 1.0 : -1.0;

  InitialExpansion out{CoeffVector(family(), ibox), std::vector<int>(static_cast<std::size_t>(dim()))};
  for (int j = 0; j < dim(); ++j) out.parity[static_cast<std::size_t>(j)] = n[j] % 2;
  for (std::size_t i = 0; i < ibox.size(); ++i) {
    MultiIndex k = ibox.unflatten(i);
    bool valid = true;
    for (int j = 0; j < dim(); ++j) {
      k[j] = 2 * k[j] - out.parity[static_cast<std::size_t>(j)];
      if (k[j] < 0) valid = false;
    }
    if (valid) out.coeffs[i] = sign * g.at(k);
  }
  return out;
}

PsiCoeffVector::PsiCoeffVector(int dim, int half_width) : dim_(dim), half_width_(half_width) {
  if (dim < 1 || half_width < 0) throw std::invalid_argument("invalid Psi coefficient shape");
  std::size_t n = 1;
  for (int j = 0; j < dim; ++j) n *= static_cast<std::size_t>(2 * half_width + 1);
  data_.assign(n, {0.0, 0.0});
}

std::size_t PsiCoeffVector::flatten(const std::vector<int>& n) const {
  if (static_cast<int>(n.size()) != dim_) throw std::invalid_argument("Psi multi-index has wrong dimension");
  std::size_t flat = 0;
  for (int v : n) {
    if (v < -half_width_ || v > half_width_) throw std::out_of_range("Psi multi-index outside truncation");
    flat = flat * static_cast<std::size_t>(2 * half_width_ + 1) + static_cast<std::size_t>(v + half_width_);
  }
  return flat;
}

std::vector<int> PsiCoeffVector::unflatten(std::size_t flat) const {
  const auto ext = static_cast<std::size_t>(2 * half_width_ + 1);
  std::vector<int> n(static_cast<std::size_t>(dim_));
  for (int j = dim_ - 1; j >= 0; --j) {
    n[static_cast<std::size_t>(j)] = static_cast<int>(flat % ext) - half_width_;
    flat /= ext;
  }
  return n;
}

PsiCoeffVector to_psi(const OperatorEngine& engine, const CoeffVector& f) {
  const int K = engine.truncation() / 2;
  const int ext = 2 * K + 1;
  const CoeffVector r = engine.restrict_to_basis(f);
  std::vector<std::complex<double>> data(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) data[i] = r[i];
  using C = std::complex<double>;
  for (int j = 0; j < engine.dim(); ++j) {
    // ⟨f, Ψ_n⟩ = (c_{2|n|} - i sgn(n) c_{2|n|-1}) / √2, ⟨f, Ψ_0⟩ = c_0
    map_axis(data, engine.dim(), ext, j, [K](const std::vector<C>& c) {
      std::vector<C> g(c.size());
      g[static_cast<std::size_t>(K)] = c[0];
      for (int k = 1; k <= K; ++k) {
        const C even = c[static_cast<std::size_t>(2 * k)];
        const C odd = c[static_cast<std::size_t>(2 * k - 1)];
        g[static_cast<std::size_t>(K + k)] = (even - C(0.0, 1.0) * odd) * kInvSqrt2;
        g[static_cast<std::size_t>(K - k)] = (even + C(0.0, 1.0) * odd) * kInvSqrt2;
      }
      return g;
    });
  }
  PsiCoeffVector out(engine.dim(), K);
  for (std::size_t i = 0; i < data.size(); ++i) out[i] = data[i];
  return out;
}

CoeffVector from_psi(const OperatorEngine& engine, const PsiCoeffVector& g) {
  const int K = engine.truncation() / 2;
  if (g.dim() != engine.dim() || g.half_width() != K) throw std::invalid_argument("Psi coefficients do not match engine");
  const int ext = 2 * K + 1;
  using C = std::complex<double>;
  std::vector<C> data(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) data[i] = g[i];
  for (int j = 0; j < engine.dim(); ++j) {
    map_axis(data, engine.dim(), ext, j, [K](const std::vector<C>& h) {
      std::vector<C> c(h.size());
      c[0] = h[static_cast<std::size_t>(K)];
      for (int k = 1; k <= K; ++k) {
        const C plus = h[static_cast<std::size_t>(K + k)];
        const C minus = h[static_cast<std::size_t>(K - k)];
        c[static_cast<std::size_t>(2 * k)] = (plus + minus) * kInvSqrt2;
        c[static_cast<std::size_t>(2 * k - 1)] = C(0.0, 1.0) * (plus - minus) * kInvSqrt2;
      }
      return c;
    });
  }
  CoeffVector out = engine.zeros();
  for (std::size_t i = 0; i < data.size(); ++i) out[i] = data[i].real();
  return engine.restrict_to_basis(out);
}

namespace {

// λ_{|n|} for a Ψ multi-index; zero-coefficient slots under the sine convention are flagged.
double psi_lambda(const OperatorEngine& engine, const std::vector<int>& n, bool& null) {
  double lam = 0.0;
  null = false;
  for (int v : n) {
    const int m = std::abs(v);
    lam += engine.basis().lambda(2 * m);
    if (engine.basis().is_null(2 * m)) null = true;
  }
  return lam;
}

}  // namespace

PsiCoeffVector psi_riesz(const OperatorEngine& engine, int axis, const PsiCoeffVector& g) {
  if (axis < 0 || axis >= engine.dim()) throw std::invalid_argument("axis out of range");
  PsiCoeffVector out(g.dim(), g.half_width());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const std::vector<int> n = g.unflatten(i);
    bool null = false;
    const double lam = psi_lambda(engine, n, null);
    const int nj = n[static_cast<std::size_t>(axis)];
    if (null || lam == 0.0 || nj == 0) continue;
    const double amp = std::sqrt(engine.basis().gap(2 * std::abs(nj)) / lam);
    out[i] = std::complex<double>(0.0, nj > 0 ? amp : -amp) * g[i];
  }
  return out;
}

PsiCoeffVector psi_poisson(const OperatorEngine& engine, double t, const PsiCoeffVector& g) {
  check_time(t);
  PsiCoeffVector out(g.dim(), g.half_width());
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool null = false;
    const double lam = psi_lambda(engine, g.unflatten(i), null);
    if (!null) out[i] = std::exp(-t * std::sqrt(lam)) * g[i];
  }
  return out;
}

}  // namespace symconj
