#include "symconj/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <future>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace symconj {

namespace {

const std::map<std::string, double>& tolerance_table() {
  static const std::map<std::string, double> table{
      {"phi_orthonormality", 1e-10},
      {"psi_orthonormality", 1e-10},
      {"eigen_relation", 1e-8},
      {"parity_reduction", 1e-8},
      {"skew_symmetry_pointwise", 1e-9},
      {"skew_symmetry_spectral", 1e-9},
      {"spectral_pointwise_consistency", 1e-8},
      {"ladder_involution", 1e-13},
      {"level_partition", 1e-13},
      {"pi0_idempotence", 1e-13},
      {"semigroup_law", 1e-13},
      {"ladder_closed_form", 1e-13},
      {"riesz_closed_form", 1e-13},
      {"riesz_contraction", 1e-12},
      {"cauchy_riemann_i", 1e-12},
      {"cauchy_riemann_ii", 1e-12},
      {"cauchy_riemann_iii", 1e-12},
      {"harmonicity", 0.0},
      {"riesz_square_sum", 1e-12},
      {"complex_picture", 1e-12},
      {"sine_convention", 1e-10},
  };
  return table;
}

// Basis jets at the nodes of a one-dimensional rule, so that expansions can be
// handed to the pointwise operators as ordinary fields.
class NodeTable {
 public:
  NodeTable(const SymmetrizedBasis& basis, const QuadratureRule& rule, int nmax) : basis_(basis), rule_(rule) {
    const auto s = static_cast<std::size_t>(rule.size());
    jets_.resize(static_cast<std::size_t>(nmax + 1) * s);
    scale_.assign(s, 1.0);
    for (int n = 0; n <= nmax; ++n)
      for (std::size_t i = 0; i < s; ++i) {
        const Jet3 j = basis.Phi_jet(n, rule.nodes()[i]);
        jets_[static_cast<std::size_t>(n) * s + i] = j;
        scale_[i] = std::max(scale_[i], std::abs(j.value()));
      }
  }

  const Jet3& jet(int n, std::size_t i) const { return jets_[static_cast<std::size_t>(n) * rule_.nodes().size() + i]; }
  // max(1, max_n |Φ_n(x_i)|)
  double scale(std::size_t i) const { return scale_[i]; }

  ScalarField field(std::vector<double> coeffs) const {
    return [this, c = std::move(coeffs)](double x) {
      const auto& nodes = rule_.nodes();
      const auto it = std::lower_bound(nodes.begin(), nodes.end(), x);
      Jet3 sum(0.0);
      if (it != nodes.end() && *it == x) {
        const auto i = static_cast<std::size_t>(it - nodes.begin());
        for (std::size_t n = 0; n < c.size(); ++n)
          if (c[n] != 0.0) sum += c[n] * jet(static_cast<int>(n), i);
      } else {
        for (std::size_t n = 0; n < c.size(); ++n)
          if (c[n] != 0.0) sum += c[n] * basis_.Phi_jet(static_cast<int>(n), x);
      }
      return sum;
    };
  }

 private:
  const SymmetrizedBasis& basis_;
  const QuadratureRule& rule_;
  std::vector<Jet3> jets_;
  std::vector<double> scale_;
};

std::vector<double> random_coeffs(const SymmetrizedBasis& basis, int len, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::vector<double> c(static_cast<std::size_t>(len));
  double s = 0.0;
  for (int n = 0; n < len; ++n) {
    c[static_cast<std::size_t>(n)] = basis.is_null(n) ? 0.0 : gauss(rng);
    s += c[static_cast<std::size_t>(n)] * c[static_cast<std::size_t>(n)];
  }
  for (double& v : c) v /= std::sqrt(s);
  return c;
}

GridFunction field_on_grid(const QuadratureRule& rule, const ScalarField& f) {
  GridFunction g(rule, 1);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = f(rule.nodes()[i]).value();
  return g;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(3) << v;
  return os.str();
}

struct Context {
  Context(const SuiteConfig& cfg, OperatorEngine eng, QuadratureRule r)
      : config(cfg),
        engine(std::move(eng)),
        rule(std::move(r)),
        grid1(engine.basis(), rule, 1, engine.truncation()),
        table(engine.basis(), rule, 2 * engine.truncation()) {}

  const SuiteConfig& config;
  OperatorEngine engine;
  QuadratureRule rule;
  SpectralGrid grid1;
  NodeTable table;  // Φ_n up to 2N at the 1-d nodes
  std::mt19937_64 rng;

  int N() const { return engine.truncation(); }
  const SymmetrizedBasis& basis() const { return engine.basis(); }

  CoeffVector basis_vector(std::size_t flat) const {
    CoeffVector e = engine.zeros();
    e[flat] = 1.0;
    return e;
  }
  bool member(std::size_t flat) const { return engine.levels().level_of(flat) >= 0; }
};

struct Outcome {
  double defect = 0.0;
  std::string note;
};

// --- one-dimensional basis checks -----------------------------------------

Outcome phi_orthonormality(Context& c) {
  double defect = 0.0;
  for (int n = 0; n <= c.N(); ++n) {
    const GridFunction f = c.grid1.sample([&](std::span<const double> x) { return c.basis().eval_Phi(n, x[0]); });
    const CoeffVector coeffs = c.grid1.analyze(f);
    for (int m = 0; m <= c.N(); ++m) {
      const double expected = (m == n && !c.basis().is_null(n)) ? 1.0 : 0.0;
      defect = std::max(defect, std::abs(coeffs[static_cast<std::size_t>(m)] - expected));
    }
  }
  return {defect, "n, m <= " + std::to_string(c.N())};
}

Outcome psi_orthonormality(Context& c) {
  const int K = c.N() / 2;
  const auto& nodes = c.rule.nodes();
  const auto& w = c.rule.weights();
  std::vector<std::vector<std::complex<double>>> psi;
  for (int n = -K; n <= K; ++n) {
    std::vector<std::complex<double>> v(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) v[i] = c.basis().eval_Psi(n, nodes[i]);
    psi.push_back(std::move(v));
  }
  double defect = 0.0;
  for (int n = -K; n <= K; ++n)
    for (int m = -K; m <= K; ++m) {
      std::complex<double> s = 0.0;
      const auto& a = psi[static_cast<std::size_t>(n + K)];
      const auto& b = psi[static_cast<std::size_t>(m + K)];
      for (std::size_t i = 0; i < nodes.size(); ++i) s += w[i] * a[i] * std::conj(b[i]);
      const bool null = c.basis().is_null(2 * std::abs(n));
      const double expected = (n == m && !null) ? 1.0 : 0.0;
      defect = std::max(defect, std::abs(s - expected));
    }
  return {defect, "|n|, |m| <= " + std::to_string(K)};
}

Outcome eigen_relation(Context& c) {
  double defect = 0.0;
  for (int n = 0; n <= 2 * c.N(); ++n) {
    const double lam = c.basis().lambda(n);
    std::vector<double> e(static_cast<std::size_t>(n + 1), 0.0);
    e.back() = 1.0;
    const ScalarField f = c.table.field(e);
    for (std::size_t i = 0; i < c.rule.nodes().size(); ++i) {
      const double x = c.rule.nodes()[i];
      const double phi = c.table.jet(n, i).value();
      const double diff = apply_L_pointwise(c.basis(), f, x) - lam * phi;
      defect = std::max(defect, std::abs(diff) / (std::max(1.0, lam) * std::max(1.0, std::abs(phi))));
    }
  }
  return {defect, "n <= " + std::to_string(2 * c.N()) + ", defect / (max(1,λ) max(1,|Φ_n(x)|))"};
}

// 𝕃f = a f + δ*δ f on even f and a f + δδ* f = Lf + [δ,δ*] f on odd f (x > 0).
Outcome parity_reduction(Context& c) {
  const FamilySpec& fam = c.basis().family();
  const FamilySpec gen = fam.augmented() ? FamilySpec::trigonometric() : fam;
  double defect = 0.0;
  for (int n = 0; n <= 2 * c.N(); ++n) {
    if (c.basis().is_null(n)) continue;
    const double lam = c.basis().lambda(n);
    std::vector<double> e(static_cast<std::size_t>(n + 1), 0.0);
    e.back() = 1.0;
    const ScalarField f = c.table.field(e);
    for (std::size_t i = 0; i < c.rule.nodes().size(); ++i) {
      const double x = c.rule.nodes()[i];
      if (x <= 0.0) continue;
      const Jet3 fj = c.table.jet(n, i);
      const double lhs = apply_L_pointwise(c.basis(), f, x);
      const double af = fam.a() * fj.value();
      double rhs;
      double alt = 0.0;
      if (n % 2 == 0) {
        const Jet2 d = delta_apply_jet(gen, fj, x, DeltaSide::Delta);
        rhs = af + delta_apply_jet(gen, d, x, DeltaSide::DeltaStar).value();
        alt = rhs;
      } else {
        const Jet2 ds = delta_apply_jet(gen, fj, x, DeltaSide::DeltaStar);
        rhs = af + delta_apply_jet(gen, ds, x, DeltaSide::Delta).value();
        const Jet2 d = delta_apply_jet(gen, fj, x, DeltaSide::Delta);
        alt = af + delta_apply_jet(gen, d, x, DeltaSide::DeltaStar).value() + commutator(gen, x) * fj.value();
      }
      const double scale = std::max(1.0, lam) * std::max(1.0, std::abs(fj.value()));
      defect = std::max({defect, std::abs(lhs - rhs) / scale, std::abs(lhs - alt) / scale});
    }
  }
  return {defect, "basis functions n <= " + std::to_string(2 * c.N()) + ", x > 0 nodes"};
}

Outcome skew_symmetry_pointwise(Context& c) {
  double defect = 0.0;
  for (int p = 0; p < c.config.random_pairs; ++p) {
    // Support below N keeps Df inside the exactness range of the rule.
    const ScalarField f = c.table.field(random_coeffs(c.basis(), c.N(), c.rng));
    const ScalarField g = c.table.field(random_coeffs(c.basis(), c.N(), c.rng));
    GridFunction df(c.rule, 1), dg(c.rule, 1);
    for (std::size_t i = 0; i < df.size(); ++i) {
      df[i] = apply_D_pointwise(c.basis(), f, c.rule.nodes()[i]);
      dg[i] = apply_D_pointwise(c.basis(), g, c.rule.nodes()[i]);
    }
    const double s = inner_product(df, field_on_grid(c.rule, g)) + inner_product(field_on_grid(c.rule, f), dg);
    defect = std::max(defect, std::abs(s));
  }
  return {defect, std::to_string(c.config.random_pairs) + " random pairs, d = 1"};
}

Outcome skew_symmetry_spectral(Context& c) {
  const SpectralGrid grid(c.basis(), c.rule, c.engine.dim(), c.N());
  double defect = 0.0;
  for (int p = 0; p < c.config.random_pairs; ++p) {
    const CoeffVector f = random_unit_vector(c.engine, c.rng);
    const CoeffVector g = random_unit_vector(c.engine, c.rng);
    const GridFunction fs = grid.synthesize(f), gs = grid.synthesize(g);
    for (int j = 0; j < c.engine.dim(); ++j) {
      const double s = inner_product(grid.synthesize(c.engine.apply_Dj(j, f)), gs) +
                       inner_product(fs, grid.synthesize(c.engine.apply_Dj(j, g)));
      defect = std::max(defect, std::abs(s));
    }
  }
  return {defect, std::to_string(c.config.random_pairs) + " random pairs, every axis, quadrature inner product"};
}

Outcome spectral_pointwise_consistency(Context& c) {
  double defect = 0.0;
  const SpectralGrid& grid = c.grid1;
  for (int p = 0; p < c.config.random_pairs; ++p) {
    const std::vector<double> coeffs = random_coeffs(c.basis(), c.N(), c.rng);
    const std::vector<double> spectral = apply_D_spectral_1d(c.basis(), coeffs, c.config.ladder);
    CoeffVector dc(c.basis().family(), grid.box());
    for (std::size_t n = 0; n < spectral.size(); ++n) dc[n] = spectral[n];
    const GridFunction ds = grid.synthesize(dc);
    const ScalarField f = c.table.field(coeffs);
    for (std::size_t i = 0; i < ds.size(); ++i) {
      const double dp = apply_D_pointwise(c.basis(), f, c.rule.nodes()[i]);
      defect = std::max(defect, std::abs(dp - ds[i]) / c.table.scale(i));
    }
  }
  return {defect, "support n < N, defect / max(1, max_n |Φ_n(x)|)"};
}

Outcome ladder_involution(Context& c) {
  double defect = 0.0;
  for (int n = 0; n < c.N(); ++n) {
    if (c.basis().is_null(n)) continue;
    std::vector<double> e(static_cast<std::size_t>(c.N()), 0.0);
    e[static_cast<std::size_t>(n)] = 1.0;
    std::vector<double> d1 = apply_D_spectral_1d(c.basis(), e, c.config.ladder);
    d1.resize(static_cast<std::size_t>(c.N() + 1), 0.0);
    const std::vector<double> d2 = apply_D_spectral_1d(c.basis(), d1, c.config.ladder);
    const double gap = c.basis().gap(n);
    for (std::size_t m = 0; m < d2.size(); ++m) {
      const double expected = m == static_cast<std::size_t>(n) ? -gap : 0.0;
      defect = std::max(defect, std::abs(d2[m] - expected) / std::max(1.0, gap));
    }
  }
  return {defect, "D^2 Φ_n = -(λ_<n> - a) Φ_n, n < N"};
}

// --- level structure and semigroup ----------------------------------------

Outcome level_partition(Context& c) {
  const LevelTable& levels = c.engine.levels();
  const Box& box = c.engine.box();
  double defect = 0.0;
  std::string note;
  for (int r = 0; r < c.config.random_vectors; ++r) {
    const CoeffVector f = random_unit_vector(c.engine, c.rng);
    CoeffVector sum = c.engine.zeros();
    for (std::size_t m = 0; m < levels.count(); ++m) {
      const CoeffVector pm = c.engine.project_level(m, f);
      defect = std::max(defect, c.engine.project_level(m, pm).max_abs_diff(pm));
      sum += pm;
    }
    defect = std::max(defect, sum.max_abs_diff(c.engine.restrict_to_basis(f)));
  }
  // Levels strictly increase and the ladder preserves λ_<n>.
  for (std::size_t m = 1; m < levels.count(); ++m)
    if (!(levels.level(m).value > levels.level(m - 1).value)) defect = std::max(defect, 1.0);
  for (std::size_t i = 0; i < box.size(); ++i) {
    if (!c.member(i)) continue;
    for (int j = 0; j < box.dim(); ++j) {
      const int nj = box.component(i, j);
      if (nj == 0) continue;
      const std::size_t k = nj % 2 == 0 ? i - box.stride(j) : i + box.stride(j);
      if (k < box.size() && box.component(k, j) == nj - (nj % 2 == 0 ? 1 : -1) && c.member(k))
        defect = std::max(defect, std::abs(c.engine.lambda(i) - c.engine.lambda(k)));
    }
  }
  note = std::to_string(levels.count()) + " levels";
  if (!levels.warnings().empty()) note += ", " + std::to_string(levels.warnings().size()) + " merge warnings";
  return {defect, note};
}

Outcome pi0_idempotence(Context& c) {
  double defect = 0.0;
  for (int r = 0; r < c.config.random_vectors; ++r) {
    const CoeffVector f = random_unit_vector(c.engine, c.rng);
    const CoeffVector p = c.engine.pi0(f);
    defect = std::max(defect, c.engine.pi0(p).max_abs_diff(p));
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double expected = c.engine.lambda(i) == 0.0 ? 0.0 : f[i];
      defect = std::max(defect, std::abs(p[i] - expected));
    }
  }
  return {defect, "Π₀² = Π₀ and Π₀ zeroes exactly λ = 0"};
}

Outcome semigroup_law(Context& c) {
  double defect = 0.0;
  for (int r = 0; r < c.config.random_vectors; ++r) {
    const CoeffVector f = random_unit_vector(c.engine, c.rng);
    defect = std::max(defect, c.engine.poisson(0.0, f).max_abs_diff(f));
    for (double t : c.config.t_values)
      for (double s : c.config.t_values)
        defect = std::max(defect, c.engine.poisson(t, c.engine.poisson(s, f)).max_abs_diff(c.engine.poisson(t + s, f)));
  }
  return {defect, "P_t P_s = P_{t+s}, P_0 = Id"};
}

// --- ladder and Riesz transforms -------------------------------------------

std::vector<MultiIndex> orders_up_to(int dim, int max_order) {
  std::vector<MultiIndex> out;
  for (int k = 1; k <= max_order; ++k)
    for (const MultiIndex& l : multi_indices_of_order(dim, k)) out.push_back(l);
  return out;
}

CoeffVector term_vector(const OperatorEngine& engine, const LadderTerm& t) {
  CoeffVector v = engine.zeros();
  if (t.coefficient != 0.0) v.at(t.target) = t.coefficient;
  return v;
}

Outcome ladder_closed_form(Context& c) {
  const Box& box = c.engine.box();
  double defect = 0.0;
  double amplitude = 0.0;
  const auto ls = orders_up_to(box.dim(), 3);
  for (std::size_t i = 0; i < box.size(); ++i) {
    if (!c.member(i)) continue;
    const MultiIndex n = box.unflatten(i);
    for (const MultiIndex& l : ls) {
      CoeffVector v = c.basis_vector(i);
      for (int j = 0; j < box.dim(); ++j)
        for (int r = 0; r < l[j]; ++r) v = c.engine.apply_Dj(j, v);
      // Single-axis powers, composed.
      LadderTerm expected{n, 1.0};
      for (int j = 0; j < box.dim() && expected.coefficient != 0.0; ++j) {
        if (l[j] == 0) continue;
        const LadderTerm step = ladder_power(c.basis(), expected.target, j, l[j]);
        expected = {step.target, expected.coefficient * step.coefficient};
      }
      const double scale = std::max(1.0, std::abs(expected.coefficient));
      defect = std::max(defect, v.max_abs_diff(term_vector(c.engine, expected)) / scale);
      const LadderTerm cor = product_power(c.basis(), n, l, ProductSign::OneHalf);
      amplitude = std::max(amplitude, std::abs(std::abs(expected.coefficient) - std::abs(cor.coefficient)) / scale);
    }
  }
  return {std::max(defect, amplitude), "|l| <= 3, every basis vector; product form amplitude defect " + fmt(amplitude)};
}

Outcome riesz_closed_form(Context& c) {
  const Box& box = c.engine.box();
  double defect = 0.0;
  std::size_t literal_mismatch = 0, odd_count_mismatch = 0, total = 0;
  const auto ls = orders_up_to(box.dim(), 3);
  for (std::size_t i = 0; i < box.size(); ++i) {
    if (!c.member(i)) continue;
    const MultiIndex n = box.unflatten(i);
    const double lam = c.engine.lambda(i);
    for (const MultiIndex& l : ls) {
      const CoeffVector r = c.engine.riesz(l, c.basis_vector(i));
      LadderTerm expected = product_power(c.basis(), n, l, ProductSign::OneHalf);
      expected.coefficient = lam == 0.0 ? 0.0 : expected.coefficient * std::pow(lam, -0.5 * l.order());
      defect = std::max(defect, r.max_abs_diff(term_vector(c.engine, expected)));
      if (expected.coefficient == 0.0) continue;
      ++total;
      const LadderTerm literal = product_power(c.basis(), n, l, ProductSign::ThreeHalves);
      const bool differs = (literal.coefficient > 0) != (expected.coefficient > 0);
      int odd = 0;
      for (int j = 0; j < l.dim(); ++j) odd += l[j] % 2;
      literal_mismatch += differs ? 1 : 0;
      odd_count_mismatch += differs != (odd % 2 == 1) ? 1 : 0;
    }
  }
  // The h = 3/2 sign must differ from the ladder one exactly when ℓ has an
  // odd number of odd components.
  if (odd_count_mismatch != 0) defect = std::max(defect, 1.0);
  return {defect, "|l| <= 3; the (n+3/2) sign differs on " + std::to_string(literal_mismatch) + "/" +
                      std::to_string(total) + " terms, all with an odd number of odd l_j"};
}

Outcome riesz_contraction(Context& c) {
  double defect = 0.0;
  const auto ls = orders_up_to(c.engine.dim(), 4);
  for (int r = 0; r < c.config.random_vectors; ++r) {
    const CoeffVector f = random_unit_vector(c.engine, c.rng);
    const double norm = f.norm();
    for (const MultiIndex& l : ls) defect = std::max(defect, c.engine.riesz(l, f).norm() - norm);
    for (int order = 1; order <= 3; ++order) defect = std::max(defect, c.engine.riesz_norm_map(order, f) - norm);
  }
  return {std::max(defect, 0.0), std::to_string(c.config.random_vectors) + " random f, ‖R^l f‖ for |l| <= 4, norm map orders 1-3"};
}

// --- Cauchy–Riemann system --------------------------------------------------

template <typename Check>
double over_basis(Context& c, Check check) {
  double defect = 0.0;
  for (std::size_t i = 0; i < c.engine.box().size(); ++i) {
    if (!c.member(i) || c.engine.lambda(i) == 0.0) continue;
    const CoeffVector e = c.basis_vector(i);
    for (double t : c.config.t_values) defect = std::max(defect, check(e, t));
  }
  return defect;
}

Outcome cauchy_riemann_i(Context& c) {
  const int d = c.engine.dim();
  const double defect = over_basis(c, [&](const CoeffVector& e, double t) {
    double m = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        m = std::max(m, c.engine.apply_Dj(i, c.engine.conjugate_poisson(j, t, e))
                            .max_abs_diff(c.engine.apply_Dj(j, c.engine.conjugate_poisson(i, t, e))));
    return m;
  });
  return {defect, d == 1 ? "vacuous for d = 1" : "every basis vector, D_i U^j = D_j U^i"};
}

Outcome cauchy_riemann_ii(Context& c) {
  const double defect = over_basis(c, [&](const CoeffVector& e, double t) {
    double m = 0.0;
    for (int j = 0; j < c.engine.dim(); ++j) {
      CoeffVector s = c.engine.apply_Dj(j, c.engine.poisson(t, e));
      s += c.engine.conjugate_poisson_dt(j, t, e);
      m = std::max(m, s.max_abs_diff(c.engine.zeros()));
    }
    return m;
  });
  return {defect, "D_j P_t = -∂_t U^j, analytic t-derivative"};
}

Outcome cauchy_riemann_iii(Context& c) {
  const double defect = over_basis(c, [&](const CoeffVector& e, double t) {
    CoeffVector lhs = c.engine.zeros();
    for (int j = 0; j < c.engine.dim(); ++j) lhs += c.engine.apply_Dj(j, c.engine.conjugate_poisson(j, t, e));
    const CoeffVector corrected = e - c.engine.A() * c.engine.frac_power(-1.0, e);
    return lhs.max_abs_diff(c.engine.poisson_dt(t, corrected));
  });
  return {defect, "Σ D_j U^j = ∂_t P_t (f - A 𝔏^{-1} Π₀ f), A = " + fmt(c.engine.A())};
}

Outcome harmonicity(Context& c) {
  const double t = 1.0;
  const double hs[] = {0.05, 0.025, 0.0125};
  double min_order = 10.0;
  const int d = c.engine.dim();
  for (std::size_t i = 0; i < c.engine.box().size(); ++i) {
    if (!c.member(i) || c.engine.lambda(i) == 0.0) continue;
    const CoeffVector e = c.basis_vector(i);
    // P_t and every U_t^j
    for (int op = -1; op < d; ++op) {
      auto apply = [&](double s) { return op < 0 ? c.engine.poisson(s, e) : c.engine.conjugate_poisson(op, s, e); };
      double prev = -1.0;
      const CoeffVector lp = c.engine.laplacian(apply(t));
      for (double h : hs) {
        CoeffVector fd = apply(t + h) - 2.0 * apply(t) + apply(t - h);
        fd *= 1.0 / (h * h);
        const double def = fd.max_abs_diff(lp);
        if (prev > 0.0 && def > 1e-13) min_order = std::min(min_order, std::log2(prev / def));
        prev = def;
      }
    }
  }
  return {std::max(0.0, 1.9 - min_order), "t = 1, h = 0.05/0.025/0.0125, min observed order " + fmt(min_order) +
                                              " (defect = max(0, 1.9 - order))"};
}

Outcome riesz_square_sum(Context& c) {
  double defect = 0.0;
  auto check = [&](const CoeffVector& f) {
    const CoeffVector p = c.engine.pi0(f);
    const CoeffVector expected = c.engine.A() * c.engine.frac_power(-1.0, p) - p;
    defect = std::max(defect, c.engine.riesz_square_sum(p).max_abs_diff(expected));
  };
  for (std::size_t i = 0; i < c.engine.box().size(); ++i)
    if (c.member(i)) check(c.basis_vector(i));
  for (int r = 0; r < c.config.random_vectors; ++r) check(random_unit_vector(c.engine, c.rng));
  return {defect, "Σ R_j² = -Id + A 𝔏^{-1} on Π₀ range, A = " + fmt(c.engine.A())};
}

Outcome complex_picture(Context& c) {
  double defect = 0.0;
  for (int r = 0; r < c.config.random_vectors; ++r) {
    const CoeffVector f = random_unit_vector(c.engine, c.rng);
    const PsiCoeffVector g = to_psi(c.engine, f);
    defect = std::max(defect, from_psi(c.engine, g).max_abs_diff(f));
    for (int j = 0; j < c.engine.dim(); ++j)
      defect = std::max(defect, from_psi(c.engine, psi_riesz(c.engine, j, g))
                                    .max_abs_diff(c.engine.riesz(MultiIndex::unit(c.engine.dim(), j), f)));
    for (double t : c.config.t_values)
      defect = std::max(defect, from_psi(c.engine, psi_poisson(c.engine, t, g)).max_abs_diff(c.engine.poisson(t, f)));
  }
  // Pointwise: DΨ_n = i sgn(n) √(λ_|n| - a) Ψ_n on the 1-d nodes.
  const int K = c.N() / 2;
  for (int n = -K; n <= K; ++n) {
    if (c.basis().is_null(2 * std::abs(n))) continue;
    const int m = std::abs(n);
    const double sg = n > 0 ? 1.0 : (n < 0 ? -1.0 : 0.0);
    std::vector<double> re(static_cast<std::size_t>(2 * m + 1), 0.0), im(re.size(), 0.0);
    re[static_cast<std::size_t>(2 * m)] = n == 0 ? 1.0 : 1.0 / std::sqrt(2.0);
    if (m > 0) im[static_cast<std::size_t>(2 * m - 1)] = sg / std::sqrt(2.0);
    const ScalarField fr = c.table.field(re), fi = c.table.field(im);
    const double amp = sg * std::sqrt(c.basis().gap(2 * m));
    for (std::size_t i = 0; i < c.rule.nodes().size(); ++i) {
      const double x = c.rule.nodes()[i];
      const std::complex<double> lhs(apply_D_pointwise(c.basis(), fr, x), apply_D_pointwise(c.basis(), fi, x));
      const std::complex<double> rhs = std::complex<double>(0.0, amp) * c.basis().eval_Psi(n, x);
      defect = std::max(defect, std::abs(lhs - rhs) / (std::max(1.0, std::abs(amp)) * c.table.scale(i)));
    }
  }
  return {defect, "Ψ-basis multipliers vs Φ-basis operators; DΨ_n pointwise"};
}

Outcome sine_convention(Context& c) {
  double defect = 0.0;
  std::string note;
  for (double x : c.rule.nodes()) defect = std::max(defect, std::abs(c.basis().eval_Phi(0, x)));
  // No multi-index with a zero component may appear among the levels.
  const Box& box = c.engine.box();
  for (std::size_t i = 0; i < box.size(); ++i) {
    bool has_zero = false;
    for (int j = 0; j < box.dim(); ++j) has_zero = has_zero || box.component(i, j) == 0;
    if (has_zero == c.member(i)) defect = std::max(defect, 1.0);
  }
  struct Probe {
    const char* name;
    double (*f)(double);
  };
  const Probe probes[] = {
      {"1", [](double) { return 1.0; }},
      {"cos x", [](double x) { return std::cos(x); }},
      {"x^2", [](double x) { return x * x; }},
  };
  for (const Probe& p : probes) {
    const CoeffVector coeffs = c.grid1.analyze(c.grid1.sample([&](std::span<const double> x) { return p.f(x[0]); }));
    double m = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) m = std::max(m, std::abs(coeffs[i]));
    note += std::string(note.empty() ? "" : ", ") + "max|analyze(" + p.name + ")| = " + fmt(m);
    defect = std::max(defect, m);
  }
  return {defect, "Φ_0 ≡ 0 excluded; even probes: " + note};
}

using CheckFn = Outcome (*)(Context&);

// FNV-1a, so the per-check streams do not depend on the standard library.
std::uint64_t stream_offset(const std::string& id) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : id) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

struct CheckEntry {
  const char* id;
  CheckFn fn;
  bool augmented_only;
};

const std::vector<CheckEntry>& registry() {
  static const std::vector<CheckEntry> entries{
      {"phi_orthonormality", phi_orthonormality, false},
      {"psi_orthonormality", psi_orthonormality, false},
      {"eigen_relation", eigen_relation, false},
      {"parity_reduction", parity_reduction, false},
      {"skew_symmetry_pointwise", skew_symmetry_pointwise, false},
      {"skew_symmetry_spectral", skew_symmetry_spectral, false},
      {"spectral_pointwise_consistency", spectral_pointwise_consistency, false},
      {"ladder_involution", ladder_involution, false},
      {"level_partition", level_partition, false},
      {"pi0_idempotence", pi0_idempotence, false},
      {"semigroup_law", semigroup_law, false},
      {"ladder_closed_form", ladder_closed_form, false},
      {"riesz_closed_form", riesz_closed_form, false},
      {"riesz_contraction", riesz_contraction, false},
      {"cauchy_riemann_i", cauchy_riemann_i, false},
      {"cauchy_riemann_ii", cauchy_riemann_ii, false},
      {"cauchy_riemann_iii", cauchy_riemann_iii, false},
      {"harmonicity", harmonicity, false},
      {"riesz_square_sum", riesz_square_sum, false},
      {"complex_picture", complex_picture, false},
      {"sine_convention", sine_convention, true},
  };
  return entries;
}

}  // namespace

const std::vector<std::string>& check_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& e : registry()) v.emplace_back(e.id);
    return v;
  }();
  return ids;
}

double default_tolerance(const std::string& id) {
  const auto it = tolerance_table().find(id);
  if (it == tolerance_table().end()) throw std::invalid_argument("unknown check id: " + id);
  return it->second;
}

CoeffVector random_unit_vector(const OperatorEngine& engine, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  CoeffVector v = engine.zeros();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = engine.levels().level_of(i) >= 0 ? gauss(rng) : 0.0;
  v *= 1.0 / v.norm();
  return v;
}

LadderTerm ladder_power(const SymmetrizedBasis& basis, const MultiIndex& n, int axis, int power) {
  if (power < 1) throw std::invalid_argument("ladder power must be positive");
  const int nj = n[axis];
  if (basis.is_null(nj)) return {n, 0.0};
  const double amp = std::pow(basis.gap(nj), 0.5 * power);
  if (power % 2 == 0) return {n, (power / 2) % 2 == 0 ? amp : -amp};
  MultiIndex target = n;
  target[axis] = nj % 2 == 0 ? nj - 1 : nj + 1;
  if (target[axis] < 0) return {n, 0.0};
  const int e = nj + 1 + (power - 1) / 2;
  return {target, e % 2 == 0 ? amp : -amp};
}

LadderTerm product_power(const SymmetrizedBasis& basis, const MultiIndex& n, const MultiIndex& l, ProductSign sign) {
  if (l.dim() != n.dim() || l.is_zero()) throw std::invalid_argument("invalid multi-index for the closed form");
  MultiIndex target = n;
  double amp = 1.0;
  int odd = 0, index_sum = 0;
  for (int j = 0; j < n.dim(); ++j) {
    if (basis.is_null(n[j])) return {n, 0.0};
    amp *= std::pow(basis.gap(n[j]), 0.5 * l[j]);
    if (l[j] % 2 == 1) {
      ++odd;
      index_sum += n[j];
      target[j] = n[j] % 2 == 0 ? n[j] - 1 : n[j] + 1;
      if (target[j] < 0) return {n, 0.0};
    }
  }
  // |ℓ|/2 + Σ_odd (n_j + h) with h = 3/2 or 1/2; |ℓ| ≡ #odd (mod 2) keeps it integral.
  const int halves = sign == ProductSign::ThreeHalves ? 3 * odd : odd;
  const int e = (l.order() + halves) / 2 + index_sum;
  if (amp == 0.0) return {n, 0.0};
  return {target, e % 2 == 0 ? amp : -amp};
}

std::vector<CheckReport> run_suite(const SuiteConfig& config) {
  if (config.dim < 1) throw std::invalid_argument("dimension must be at least 1");
  if (config.truncation < 2) throw std::invalid_argument("truncation must be at least 2");
  if (config.random_pairs < 1 || config.random_vectors < 1) throw std::invalid_argument("random sample counts must be positive");
  if (config.threads < 1) throw std::invalid_argument("thread count must be at least 1");
  for (double t : config.t_values)
    if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("t values must be positive");
  for (const auto& [id, tol] : config.tolerances) {
    default_tolerance(id);
    if (!(tol >= 0.0)) throw std::invalid_argument("tolerance for " + id + " must be nonnegative");
  }
  for (const auto& id : config.only) default_tolerance(id);

  const int N = config.truncation + config.truncation % 2;  // as raised by the engine
  const int quad = config.quad_size > 0 ? config.quad_size : default_rule_size(N);
  if (quad < minimum_rule_size(N))
    throw std::invalid_argument("quadrature size " + std::to_string(quad) + " is below 2N+16 = " +
                                std::to_string(minimum_rule_size(N)));
  const QuadratureRule rule = build_rule(config.family, quad);

  std::vector<const CheckEntry*> selected;
  for (const CheckEntry& entry : registry()) {
    if (entry.augmented_only && !config.family.augmented()) continue;
    if (!config.only.empty() && std::find(config.only.begin(), config.only.end(), entry.id) == config.only.end())
      continue;
    selected.push_back(&entry);
  }

  std::vector<CheckReport> reports(selected.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    Context ctx(config, OperatorEngine(config.family, config.dim, config.truncation, EngineOptions{config.ladder}), rule);
    for (std::size_t k = next++; k < selected.size(); k = next++) {
      const CheckEntry& entry = *selected[k];
      // Each check draws from its own stream so subsets and thread counts reproduce the full run.
      ctx.rng.seed(config.seed + stream_offset(entry.id));
      double tol = default_tolerance(entry.id);
      if (const auto it = config.tolerances.find(entry.id); it != config.tolerances.end()) tol = std::min(tol, it->second);

      const auto start = std::chrono::steady_clock::now();
      const Outcome out = entry.fn(ctx);
      const auto stop = std::chrono::steady_clock::now();

      CheckReport& r = reports[k];
      r.id = entry.id;
      r.family = config.family.name();
      r.dim = config.dim;
      r.truncation = N;
      r.max_defect = out.defect;
      r.tolerance = tol;
      r.pass = std::isfinite(out.defect) && out.defect <= tol;
      r.runtime_ms = std::chrono::duration<double, std::milli>(stop - start).count();
      r.seed = config.seed;
      r.note = out.note;
    }
  };
  const int threads = std::min<int>(config.threads, static_cast<int>(selected.size()));
  if (threads <= 1) {
    worker();
  } else {
    // Exceptions inside checks are programming errors; let the first one escape.
    std::vector<std::future<void>> jobs;
    for (int i = 0; i < threads; ++i) jobs.push_back(std::async(std::launch::async, worker));
    for (auto& j : jobs) j.get();
  }
  return reports;
}

bool all_pass(const std::vector<CheckReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.pass; });
}

void write_jsonl(std::ostream& os, const std::vector<CheckReport>& reports) {
  for (const CheckReport& r : reports) {
    nlohmann::ordered_json j;
    j["id"] = r.id;
    j["family"] = r.family;
    j["d"] = r.dim;
    j["N"] = r.truncation;
    j["max_defect"] = r.max_defect;
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    j["seed"] = r.seed;
    j["note"] = r.note;
    os << j.dump() << '\n';
  }
}

void write_summary(std::ostream& os, const std::vector<CheckReport>& reports, bool with_runtime) {
  os << std::left << std::setw(32) << "check" << std::setw(18) << "family" << std::setw(3) << "d" << std::setw(5)
     << "N" << std::setw(12) << "defect" << std::setw(10) << "tol" << std::setw(6) << "pass";
  if (with_runtime) os << "ms";
  os << '\n';
  for (const CheckReport& r : reports) {
    os << std::left << std::setw(32) << r.id << std::setw(18) << r.family << std::setw(3) << r.dim << std::setw(5)
       << r.truncation << std::setw(12) << fmt(r.max_defect) << std::setw(10) << fmt(r.tolerance) << std::setw(6)
       << (r.pass ? "yes" : "NO");
    if (with_runtime) os << std::fixed << std::setprecision(1) << r.runtime_ms << std::defaultfloat;
    os << '\n';
  }
}

}  // namespace symconj
