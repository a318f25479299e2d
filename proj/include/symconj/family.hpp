#pragma once

// One-dimensional eigensystems on X = (0, c): the operator L = a + δ*δ with
// δ = p d/dx + q, its normalized eigenfunctions φ_k and eigenvalues λ_k.

#include <stdexcept>
#include <string>
#include <string_view>

#include "symconj/jet.hpp"

namespace symconj {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class FamilyKind {
  Trigonometric,          // √2 cos kx on (0,π), μ = dx/π
  HermiteEven,            // √2 h_{2k} on (0,∞), μ = dx
  LaguerreConv,           // ℓ_k^α on (0,∞), μ = x^{2α+1} dx
  JacobiTrig,             // normalized P_k^{(α,β)}(cos θ) on (0,π)
  OrnsteinUhlenbeckEven,  // normalized H_{2k} on (0,∞), μ = e^{-x²} dx
  SineAugmented,          // √2 sin kx with the λ₀ = 0, φ₀ ≡ 0 convention
};

class FamilySpec {
 public:
  static FamilySpec trigonometric();
  static FamilySpec hermite_even();
  static FamilySpec laguerre(double alpha);
  static FamilySpec jacobi(double alpha, double beta);
  static FamilySpec ornstein_uhlenbeck();
  static FamilySpec sine_augmented();

  // Accepts the short CLI names: trig, hermite, laguerre, jacobi, ou, sine.
  static FamilySpec parse(std::string_view name, double alpha = 0.0, double beta = 0.0);

  FamilyKind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

  // Right endpoint c of X = (0, c); +inf on the half-line families.
  double right_endpoint() const;
  // The constant a in L = a + δ*δ.
  double a() const;
  bool augmented() const { return kind_ == FamilyKind::SineAugmented; }
  // Integer-valued spectrum, so level sums can be compared exactly.
  bool integer_spectrum() const;

  std::string name() const;

  bool operator==(const FamilySpec&) const = default;

 private:
  FamilySpec(FamilyKind kind, double alpha, double beta) : kind_(kind), alpha_(alpha), beta_(beta) {}

  FamilyKind kind_;
  double alpha_ = 0.0;
  double beta_ = 0.0;
};

// Coefficients of δ as jets in x (value and three derivatives), on the
// original half-interval x in (0, c). log_weight is w'/w.
struct CoefficientJets {
  Jet3 p;
  Jet3 q;
  Jet3 log_weight;
};

enum class DeltaSide { Delta, DeltaStar };

double eigenvalue(const FamilySpec& fam, int k);
// λ_k - a, computed without cancellation.
double eigenvalue_gap(const FamilySpec& fam, int k);

double eval_phi(const FamilySpec& fam, int k, double x);
double eval_phi_deriv(const FamilySpec& fam, int k, double x);
Jet3 phi_jet(const FamilySpec& fam, int k, double x);

// δφ_k from the family's lowering identity (not from p φ' + q φ).
Jet3 delta_phi_jet(const FamilySpec& fam, int k, double x);
double eval_delta_phi(const FamilySpec& fam, int k, double x);

CoefficientJets coefficient_jets(const FamilySpec& fam, double x);
// Density w of μ; only needed where integrands are not basis products.
double weight(const FamilySpec& fam, double x);

// [δ, δ*] = 2 p q' - p (p w'/w + p')'.
double commutator(const FamilySpec& fam, double x);

// Throws DomainError unless 0 < x < c.
void check_domain(const FamilySpec& fam, double x);

// δf = p f' + q f,  δ*f = -p f' + (q - p w'/w - p') f.
// The result is one order lower than the input jet.
template <int O>
Jet<O - 1> delta_apply_jet(const FamilySpec& fam, const Jet<O>& f, double x, DeltaSide side) {
  static_assert(O >= 1);
  check_domain(fam, x);
  const CoefficientJets c = coefficient_jets(fam, x);
  const Jet<O - 1> p = c.p.template truncate<O - 1>();
  const Jet<O - 1> q = c.q.template truncate<O - 1>();
  const Jet<O - 1> f0 = f.template truncate<O - 1>();
  const Jet<O - 1> f1 = f.derivative();
  if (side == DeltaSide::Delta) return p * f1 + q * f0;
  const Jet<O - 1> lw = c.log_weight.template truncate<O - 1>();
  const Jet<O - 1> dp = c.p.derivative().template truncate<O - 1>();
  return -(p * f1) + (q - p * lw - dp) * f0;
}

inline double delta_apply(const FamilySpec& fam, const Jet1& f, double x, DeltaSide side) {
  return delta_apply_jet(fam, f, x, side).value();
}

}  // namespace symconj
