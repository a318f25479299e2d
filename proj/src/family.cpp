#include "symconj/family.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "symconj/recurrence.hpp"

namespace symconj {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kParameterMargin = 1e-12;

void check_parameter(double v, const char* what) {
  if (!std::isfinite(v) || v <= -1.0 + kParameterMargin) {
    std::ostringstream os;
    os << "parameter " << what << " = " << v << " must exceed -1";
    throw std::invalid_argument(os.str());
  }
}

void check_index(int k) {
  if (k < 0) throw std::invalid_argument("eigenfunction index must be nonnegative");
}

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

// Normalized Hermite functions h_n (orthonormal in L²(R, dx)).
Jet3 hermite_function(int n, const Jet3& x) {
  const Jet3 h0 = std::pow(kPi, -0.25) * exp(-0.5 * (x * x));
  return recurrence_eval(HermiteRecurrence{}, n, x, h0);
}

// Normalized Hermite polynomials (orthonormal in L²(R, e^{-x²} dx)).
Jet3 hermite_polynomial(int n, const Jet3& x) {
  return recurrence_eval(HermiteRecurrence{}, n, x, Jet3(std::pow(kPi, -0.25)));
}

// Laguerre functions of convolution type, orthonormal in L²((0,∞), x^{2α+1} dx):
// ℓ_k^α(x) = (2 k!/Γ(k+α+1))^{1/2} L_k^α(x²) e^{-x²/2}.
Jet3 laguerre_function(double alpha, int k, const Jet3& x) {
  const Jet3 t = x * x;
  const Jet3 p0 = (kSqrt2 * std::exp(-0.5 * std::lgamma(alpha + 1.0))) * exp(-0.5 * t);
  // The orthonormal recurrence has positive leading coefficient; L_k^α has sign (-1)^k.
  const Jet3 pk = recurrence_eval(LaguerreRecurrence{alpha}, k, t, p0);
  return (k % 2 == 0) ? pk : -pk;
}

// Jacobi polynomials in cos θ, orthonormal for the probability measure
// proportional to (1-x)^α (1+x)^β dx.
Jet3 jacobi_trig(double alpha, double beta, int k, const Jet3& theta) {
  return recurrence_eval(JacobiRecurrence{alpha, beta}, k, cos(theta), Jet3(1.0));
}

}  // namespace

FamilySpec FamilySpec::trigonometric() { return {FamilyKind::Trigonometric, -0.5, -0.5}; }
FamilySpec FamilySpec::hermite_even() { return {FamilyKind::HermiteEven, -0.5, 0.0}; }
FamilySpec FamilySpec::laguerre(double alpha) {
  check_parameter(alpha, "alpha");
  return {FamilyKind::LaguerreConv, alpha, 0.0};
}
FamilySpec FamilySpec::jacobi(double alpha, double beta) {
  check_parameter(alpha, "alpha");
  check_parameter(beta, "beta");
  return {FamilyKind::JacobiTrig, alpha, beta};
}
FamilySpec FamilySpec::ornstein_uhlenbeck() { return {FamilyKind::OrnsteinUhlenbeckEven, 0.0, 0.0}; }
FamilySpec FamilySpec::sine_augmented() { return {FamilyKind::SineAugmented, -0.5, -0.5}; }

FamilySpec FamilySpec::parse(std::string_view name, double alpha, double beta) {
  if (name == "trig" || name == "trigonometric") return trigonometric();
  if (name == "hermite") return hermite_even();
  if (name == "laguerre") return laguerre(alpha);
  if (name == "jacobi") return jacobi(alpha, beta);
  if (name == "ou" || name == "ornstein-uhlenbeck") return ornstein_uhlenbeck();
  if (name == "sine") return sine_augmented();
  throw std::invalid_argument("unknown family '" + std::string(name) + "'");
}

double FamilySpec::right_endpoint() const {
  switch (kind_) {
    case FamilyKind::Trigonometric:
    case FamilyKind::JacobiTrig:
    case FamilyKind::SineAugmented:
      return kPi;
    default:
      return std::numeric_limits<double>::infinity();
  }
}

double FamilySpec::a() const {
  switch (kind_) {
    case FamilyKind::HermiteEven:
      return 1.0;
    case FamilyKind::LaguerreConv:
      return 2.0 * alpha_ + 2.0;
    case FamilyKind::JacobiTrig: {
      const double s = 0.5 * (alpha_ + beta_ + 1.0);
      return s * s;
    }
    default:
      return 0.0;
  }
}

bool FamilySpec::integer_spectrum() const {
  switch (kind_) {
    case FamilyKind::LaguerreConv:
      return std::floor(2.0 * alpha_) == 2.0 * alpha_;
    case FamilyKind::JacobiTrig:
      return std::floor(alpha_ + beta_) == alpha_ + beta_ && std::fmod(alpha_ + beta_ + 1.0, 2.0) == 0.0;
    default:
      return true;
  }
}

std::string FamilySpec::name() const {
  std::ostringstream os;
  switch (kind_) {
    case FamilyKind::Trigonometric:
      return "trig";
    case FamilyKind::HermiteEven:
      return "hermite";
    case FamilyKind::LaguerreConv:
      os << "laguerre(" << alpha_ << ")";
      return os.str();
    case FamilyKind::JacobiTrig:
      os << "jacobi(" << alpha_ << "," << beta_ << ")";
      return os.str();
    case FamilyKind::OrnsteinUhlenbeckEven:
      return "ou";
    case FamilyKind::SineAugmented:
      return "sine";
  }
  return "?";
}

void check_domain(const FamilySpec& fam, double x) {
  if (!(x > 0.0) || !(x < fam.right_endpoint())) {
    std::ostringstream os;
    os << "x = " << x << " outside (0, " << fam.right_endpoint() << ") for family " << fam.name();
    throw DomainError(os.str());
  }
}

double eigenvalue(const FamilySpec& fam, int k) {
  check_index(k);
  return fam.a() + eigenvalue_gap(fam, k);
}

double eigenvalue_gap(const FamilySpec& fam, int k) {
  check_index(k);
  const double kk = k;
  switch (fam.kind()) {
    case FamilyKind::Trigonometric:
    case FamilyKind::SineAugmented:
      return kk * kk;
    case FamilyKind::HermiteEven:
    case FamilyKind::LaguerreConv:
    case FamilyKind::OrnsteinUhlenbeckEven:
      return 4.0 * kk;
    case FamilyKind::JacobiTrig:
      return kk * (kk + fam.alpha() + fam.beta() + 1.0);
  }
  return 0.0;
}

Jet3 phi_jet(const FamilySpec& fam, int k, double x) {
  check_index(k);
  check_domain(fam, x);
  const Jet3 X = Jet3::variable(x);
  switch (fam.kind()) {
    case FamilyKind::Trigonometric:
      return k == 0 ? Jet3(1.0) : kSqrt2 * cos(static_cast<double>(k) * X);
    case FamilyKind::SineAugmented:
      return k == 0 ? Jet3(0.0) : kSqrt2 * sin(static_cast<double>(k) * X);
    case FamilyKind::HermiteEven:
      return kSqrt2 * hermite_function(2 * k, X);
    case FamilyKind::OrnsteinUhlenbeckEven:
      return kSqrt2 * hermite_polynomial(2 * k, X);
    case FamilyKind::LaguerreConv:
      return laguerre_function(fam.alpha(), k, X);
    case FamilyKind::JacobiTrig:
      return jacobi_trig(fam.alpha(), fam.beta(), k, X);
  }
  return Jet3{};
}

double eval_phi(const FamilySpec& fam, int k, double x) { return phi_jet(fam, k, x).value(); }

double eval_phi_deriv(const FamilySpec& fam, int k, double x) { return phi_jet(fam, k, x)[1]; }

Jet3 delta_phi_jet(const FamilySpec& fam, int k, double x) {
  check_index(k);
  check_domain(fam, x);
  const Jet3 X = Jet3::variable(x);
  if (k == 0) {
    // δφ₀ ≡ 0 whenever a = λ₀, which holds for every supported family.
    return Jet3(0.0);
  }
  const double kk = k;
  switch (fam.kind()) {
    case FamilyKind::Trigonometric:
      return (-kSqrt2 * kk) * sin(kk * X);
    case FamilyKind::SineAugmented:
      return (kSqrt2 * kk) * cos(kk * X);
    case FamilyKind::HermiteEven:
      // h_n' + x h_n = √(2n) h_{n-1}
      return (2.0 * std::sqrt(2.0 * kk)) * hermite_function(2 * k - 1, X);
    case FamilyKind::OrnsteinUhlenbeckEven:
      return (2.0 * std::sqrt(2.0 * kk)) * hermite_polynomial(2 * k - 1, X);
    case FamilyKind::LaguerreConv:
      // (d/dx + x) ℓ_k^α = -2√k x ℓ_{k-1}^{α+1}
      return (-2.0 * std::sqrt(kk)) * (X * laguerre_function(fam.alpha() + 1.0, k - 1, X));
    case FamilyKind::JacobiTrig: {
      // d/dθ P_k(cos θ) = -sin θ · const · P_{k-1}^{(α+1,β+1)}(cos θ); the constant is
      // fixed by ‖δφ_k‖² = λ_k - a and the ratio of the two probability normalizations.
      const double al = fam.alpha(), be = fam.beta();
      const double ratio = 4.0 * (al + 1.0) * (be + 1.0) / ((al + be + 2.0) * (al + be + 3.0));
      const double c = std::sqrt(eigenvalue_gap(fam, k) / ratio);
      return -c * (sin(X) * jacobi_trig(al + 1.0, be + 1.0, k - 1, X));
    }
  }
  return Jet3{};
}

double eval_delta_phi(const FamilySpec& fam, int k, double x) { return delta_phi_jet(fam, k, x).value(); }

CoefficientJets coefficient_jets(const FamilySpec& fam, double x) {
  check_domain(fam, x);
  const Jet3 X = Jet3::variable(x);
  CoefficientJets c{Jet3(1.0), Jet3(0.0), Jet3(0.0)};
  switch (fam.kind()) {
    case FamilyKind::Trigonometric:
    case FamilyKind::SineAugmented:
      break;
    case FamilyKind::HermiteEven:
      c.q = X;
      break;
    case FamilyKind::LaguerreConv:
      c.q = X;
      c.log_weight = (2.0 * fam.alpha() + 1.0) / X;
      break;
    case FamilyKind::OrnsteinUhlenbeckEven:
      c.log_weight = -2.0 * X;
      break;
    case FamilyKind::JacobiTrig: {
      const double al = fam.alpha(), be = fam.beta();
      c.log_weight = ((al - be) + (al + be + 1.0) * cos(X)) / sin(X);
      break;
    }
  }
  return c;
}

double weight(const FamilySpec& fam, double x) {
  check_domain(fam, x);
  switch (fam.kind()) {
    case FamilyKind::Trigonometric:
    case FamilyKind::SineAugmented:
      return 1.0 / kPi;
    case FamilyKind::HermiteEven:
      return 1.0;
    case FamilyKind::LaguerreConv:
      return std::pow(x, 2.0 * fam.alpha() + 1.0);
    case FamilyKind::OrnsteinUhlenbeckEven:
      return std::exp(-x * x);
    case FamilyKind::JacobiTrig: {
      const double al = fam.alpha(), be = fam.beta();
      const double lw = (2.0 * al + 1.0) * std::log(std::sin(0.5 * x)) + (2.0 * be + 1.0) * std::log(std::cos(0.5 * x));
      return std::exp(lw - log_beta(al + 1.0, be + 1.0));
    }
  }
  return 0.0;
}

double commutator(const FamilySpec& fam, double x) {
  const CoefficientJets c = coefficient_jets(fam, x);
  const Jet2 p = c.p.truncate<2>();
  const Jet2 s = p * c.log_weight.truncate<2>() + c.p.derivative();
  return 2.0 * p.value() * c.q[1] - p.value() * s[1];
}

}  // namespace symconj
