#include "symconj/symmetrization.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace symconj {

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

void check_symmetric_domain(const FamilySpec& fam, double x) {
  if (x == 0.0) throw DomainError("x = 0 is excluded from X_SYM");
  check_domain(fam, std::abs(x));
}

}  // namespace

SymmetrizedBasis::SymmetrizedBasis(FamilySpec fam)
    : generator_(fam.augmented() ? FamilySpec::trigonometric() : fam), fam_(fam) {}

double SymmetrizedBasis::lambda(int n) const { return eigenvalue(fam_, angle_index(n)); }

double SymmetrizedBasis::gap(int n) const { return eigenvalue_gap(fam_, angle_index(n)); }

Jet3 SymmetrizedBasis::Phi_jet(int n, double x) const {
  if (n < 0) throw std::invalid_argument("basis index must be nonnegative");
  check_symmetric_domain(fam_, x);
  if (is_null(n)) return Jet3(0.0);
  const double y = std::abs(x);
  if (n % 2 == 0) {
    const Jet3 j = kInvSqrt2 * phi_jet(generator_, n / 2, y);
    return x > 0 ? j : j.reflected();
  }
  const int k = angle_index(n);
  const Jet3 j = (-kInvSqrt2 / std::sqrt(eigenvalue_gap(generator_, k))) * delta_phi_jet(generator_, k, y);
  return x > 0 ? j : -j.reflected();
}

double SymmetrizedBasis::eval_Phi(int n, double x) const { return Phi_jet(n, x).value(); }

std::complex<double> SymmetrizedBasis::eval_Psi(int n, double x) const {
  if (n == 0) return {eval_Phi(0, x), 0.0};
  const int m = std::abs(n);
  const double sgn = n > 0 ? 1.0 : -1.0;
  return std::complex<double>(eval_Phi(2 * m, x), sgn * eval_Phi(2 * m - 1, x)) * kInvSqrt2;
}

CoefficientJets SymmetrizedBasis::extended_coefficients(double x) const {
  check_symmetric_domain(fam_, x);
  CoefficientJets c = coefficient_jets(fam_, std::abs(x));
  if (x > 0) return c;
  return {c.p.reflected(), -c.q.reflected(), -c.log_weight.reflected()};
}

Jet2 apply_D_jet(const SymmetrizedBasis& basis, const ScalarField& f, double x) {
  const CoefficientJets c = basis.extended_coefficients(x);
  const Jet3 fx = f(x);
  const Jet2 here = fx.truncate<2>();
  const Jet2 mirrored = f(-x).reflected().truncate<2>();
  const Jet2 p = c.p.truncate<2>();
  const Jet2 q = c.q.truncate<2>();
  const Jet2 bracket = p * c.log_weight.truncate<2>() + c.p.derivative() - q;
  return p * fx.derivative() + q * (0.5 * (here + mirrored)) + bracket * (0.5 * (here - mirrored));
}

double apply_D_pointwise(const SymmetrizedBasis& basis, const ScalarField& f, double x) {
  return apply_D_jet(basis, f, x).value();
}

double apply_L_pointwise(const SymmetrizedBasis& basis, const ScalarField& f, double x) {
  const CoefficientJets c = basis.extended_coefficients(x);
  const Jet3 fx = f(x);
  const double fm = f(-x).value();
  const double p = c.p[0], dp = c.p[1];
  const double q = c.q[0], dq = c.q[1];
  const double lw = c.log_weight[0];
  // [p w'/w + p' - q]'
  const Jet2 bracket = c.p.truncate<2>() * c.log_weight.truncate<2>() + c.p.derivative() - c.q.truncate<2>();
  const double even = 0.5 * (fx[0] + fm);
  const double odd = 0.5 * (fx[0] - fm);
  const double sum = p * p * fx[2] + (2.0 * p * dp + p * p * lw) * fx[1] + (q * (p * lw + dp) - q * q) * fx[0] +
                     p * dq * even + p * bracket[1] * odd;
  return basis.family().a() * fx[0] - sum;
}

std::vector<double> apply_D_spectral_1d(const SymmetrizedBasis& basis, std::span<const double> coeffs,
                                        LadderSign sign) {
  const std::size_t len = coeffs.size();
  const bool headroom = len > 0 && (len - 1) % 2 == 1;
  std::vector<double> out(len + (headroom ? 1 : 0), 0.0);
  for (std::size_t n = 0; n < len; ++n) {
    if (coeffs[n] == 0.0 || basis.is_null(static_cast<int>(n))) continue;
    const double amp = std::sqrt(basis.gap(static_cast<int>(n)));
    if (n % 2 == 0) {
      if (n > 0) out[n - 1] -= amp * coeffs[n];
    } else {
      out[n + 1] += (sign == LadderSign::Standard ? amp : -amp) * coeffs[n];
    }
  }
  return out;
}

bool truncation_loss(std::span<const double> coeffs, std::size_t kept) {
  for (std::size_t i = kept; i < coeffs.size(); ++i)
    if (std::abs(coeffs[i]) > 1e-12) return true;
  return false;
}

ScalarField expansion_field(const SymmetrizedBasis& basis, std::vector<double> coeffs) {
  return [&basis, c = std::move(coeffs)](double x) {
    Jet3 sum(0.0);
    for (std::size_t n = 0; n < c.size(); ++n)
      if (c[n] != 0.0) sum += c[n] * basis.Phi_jet(static_cast<int>(n), x);
    return sum;
  };
}

}  // namespace symconj
