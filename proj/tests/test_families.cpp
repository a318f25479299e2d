#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "symconj/family.hpp"
#include "symconj/gauss.hpp"
#include "symconj/jet.hpp"
#include "symconj/recurrence.hpp"

using namespace symconj;
using doctest::Approx;

namespace {

const double kPi = std::numbers::pi;

std::vector<FamilySpec> all_families() {
  return {FamilySpec::trigonometric(), FamilySpec::hermite_even(),       FamilySpec::laguerre(0.5),
          FamilySpec::jacobi(0.3, 0.7), FamilySpec::ornstein_uhlenbeck(), FamilySpec::sine_augmented(),
          FamilySpec::laguerre(-0.4),   FamilySpec::jacobi(-0.5, 0.2)};
}

// Interior sample points of (0, c).
std::vector<double> sample_points(const FamilySpec& fam) {
  if (std::isfinite(fam.right_endpoint())) return {0.13, 0.7, 1.4, 2.2, 3.0};
  return {0.05, 0.6, 1.3, 2.5, 4.0};
}

// Composite Gauss–Legendre on [lo, hi] against μ = weight(x) dx.
template <typename F>
double integrate(const FamilySpec& fam, double lo, double hi, F f, int panels = 64) {
  static const GaussRule gl = gauss_rule(JacobiRecurrence(0.0, 0.0), 16, 1.0);
  const double h = (hi - lo) / panels;
  double s = 0.0;
  for (int p = 0; p < panels; ++p)
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double x = lo + h * (p + 0.5 * (gl.nodes[i] + 1.0));
      s += h * gl.weights[i] * weight(fam, x) * f(x);
    }
  return s;
}

// Smooth bump supported in (m - r, m + r).
Jet3 bump(double m, double r, double x) {
  const Jet3 s = (Jet3::variable(x) - m) * (1.0 / r);
  const double v = s.value();
  if (std::abs(v) >= 1.0) return Jet3(0.0);
  return exp(-1.0 * reciprocal(1.0 - s * s));
}

}  // namespace

TEST_CASE("jet arithmetic follows the chain and product rules") {
  const Jet3 x = Jet3::variable(0.4);
  const Jet3 f = sin(x) * exp(x);
  // (sin e^x)' = e^x (sin + cos), '' = 2 e^x cos, ''' = 2 e^x (cos - sin)
  const double e = std::exp(0.4), s = std::sin(0.4), c = std::cos(0.4);
  CHECK(f[0] == Approx(s * e).epsilon(1e-15));
  CHECK(f[1] == Approx(e * (s + c)).epsilon(1e-15));
  CHECK(f[2] == Approx(2 * e * c).epsilon(1e-15));
  CHECK(f[3] == Approx(2 * e * (c - s)).epsilon(1e-14));

  const Jet3 g = sqrt(x) / (1.0 + x * x);
  const double h = 1e-4;
  auto gv = [](double t) { return std::sqrt(t) / (1 + t * t); };
  CHECK(g[1] == Approx((gv(0.4 + h) - gv(0.4 - h)) / (2 * h)).epsilon(1e-7));

  const Jet3 r = f.reflected();
  CHECK(r[0] == f[0]);
  CHECK(r[1] == -f[1]);
  CHECK(r[2] == f[2]);
  CHECK(r[3] == -f[3]);
  CHECK(f.derivative()[0] == f[1]);
  CHECK(f.truncate<1>()[1] == f[1]);
}

TEST_CASE("orthonormal recurrences reproduce closed-form polynomials") {
  // p_2 = (4x² - 2) / √(8√π) for e^{-x²}
  const double x = 0.3;
  const double p0 = std::pow(kPi, -0.25);
  CHECK(recurrence_eval(HermiteRecurrence{}, 2, x, p0) == Approx((4 * x * x - 2) / std::sqrt(8 * std::sqrt(kPi))));
  // Legendre under the probability measure: p_2 = √5 (3x² - 1)/2
  CHECK(recurrence_eval(JacobiRecurrence(0, 0), 2, x, 1.0) == Approx(std::sqrt(5.0) * (3 * x * x - 1) / 2));
  const auto table = recurrence_table(LaguerreRecurrence(0.0), 3, x, 1.0);
  // Laguerre α = 0: orthonormal p_1 = -(L_1) = x - 1
  CHECK(table[1] == Approx(x - 1.0));
  CHECK(table[2] == Approx((x * x - 4 * x + 2) / 2));
}

TEST_CASE("Gauss rules from recurrences") {
  const GaussRule leg = gauss_rule(JacobiRecurrence(0, 0), 3, 1.0);
  CHECK(leg.nodes[0] == Approx(-std::sqrt(0.6)).epsilon(1e-15));
  CHECK(leg.nodes[1] == Approx(0.0).epsilon(1e-15));
  CHECK(leg.weights[0] == Approx(5.0 / 18).epsilon(1e-15));
  CHECK(leg.weights[1] == Approx(8.0 / 18).epsilon(1e-15));
  const GaussRule her = gauss_rule(HermiteRecurrence{}, 2, std::pow(kPi, -0.25));
  CHECK(her.nodes[1] == Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(her.weights[0] == Approx(std::sqrt(kPi) / 2).epsilon(1e-15));
  CHECK_THROWS_AS(gauss_rule(HermiteRecurrence{}, 0, 1.0), std::invalid_argument);
}

TEST_CASE("eigenvalues, the constant a and the gap") {
  CHECK(eigenvalue(FamilySpec::trigonometric(), 3) == 9);
  CHECK(FamilySpec::trigonometric().a() == 0);
  CHECK(eigenvalue(FamilySpec::hermite_even(), 3) == 13);
  CHECK(FamilySpec::hermite_even().a() == 1);
  CHECK(eigenvalue_gap(FamilySpec::hermite_even(), 3) == 12);
  CHECK(eigenvalue(FamilySpec::laguerre(0.5), 2) == Approx(11));
  CHECK(FamilySpec::laguerre(0.5).a() == Approx(3));
  const FamilySpec jac = FamilySpec::jacobi(0.3, 0.7);
  CHECK(eigenvalue(jac, 2) == Approx(9));
  CHECK(jac.a() == Approx(1));
  CHECK(eigenvalue_gap(jac, 2) == Approx(8));
  CHECK(eigenvalue(FamilySpec::ornstein_uhlenbeck(), 5) == 20);
  CHECK(eigenvalue(FamilySpec::sine_augmented(), 0) == 0);
  CHECK(eigenvalue(FamilySpec::sine_augmented(), 4) == 16);
  for (const FamilySpec& f : all_families()) CHECK(eigenvalue(f, 0) == Approx(f.a()));
  CHECK_THROWS_AS(eigenvalue(FamilySpec::trigonometric(), -1), std::invalid_argument);
}

TEST_CASE("eigenfunction values against independent references") {
  // High-precision values of the closed-form eigenfunctions.
  CHECK(eval_phi(FamilySpec::hermite_even(), 0, 1e-9) == Approx(1.0622519320271969).epsilon(1e-13));
  CHECK(eval_phi(FamilySpec::hermite_even(), 2, 0.7) == Approx(-0.32578456313412322).epsilon(1e-13));
  CHECK(eval_phi(FamilySpec::laguerre(0.5), 2, 1.1) == Approx(-0.25039062227133673).epsilon(1e-13));
  CHECK(eval_delta_phi(FamilySpec::laguerre(0.5), 2, 1.1) == Approx(-1.7002239167509358).epsilon(1e-13));
  CHECK(eval_phi(FamilySpec::jacobi(0.3, 0.7), 3, 1.0) == Approx(-0.97665119772035156).epsilon(1e-13));
  CHECK(eval_phi(FamilySpec::ornstein_uhlenbeck(), 1, 0.9) == Approx(0.46569783756826434).epsilon(1e-13));
  CHECK(eval_phi(FamilySpec::trigonometric(), 0, 0.4) == 1.0);
  CHECK(eval_phi(FamilySpec::trigonometric(), 3, 0.4) == Approx(std::sqrt(2.0) * std::cos(1.2)));
  CHECK(eval_phi(FamilySpec::sine_augmented(), 0, 0.4) == 0.0);
  CHECK(eval_phi(FamilySpec::sine_augmented(), 2, 0.4) == Approx(std::sqrt(2.0) * std::sin(0.8)));
  CHECK(eval_phi_deriv(FamilySpec::trigonometric(), 2, 0.4) == Approx(-2 * std::sqrt(2.0) * std::sin(0.8)));
}

TEST_CASE("domain and parameter errors") {
  CHECK_THROWS_AS(eval_phi(FamilySpec::trigonometric(), 1, 0.0), DomainError);
  CHECK_THROWS_AS(eval_phi(FamilySpec::trigonometric(), 1, kPi), DomainError);
  CHECK_THROWS_AS(eval_phi(FamilySpec::hermite_even(), 1, -0.5), DomainError);
  CHECK_NOTHROW(eval_phi(FamilySpec::hermite_even(), 1, 50.0));
  CHECK_THROWS_AS(FamilySpec::laguerre(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(FamilySpec::jacobi(0.0, -1.5), std::invalid_argument);
  CHECK_THROWS_AS(FamilySpec::parse("bessel"), std::invalid_argument);
  CHECK(FamilySpec::parse("jacobi", 0.3, 0.7) == FamilySpec::jacobi(0.3, 0.7));
  CHECK(FamilySpec::parse("ou") == FamilySpec::ornstein_uhlenbeck());
  CHECK(FamilySpec::parse("laguerre", 0.5).name() == "laguerre(0.5)");
}

TEST_CASE("lowering identities agree with δ applied to the eigenfunction") {
  for (const FamilySpec& fam : all_families()) {
    CAPTURE(fam.name());
    for (int k = 0; k <= 12; ++k)
      for (double x : sample_points(fam)) {
        const double direct = delta_apply(fam, phi_jet(fam, k, x).truncate<1>(), x, DeltaSide::Delta);
        const double identity = eval_delta_phi(fam, k, x);
        CHECK(std::abs(direct - identity) <= 1e-10 * std::max(1.0, std::abs(direct)));
      }
  }
}

TEST_CASE("eigen-relation a + δ*δ φ_k = λ_k φ_k") {
  for (const FamilySpec& fam : all_families()) {
    CAPTURE(fam.name());
    for (int k = 0; k <= 12; ++k)
      for (double x : sample_points(fam)) {
        const Jet3 phi = phi_jet(fam, k, x);
        const Jet2 d = delta_apply_jet(fam, phi, x, DeltaSide::Delta);
        const double l = fam.a() * phi.value() + delta_apply_jet(fam, d, x, DeltaSide::DeltaStar).value();
        const double lam = eigenvalue(fam, k);
        CHECK(std::abs(l - lam * phi.value()) <= 1e-8 * std::max(1.0, lam) * std::max(1.0, std::abs(phi.value())));
      }
  }
}

TEST_CASE("δ* is the formal adjoint of δ on compactly supported functions") {
  for (const FamilySpec& fam : all_families()) {
    CAPTURE(fam.name());
    const double m = std::isfinite(fam.right_endpoint()) ? 1.5 : 1.8;
    auto f = [&](double x) { return bump(m, 0.9, x) * cos(Jet3::variable(x)); };
    auto g = [&](double x) { return bump(m + 0.3, 0.8, x) * (1.0 + Jet3::variable(x)); };
    const double lhs = integrate(fam, m - 0.9, m + 0.9, [&](double x) {
      return delta_apply(fam, f(x).truncate<1>(), x, DeltaSide::Delta) * g(x).value();
    });
    const double rhs = integrate(fam, m - 0.9, m + 0.9, [&](double x) {
      return f(x).value() * delta_apply(fam, g(x).truncate<1>(), x, DeltaSide::DeltaStar);
    });
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("orthonormality and the norm identity on bounded intervals") {
  for (const FamilySpec& fam : {FamilySpec::trigonometric(), FamilySpec::sine_augmented(), FamilySpec::jacobi(1.5, 2.0)}) {
    CAPTURE(fam.name());
    for (int k = 0; k <= 6; ++k) {
      for (int m = 0; m <= 6; ++m) {
        const double ip = integrate(fam, 0.0, kPi, [&](double x) { return eval_phi(fam, k, x) * eval_phi(fam, m, x); }, 200);
        const double expected = (k == m && !(fam.augmented() && k == 0)) ? 1.0 : 0.0;
        CHECK(ip == Approx(expected).epsilon(1e-10).scale(1.0));
      }
      const double dn = integrate(fam, 0.0, kPi, [&](double x) { return std::pow(eval_delta_phi(fam, k, x), 2); }, 200);
      CHECK(dn == Approx(eigenvalue_gap(fam, k)).epsilon(1e-8));
    }
  }
}

TEST_CASE("half-line families are orthonormal on a truncated interval") {
  for (const FamilySpec& fam : {FamilySpec::hermite_even(), FamilySpec::laguerre(1.0), FamilySpec::ornstein_uhlenbeck()}) {
    CAPTURE(fam.name());
    for (int k = 0; k <= 5; ++k)
      for (int m = 0; m <= 5; ++m) {
        const double ip = integrate(fam, 0.0, 14.0, [&](double x) { return eval_phi(fam, k, x) * eval_phi(fam, m, x); }, 400);
        CHECK(ip == Approx(k == m ? 1.0 : 0.0).epsilon(1e-10).scale(1.0));
      }
  }
}

TEST_CASE("Jacobi (-1/2,-1/2) coincides with the trigonometric family") {
  const FamilySpec jac = FamilySpec::jacobi(-0.5, -0.5);
  const FamilySpec trig = FamilySpec::trigonometric();
  CHECK(jac.a() == 0.0);
  for (int k = 0; k <= 16; ++k) {
    CHECK(eigenvalue(jac, k) == Approx(eigenvalue(trig, k)));
    for (double x : {0.05, 0.9, 1.7, 2.6, 3.1}) {
      CHECK(std::abs(eval_phi(jac, k, x) - eval_phi(trig, k, x)) < 1e-10);
      CHECK(std::abs(eval_delta_phi(jac, k, x) - eval_delta_phi(trig, k, x)) < 1e-10 * std::max(1, k));
    }
  }
  CHECK(weight(jac, 1.0) == Approx(1.0 / kPi).epsilon(1e-14));
}

TEST_CASE("commutator [δ, δ*]") {
  const double x = 0.8;
  CHECK(commutator(FamilySpec::trigonometric(), x) == 0.0);
  CHECK(commutator(FamilySpec::hermite_even(), x) == Approx(2.0));
  CHECK(commutator(FamilySpec::ornstein_uhlenbeck(), x) == Approx(2.0));
  CHECK(commutator(FamilySpec::laguerre(0.5), x) == Approx(2.0 + 2.0 / (x * x)));
  const double A = 0.3 - 0.7, B = 0.3 + 0.7 + 1.0;
  CHECK(commutator(FamilySpec::jacobi(0.3, 0.7), x) == Approx((B + A * std::cos(x)) / std::pow(std::sin(x), 2)));
}
