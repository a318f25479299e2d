#pragma once

// The symmetrized one-dimensional picture on X_SYM = (-c,0) ∪ (0,c): even/odd
// extension of the coefficients, the skew-symmetric derivative D, the
// differential-difference Laplacian 𝕃, and the extended bases Φ_n (real) and
// Ψ_n (complex).

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "symconj/family.hpp"
#include "symconj/jet.hpp"

namespace symconj {

// ⟨n⟩ = ⌊(n+1)/2⌋: the eigenfunction index Φ_n originates from.
constexpr int angle_index(int n) { return (n + 1) / 2; }

// A function on X_SYM evaluated as a jet (value and three derivatives) at x.
using ScalarField = std::function<Jet3(double)>;

// Sign convention for the one-dimensional ladder. Corrupted flips the sign of
// the odd -> even step and exists only so the verifier can be mutation-tested.
enum class LadderSign { Standard, Corrupted };

class SymmetrizedBasis {
 public:
  explicit SymmetrizedBasis(FamilySpec fam);

  const FamilySpec& family() const { return fam_; }

  // Φ_{2k} = φ_k / √2 (even extension),
  // Φ_{2k-1} = -(λ_k - a)^{-1/2} δφ_k / √2 (odd extension).
  double eval_Phi(int n, double x) const;
  Jet3 Phi_jet(int n, double x) const;

  // Ψ_n = (Φ_{2|n|} + i sgn(n) Φ_{2|n|-1}) / √2 for n ≠ 0, and Ψ_0 = Φ_0.
  std::complex<double> eval_Psi(int n, double x) const;

  // λ_⟨n⟩ and λ_⟨n⟩ - a.
  double lambda(int n) const;
  double gap(int n) const;

  // Φ_n ≡ 0 (only n = 0 under the sine convention).
  bool is_null(int n) const { return fam_.augmented() && n == 0; }

  // Extended p (even), q (odd), w'/w (odd) as jets at x ≠ 0.
  CoefficientJets extended_coefficients(double x) const;

 private:
  // Family whose φ_k / δφ_k generate the basis; the sine convention is
  // realized through the cosine system with Φ_0 removed.
  FamilySpec generator_;
  FamilySpec fam_;
};

// Df(x) = p f'(x) + q (f(x) + f(-x))/2 + [p w'/w + p' - q] (f(x) - f(-x))/2.
double apply_D_pointwise(const SymmetrizedBasis& basis, const ScalarField& f, double x);
// Same, returned as a jet (value, first and second derivative of Df at x).
Jet2 apply_D_jet(const SymmetrizedBasis& basis, const ScalarField& f, double x);

// Explicit differential-difference form of 𝕃 = a - D².
double apply_L_pointwise(const SymmetrizedBasis& basis, const ScalarField& f, double x);

// Coefficients of Df from those of f via DΦ_n = (-1)^{n+1} √(λ_⟨n⟩ - a) Φ_{n-(-1)^n}.
// If the top input index is odd the output gets one extra slot of headroom.
std::vector<double> apply_D_spectral_1d(const SymmetrizedBasis& basis, std::span<const double> coeffs,
                                        LadderSign sign = LadderSign::Standard);

// True when anything beyond the first `kept` slots exceeds 1e-12 in magnitude.
bool truncation_loss(std::span<const double> coeffs, std::size_t kept);

// Σ_n c_n Φ_n as a field (for pointwise checks).
ScalarField expansion_field(const SymmetrizedBasis& basis, std::vector<double> coeffs);

}  // namespace symconj
