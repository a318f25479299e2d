#pragma once

// Coefficient-space spectral operators of the symmetrized scheme: Π₀, powers of
// the self-adjoint Laplacian 𝔏, the derivatives D_j, Riesz transforms R^ℓ, the
// Poisson semigroup P_t, conjugate Poisson integrals U_t^j and the projected
// higher-order derivatives 𝔻^n of the initial setting.

#include <complex>
#include <vector>

#include "symconj/symmetrization.hpp"
#include "symconj/tensor.hpp"

namespace symconj {

struct EngineOptions {
  LadderSign ladder = LadderSign::Standard;
};

// Coefficients of a function on 𝒳 = X^d in the initial basis, paired with a
// parity pattern: on axis j the index k refers to φ_k when parity[j] = 0 and to
// ψ_k = -(λ_k - a)^{-1/2} δφ_k when parity[j] = 1.
struct InitialExpansion {
  CoeffVector coeffs;
  std::vector<int> parity;
};

class OperatorEngine {
 public:
  // An odd truncation is raised by one so that every D_j maps the box into
  // itself (ladder pairs {2k-1, 2k} are never split).
  OperatorEngine(FamilySpec fam, int dim, int truncation, EngineOptions options = {});

  const SymmetrizedBasis& basis() const { return basis_; }
  const FamilySpec& family() const { return basis_.family(); }
  const LevelTable& levels() const { return levels_; }
  const Box& box() const { return levels_.box(); }
  int dim() const { return box().dim(); }
  int truncation() const { return box().truncation(); }
  bool truncation_raised() const { return raised_; }
  // A = d·a
  double A() const { return A_; }
  double lambda(std::size_t flat) const { return levels_.eigenvalues()[flat]; }

  CoeffVector zeros() const { return CoeffVector(family(), box()); }
  CoeffVector basis_vector(const MultiIndex& n) const { return CoeffVector::basis_vector(family(), box(), n); }
  // Zeroes slots that do not carry a basis function (sine convention).
  CoeffVector restrict_to_basis(const CoeffVector& f) const;

  CoeffVector pi0(const CoeffVector& f) const;
  // Multiplier λ^s; for s ≤ 0 the input is first projected by Π₀.
  CoeffVector frac_power(double s, const CoeffVector& f) const;
  CoeffVector laplacian(const CoeffVector& f) const { return frac_power(1.0, f); }
  CoeffVector apply_Dj(int axis, const CoeffVector& f) const;
  // R^ℓ = D^ℓ 𝔏^{-|ℓ|/2} Π₀
  CoeffVector riesz(const MultiIndex& l, const CoeffVector& f) const;
  // ‖(Σ_{|ℓ|=order} |R^ℓ f|²)^{1/2}‖
  double riesz_norm_map(int order, const CoeffVector& f) const;
  CoeffVector poisson(double t, const CoeffVector& f) const;
  // ∂_t P_t f, analytic multiplier -√λ e^{-t√λ}.
  CoeffVector poisson_dt(double t, const CoeffVector& f) const;
  // U_t^j = P_t R_j
  CoeffVector conjugate_poisson(int axis, double t, const CoeffVector& f) const;
  CoeffVector conjugate_poisson_dt(int axis, double t, const CoeffVector& f) const;
  // Σ_j R_j² f
  CoeffVector riesz_square_sum(const CoeffVector& f) const;
  CoeffVector project_level(std::size_t m, const CoeffVector& f) const;

  // 𝔻^n = (...δ_1 δ_1* δ_1) ... (...δ_d δ_d* δ_d) on a function given by its
  // φ-coefficients on the box {0..K}^d, K = truncation/2.
  InitialExpansion projected_derivative(const MultiIndex& n, const CoeffVector& f) const;
  Box initial_box() const { return Box(dim(), truncation() / 2); }

 private:
  void require_own(const CoeffVector& f) const;
  template <typename Multiplier>
  CoeffVector apply_multiplier(const CoeffVector& f, Multiplier m) const;

  SymmetrizedBasis basis_;
  LevelTable levels_;
  EngineOptions options_;
  double A_;
  bool raised_;
  std::vector<bool> member_;
};

// Ψ-picture coefficients ⟨f, Ψ_n⟩ for n in {-K..K}^d, K = truncation/2,
// lexicographic with the first axis most significant.
class PsiCoeffVector {
 public:
  PsiCoeffVector(int dim, int half_width);

  int dim() const { return dim_; }
  int half_width() const { return half_width_; }
  std::size_t size() const { return data_.size(); }
  std::size_t flatten(const std::vector<int>& n) const;
  std::vector<int> unflatten(std::size_t flat) const;
  std::complex<double>& operator[](std::size_t i) { return data_[i]; }
  std::complex<double> operator[](std::size_t i) const { return data_[i]; }

 private:
  int dim_;
  int half_width_;
  std::vector<std::complex<double>> data_;
};

PsiCoeffVector to_psi(const OperatorEngine& engine, const CoeffVector& f);
CoeffVector from_psi(const OperatorEngine& engine, const PsiCoeffVector& g);
// First-order Riesz transform R_j through DΨ_n = i sgn(n_j) √(λ_|n_j| - a) Ψ_n.
PsiCoeffVector psi_riesz(const OperatorEngine& engine, int axis, const PsiCoeffVector& g);
PsiCoeffVector psi_poisson(const OperatorEngine& engine, double t, const PsiCoeffVector& g);

}  // namespace symconj
