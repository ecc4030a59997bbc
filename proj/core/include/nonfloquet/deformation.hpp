#pragma once

#include <cstddef>
#include <vector>

#include "nonfloquet/evolution.hpp"
#include "nonfloquet/models.hpp"
#include "nonfloquet/operator_core.hpp"

namespace nonfloquet {

/// γ(t) = c + a·t + Σ_h [u_h cos(h(ωt+φ)) + w_h sin(h(ωt+φ))], h = 1, 2, …
/// `cos_coeffs[h−1]` holds u_h and `sin_coeffs[h−1]` holds w_h.
struct SiteGenerator {
  Complex constant{0.0};
  Complex linear{0.0};
  std::vector<Complex> cos_coeffs;
  std::vector<Complex> sin_coeffs;

  Complex value(double t, double omega, double phase = 0.0) const;
  Complex derivative(double t, double omega, double phase = 0.0) const;
};

/// Diagonal generator Γ(t) of the deformation S(t) = e^{Γ(t)}.
struct DeformationSpec {
  double omega = 1.0;
  double phase = 0.0;
  std::vector<SiteGenerator> sites;

  std::size_t dimension() const { return sites.size(); }
  ComplexVector gamma(double t) const;
  ComplexVector gamma_dot(double t) const;

  /// −Γ, which undoes the deformation.
  DeformationSpec inverse() const;

  /// Maps the non-Hermitian chain onto its Hermitian counterpart:
  /// γ(a_j) = β(j−1) + iθ/2 − cos θ, γ(b_j) = βj − iθ/2 + cos θ with
  /// θ = ωt + φ and j = 1…cells. cells = 1 with β = 0 is the momentum-space
  /// form.
  static DeformationSpec catalog_chain(std::size_t cells, double beta, const DriveSpec& drive);

  /// Temporal part only (β = 0).
  static DeformationSpec catalog_temporal(std::size_t cells, const DriveSpec& drive);
};

/// H'(t) = e^{Γ} H e^{−Γ} + iΓ̇. The result reports periodic() == false when
/// e^{Γ_i − Γ_j} is not T-periodic for some pair of sites.
ModelPtr transform_model(ModelPtr model, const DeformationSpec& gamma);

struct PseudoHermResidual {
  ComplexMatrix theta1;  // S†S at the worst sampled time
  ComplexMatrix theta2;  // S⁻¹Ṡ at the worst sampled time
  double residual_norm = 0.0;
  std::vector<double> sampled_times;
};

/// max_t ‖(H† − θ₁Hθ₁⁻¹) − i(θ₂† + θ₁θ₂θ₁⁻¹)‖_F / max(1, ‖H‖_F).
/// Throws IllConditionedError when cond(θ₁) > 1e12 at a sampled time.
PseudoHermResidual pseudo_hermiticity_residual(const Model& model, const DeformationSpec& gamma,
                                               const std::vector<double>& times);

/// Per-site (i/T)(γ(T) − γ(0)).
ComplexVector generalized_shift(const DeformationSpec& gamma, double period);

/// Matching distance (spectrum_distance) between the quasienergies of A and
/// those of B shifted by `shift` and folded into the zone.
double spectra_shift_check(const ComplexVector& eps_a, const ComplexVector& eps_b, Complex shift, double period);
double spectra_shift_check(const Model& a, const Model& b, Complex shift, std::size_t slices = kDefaultSlices);

/// ‖P·conj(U)·P⁻¹ − U⁻¹‖_F / ‖U‖_F with 𝒯 as complex conjugation.
double pt_check(const ComplexMatrix& u, const ComplexMatrix& p);

/// Variant with the momentum map k → −k: compares P·conj(U(k))·P⁻¹ against
/// U(−k)⁻¹.
double pt_check(const ComplexMatrix& u_k, const ComplexMatrix& u_minus_k, const ComplexMatrix& p);

/// σ_x on every two-site block.
ComplexMatrix sublattice_swap(std::size_t cells);

}  // namespace nonfloquet
