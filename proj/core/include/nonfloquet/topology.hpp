#pragma once

#include <cstddef>

#include "nonfloquet/evolution.hpp"
#include "nonfloquet/models.hpp"
#include "nonfloquet/operator_core.hpp"

namespace nonfloquet {

/// max over samples of ‖σ_z H(−t) σ_z + H(t)‖₂ for a two-band model, with t
/// on a uniform grid over one period.
double chiral_drive_check(const Model& model, std::size_t t_samples);

/// Same, also maximized over k on a uniform grid of [0, 2π).
double chiral_drive_check(const BlochFamily& family, std::size_t t_samples, std::size_t k_samples);

/// Floquet operators from the two chiral-symmetric time origins. With
/// V = U(T, T/2): U₁ = σ_z V⁻¹ σ_z V and U₂ = V σ_z V⁻¹ σ_z, the latter being
/// U(T, 0). For unitary V the inverse equals V†.
struct ChiralFrame {
  ComplexMatrix u1;
  ComplexMatrix u2;
  ComplexMatrix heff1;
  ComplexMatrix heff2;
  /// Largest diagonal magnitude of either effective Hamiltonian.
  double offdiag_residual = 0.0;
};

/// Effective Hamiltonian (i/T)·Log U through the eigendecomposition.
/// Throws BranchCutError when an eigenvalue sits on the negative real axis
/// within 1e-12 in argument.
ComplexMatrix effective_hamiltonian(const ComplexMatrix& u, double period);

ChiralFrame half_period_frame(const Model& model, std::size_t slices = kDefaultSlices);

/// W = (i/2π)∮ q⁻¹ dq = −(unwrapped change of arg q)/2π for the upper-right
/// entry q of each effective Hamiltonian. The lower-left entries are wound
/// as well and compared against the reciprocal relation (winding −W).
struct WindingReport {
  int w1 = 0;
  int w2 = 0;
  double nu0 = 0.0;
  double nu_pi = 0.0;
  /// i∮q⁻¹dq for each frame, in radians; equals 2π·W up to rounding.
  double phase_accumulation1 = 0.0;
  double phase_accumulation2 = 0.0;
  int lower_left_w1 = 0;
  int lower_left_w2 = 0;
  /// The lower-left windings equal −W₁ and −W₂.
  bool reciprocal_consistent = true;
  std::size_t k_points = 0;
  /// Number of k samples moved by half a step off a branch cut.
  std::size_t perturbed_points = 0;
};

/// Throws GaplessError when |q(k)| < 1e-12 at a sample and InvalidInputError
/// when nk < 64.
WindingReport winding_numbers(const BlochFamily& family, std::size_t nk, std::size_t slices = kDefaultSlices);

/// Winding of a sampled closed curve: the sum of principal increments of
/// arg z over consecutive samples, closing back to the first one, in radians.
double accumulated_phase(const ComplexVector& samples);

}  // namespace nonfloquet
