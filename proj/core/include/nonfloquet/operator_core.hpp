#pragma once

#include <complex>
#include <cstddef>
#include <numbers>

#include <Eigen/Dense>

namespace nonfloquet {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Default numerical thresholds. Every routine that takes a tolerance
/// accepts an override; these are only the fallbacks.
struct Tolerances {
  double hermitian = 1e-12;
  double eig_residual = 1e-10;
  double singular_eigenvalue = 1e-300;
  double degenerate_cluster = 1e-9;
};

/// Throws DimensionError for non-square input and InvalidInputError for
/// non-finite entries. `what` names the caller in the message.
void require_square_finite(const ComplexMatrix& a, const char* what);

/// ‖A − A†‖_F / max(1, ‖A‖_F).
double hermiticity_defect(const ComplexMatrix& a);
bool is_hermitian(const ComplexMatrix& a, double tol = Tolerances{}.hermitian);

/// Induced 1-norm (max column sum).
double norm_one(const ComplexMatrix& a);

/// Spectral norm (largest singular value).
double norm_two(const ComplexMatrix& a);

/// exp(−i·A·dt) by scaling and squaring around a degree-18 Taylor core.
/// The scaling exponent is chosen so that ‖A·dt‖₁ / 2^s ≤ 0.5.
ComplexMatrix expm(const ComplexMatrix& a, double dt);

/// x ← exp(−i·A·dt)·x without forming the exponential. The step is split
/// into substeps of 1-norm ≤ 0.5 and each substep is a truncated Taylor
/// series whose length is fixed from the norm bound. Sparse generators
/// (banded lattice Hamiltonians) are multiplied in compressed form.
void expm_apply(const ComplexMatrix& a, double dt, ComplexMatrix& x);

struct SpectralDecomposition {
  ComplexVector eigenvalues;
  ComplexMatrix right_eigenvectors;  // unit-norm columns
  double condition_estimate = 1.0;   // κ₂ of the eigenvector matrix
};

/// General complex eigendecomposition. The matrix is first balanced with
/// an exact power-of-two diagonal similarity, then reduced to Schur form by
/// shifted QR. Eigenpairs are ordered by real part, then imaginary part.
SpectralDecomposition eig(const ComplexMatrix& a);

/// max_i ‖A v_i − λ_i v_i‖₂.
double max_eig_residual(const ComplexMatrix& a, const SpectralDecomposition& d);

/// Diagonal D (as a vector) such that D⁻¹AD has balanced row and column
/// norms. Entries are powers of two, so the similarity is exact.
Eigen::VectorXd balance_scaling(const ComplexMatrix& a);

/// Quasienergy spectrum of a one-period propagator. Re ε lies in the zone
/// (center − π/T, center + π/T].
struct FloquetSpectrum {
  ComplexVector quasienergies;
  ComplexMatrix states;
  double period = 0.0;
  double zone_center = 0.0;
  double condition_estimate = 1.0;

  std::size_t size() const { return static_cast<std::size_t>(quasienergies.size()); }
};

/// Inverts λ = e^{−iεT} with the principal logarithm: ε = (i/T)·Log λ.
/// Output is sorted by Re ε, then Im ε.
FloquetSpectrum quasienergies(const ComplexMatrix& u, double period);

/// Same as above but reusing an existing decomposition of U.
FloquetSpectrum quasienergies(const SpectralDecomposition& decomposition, double period);

/// Folds a real quasienergy into (center − π/T, center + π/T].
double fold_to_zone(double value, double period, double center = 0.0);

/// Signed distance between two real quasienergies on the circle of
/// circumference 2π/T, in (−π/T, π/T].
double zone_difference(double a, double b, double period);

}  // namespace nonfloquet
