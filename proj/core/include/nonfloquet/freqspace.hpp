#pragma once

#include <cstddef>
#include <vector>

#include "nonfloquet/deformation.hpp"
#include "nonfloquet/models.hpp"
#include "nonfloquet/operator_core.hpp"

namespace nonfloquet {

/// Fourier coefficients h_p = (1/T)∫₀ᵀ H(t) e^{−ipωt} dt for |p| ≤ P.
struct HarmonicSet {
  int max_order = 0;  // P
  double omega = 1.0;
  std::size_t quadrature_points = 0;
  std::vector<ComplexMatrix> blocks;  // blocks[p + P]
  /// Largest ‖h_p‖_F over the last quarter of the retained range.
  double tail_norm = 0.0;

  std::size_t block_dim() const { return blocks.empty() ? 0 : static_cast<std::size_t>(blocks.front().rows()); }
  /// h_p, or a zero block when |p| > P.
  ComplexMatrix at(int p) const;
  /// max_p ‖h_p‖₂ / ω, the restoration measure of the Wannier-Stark picture.
  double coupling_ratio() const;
};

/// Default quadrature size: max(1024, 16P).
std::size_t default_quadrature_points(int max_order);

/// Uniform-grid DFT of Nt samples. Nt = 0 selects the default. Throws
/// InvalidInputError unless Nt is a power of two with Nt ≥ 8P, and
/// ConfigError for a model whose periodic() flag is false.
HarmonicSet harmonics(const Model& model, int max_order, std::size_t nt = 0);

/// max_p ‖h_p e^{−ηp} − (h_{−p} e^{ηp})†‖_F.
double hermitization_residual(const HarmonicSet& h, double eta);

/// Truncated Sambe matrix with blocks K_{m',m} = h_{m'−m} + δ_{m'm} m'ω I,
/// m', m = −M…M in that order.
struct SambeOperator {
  int cutoff = 0;  // M
  std::size_t block_dim = 0;
  double omega = 1.0;
  ComplexMatrix matrix;
};

/// Throws InsufficientHarmonicsError when M > P. Harmonics with
/// P < |m' − m| ≤ 2M are taken as zero.
SambeOperator sambe_build(const HarmonicSet& h, int cutoff);

struct SambeSpectrum {
  ComplexVector eigenvalues;
  /// Column j: weight of eigenvector j on each frequency site m = −M…M.
  Eigen::MatrixXd populations;
  std::vector<int> peak_site;
  /// |peak_site| ≤ M − 2.
  std::vector<bool> interior;
};

SambeSpectrum sambe_spectrum(const SambeOperator& s);

/// min |Re ε| over eigenvalues whose population peaks on the m = 0 site,
/// with Re ε folded into the zone of width ω. Replicas near the truncation
/// edge are excluded because the cutoff distorts them.
double central_zero_gap(const SambeSpectrum& spectrum, double omega);

/// Parameters of the two-band momentum-space model used for the
/// frequency-space comparison.
struct Case2Params {
  double t1 = 0.0;
  double t2 = 0.0;
  double p = 0.0;
  double mu0 = 0.0;
};

/// Undeformed model: H₀ = (ω/2)σ_z plus the drive with e^{∓iθ ± 2cos θ}
/// factors on the off-diagonal and (2p cos k − μ₀ − iω) sin θ on the diagonal.
ModelPtr case2_undeformed_model(const Case2Params& params, const DriveSpec& drive, double k);

/// Deformed model: static off-diagonal (−t₁ − t₂e^{∓ik}) and diagonal
/// ±(2p cos k − μ₀) sin θ.
ModelPtr deformed_case2_model(const Case2Params& params, const DriveSpec& drive, double k);

/// The generator that maps the undeformed model onto the deformed one.
DeformationSpec case2_deformation(const DriveSpec& drive);

/// Closed-form harmonics of the undeformed model (drive phase zero):
/// h_p[a,b] = D·I_{p+1}(2), h_p[b,a] = D̄·(−1)^{p−1} I_{p−1}(2) with
/// D = −t₁ − t₂e^{−ik}, D̄ = −t₁ − t₂e^{ik}, and diagonal entries
/// ±X/(2i) at p = ±1 on a (opposite sign on b), X = 2p cos k − μ₀ − iω,
/// plus ±ω/2 at p = 0.
HarmonicSet case2_closed_form_harmonics(const Case2Params& params, double omega, double k, int max_order);

/// Modified Bessel function of the first kind for integer order.
/// Throws DomainError when |n| > 64 or |x| > 20.
double modified_bessel_i(int n, double x);

struct StarkStudy {
  StarkChainSpec spec;
  ComplexVector eigenvalues;     // sorted by real part
  ComplexMatrix eigenvectors;    // unit-norm columns
  Eigen::MatrixXd populations;   // column j is ρ_j over sites
  std::vector<std::size_t> peak_site;  // 1-based site index of max ρ_j
  double ladder_spacing_estimate = 0.0;
  /// max |(D⁻¹HD − H_herm)_{lm}| with D = diag(e^{−βl}), e^β = √(t_L/t_R).
  double gauge_residual = 0.0;
};

StarkStudy stark_chain_study(const StarkChainSpec& spec);

}  // namespace nonfloquet
