#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "nonfloquet/diagnostics.hpp"
#include "nonfloquet/models.hpp"
#include "nonfloquet/operator_core.hpp"

namespace nonfloquet {

inline constexpr std::size_t kDefaultSlices = 4096;

struct PropagatorRequest {
  ModelPtr model;
  double t0 = 0.0;
  double t1 = 0.0;
  std::size_t slices = kDefaultSlices;
};

struct PropagatorResult {
  ComplexMatrix matrix;
  /// Some slice has Δt·ω > π.
  bool under_resolved = false;
  double max_step = 0.0;
  std::size_t slices_used = 0;
};

/// U(t1, t0) as the time-ordered product of midpoint exponentials.
/// Slices have equal width except that model breakpoints inside (t0, t1)
/// always coincide with slice boundaries; the interval is then cut at the
/// breakpoints and each piece receives a proportional share of slices.
PropagatorResult propagate(const PropagatorRequest& request);

/// U(t_start + T, t_start).
ComplexMatrix floquet_operator(const Model& model, double t_start = 0.0, std::size_t slices = kDefaultSlices);

/// Quasienergies of floquet_operator. With `resolve_degenerate` the
/// eigenvectors of degenerate clusters are rebased to site-localized
/// combinations (see resolve_degenerate_states).
FloquetSpectrum floquet_spectrum(const Model& model, double t_start = 0.0, std::size_t slices = kDefaultSlices,
                                 bool resolve_degenerate = true);

/// Bulk gaps of the periodic companion of an open chain, sampled at the
/// L momenta k = 2πn/L. gap_zero is min |Re ε|, gap_pi the minimal
/// circular distance of Re ε to π/T.
struct BulkGaps {
  double gap_zero = 0.0;
  double gap_pi = 0.0;
};

BulkGaps bulk_gaps(const BipartiteChainSpec& spec, const DriveSpec& drive, std::size_t slices = kDefaultSlices);

/// A state counts as an edge mode when Re ε lies strictly inside one of the
/// bulk gaps and its localization factor exceeds half of the maximum
/// 1 − 1/D.
std::vector<std::size_t> detect_edge_modes(const FloquetSpectrum& spectrum, const LocalizationReport& localization,
                                           const BulkGaps& gaps);

struct SweepRow {
  double mu0 = 0.0;
  FloquetSpectrum spectrum;
  LocalizationReport localization;
  BulkGaps gaps;
  std::vector<std::size_t> edge_modes;
};

/// Open-chain spectra over a μ₀ grid. Rows follow the grid order.
std::vector<SweepRow> obc_sweep(const BipartiteChainSpec& spec, const DriveSpec& drive,
                                const std::vector<double>& mu0_grid, std::size_t slices = kDefaultSlices);

struct PhaseStudyRow {
  double phi = 0.0;
  FloquetSpectrum spectrum;
  LocalizationReport localization;
};

/// One row per starting phase φ: the Floquet operator U(t₀ + T, t₀) with
/// t₀ = φ/ω, which equals shifting the drive phase by φ.
std::vector<PhaseStudyRow> starting_point_study(const Model& model, const std::vector<double>& phis,
                                                std::size_t slices = kDefaultSlices);

/// Largest pair distance after greedily matching the globally closest
/// unmatched pairs of two quasienergy multisets. Re parts are compared on
/// the zone circle. Sizes must agree.
double spectrum_distance(const ComplexVector& a, const ComplexVector& b, double period);

/// Per-band statistics of a two-band step quench over k-points on the line
/// k_n = (2πn/N)·(1, 0.3), n = 0…N−1. At every k the two quasienergies are
/// ordered by Re ε. Re statistics are circular: the mean is the zone-folded
/// argument of the averaged phase factor, the spread is the RMS of zone
/// differences from it.
struct QuenchBandReport {
  std::array<double, 2> mean_re{};
  std::array<double, 2> std_re{};
  std::array<double, 2> mean_im{};
  std::array<double, 2> std_im{};
  double max_abs_im = 0.0;
  /// Circular distance between the two band means, combined with the
  /// difference of their imaginary means.
  double band_separation = 0.0;
  std::size_t k_points = 0;
};

QuenchBandReport quench_band_report(const StepQuenchSpec& spec, std::size_t nk, std::size_t slices = kDefaultSlices);

}  // namespace nonfloquet
