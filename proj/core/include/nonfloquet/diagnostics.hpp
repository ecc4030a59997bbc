#pragma once

#include <cstddef>
#include <vector>

#include "nonfloquet/operator_core.hpp"

namespace nonfloquet {

/// Per-state localization: I_j = Σ_m |Ψ_j(m)|⁴ − 1/D for unit-norm states
/// of dimension D, so 0 ≤ I_j ≤ 1 − 1/D.
struct LocalizationReport {
  std::vector<double> factors;
  std::vector<double> ipr;
  std::size_t dimension = 0;
  /// At least one column was rescaled to unit 2-norm before evaluation.
  bool normalization_applied = false;
};

/// Evaluates the localization factor of every column. Columns are
/// normalized to unit 2-norm first; a zero column is an InvalidStateError.
LocalizationReport localization_factor(const ComplexMatrix& states);

/// Within every cluster of quasienergies closer than `tol` (circular in
/// Re ε), replaces the eigenvectors by the orthonormal basis of their span
/// that diagonalizes the site-position operator. Returns the number of
/// clusters that were rebased. Degenerate eigenvectors are otherwise an
/// arbitrary, solver-dependent mixture.
std::size_t resolve_degenerate_states(FloquetSpectrum& spectrum, double tol = Tolerances{}.degenerate_cluster);

}  // namespace nonfloquet
