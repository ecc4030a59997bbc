#include "nonfloquet/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "nonfloquet/errors.hpp"

namespace nonfloquet {

LocalizationReport localization_factor(const ComplexMatrix& states) {
  LocalizationReport out;
  const auto dim = states.rows();
  if (dim == 0) throw InvalidStateError("localization_factor: empty state vectors");
  out.dimension = static_cast<std::size_t>(dim);
  const double baseline = 1.0 / static_cast<double>(dim);
  for (Eigen::Index j = 0; j < states.cols(); ++j) {
    const Eigen::VectorXd weight = states.col(j).cwiseAbs2();
    const double norm2 = weight.sum();
    if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
      throw InvalidStateError("localization_factor: zero or non-finite state column");
    }
    if (std::abs(norm2 - 1.0) > 1e-12) out.normalization_applied = true;
    const double ipr = (weight / norm2).squaredNorm();
    out.ipr.push_back(ipr);
    out.factors.push_back(ipr - baseline);
  }
  return out;
}

namespace {

double cluster_distance(Complex a, Complex b, double period) {
  return std::hypot(zone_difference(a.real(), b.real(), period), a.imag() - b.imag());
}

void rebase_cluster(ComplexMatrix& states, const std::vector<Eigen::Index>& members) {
  const auto dim = states.rows();
  const auto m = static_cast<Eigen::Index>(members.size());
  ComplexMatrix block(dim, m);
  for (Eigen::Index c = 0; c < m; ++c) block.col(c) = states.col(members[static_cast<std::size_t>(c)]);
  Eigen::HouseholderQR<ComplexMatrix> qr(block);
  const ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, m);
  Eigen::VectorXd position(dim);
  for (Eigen::Index i = 0; i < dim; ++i) position(i) = static_cast<double>(i);
  const ComplexMatrix projected = q.adjoint() * position.cast<Complex>().asDiagonal() * q;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(projected);
  const ComplexMatrix rebased = q * solver.eigenvectors();
  for (Eigen::Index c = 0; c < m; ++c) {
    ComplexVector v = rebased.col(c);
    // Fix the gauge: largest component real positive.
    Eigen::Index peak = 0;
    v.cwiseAbs().maxCoeff(&peak);
    v *= std::conj(v(peak)) / std::abs(v(peak));
    states.col(members[static_cast<std::size_t>(c)]) = v / v.norm();
  }
}

}  // namespace

std::size_t resolve_degenerate_states(FloquetSpectrum& spectrum, double tol) {
  const auto n = spectrum.quasienergies.size();
  if (n < 2) return 0;
  const double period = spectrum.period;

  // Pairwise union-find; the distance is circular in Re ε so clusters may
  // straddle the zone edge.
  std::vector<Eigen::Index> parent(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
  auto find = [&](Eigen::Index i) {
    while (parent[static_cast<std::size_t>(i)] != i) i = parent[static_cast<std::size_t>(i)];
    return i;
  };
  auto unite = [&](Eigen::Index a, Eigen::Index b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  };
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (cluster_distance(spectrum.quasienergies(i), spectrum.quasienergies(j), period) < tol) unite(i, j);
    }
  }

  std::size_t rebased = 0;
  for (Eigen::Index root = 0; root < n; ++root) {
    if (find(root) != root) continue;
    std::vector<Eigen::Index> members;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (find(i) == root) members.push_back(i);
    }
    if (members.size() < 2) continue;
    rebase_cluster(spectrum.states, members);
    ++rebased;
  }
  return rebased;
}

}  // namespace nonfloquet
