#include "nonfloquet/freqspace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "nonfloquet/errors.hpp"

namespace nonfloquet {

ComplexMatrix HarmonicSet::at(int p) const {
  if (std::abs(p) > max_order) {
    const auto d = static_cast<Eigen::Index>(block_dim());
    return ComplexMatrix::Zero(d, d);
  }
  return blocks[static_cast<std::size_t>(p + max_order)];
}

double HarmonicSet::coupling_ratio() const {
  double worst = 0.0;
  for (const auto& b : blocks) worst = std::max(worst, norm_two(b));
  return worst / omega;
}

std::size_t default_quadrature_points(int max_order) {
  return std::max<std::size_t>(1024, 16 * static_cast<std::size_t>(std::max(max_order, 0)));
}

HarmonicSet harmonics(const Model& model, int max_order, std::size_t nt) {
  if (max_order < 0) throw InvalidInputError("harmonics: negative harmonic order");
  if (!model.periodic()) throw ConfigError("harmonics: model is not time-periodic");
  if (nt == 0) nt = default_quadrature_points(max_order);
  const bool power_of_two = (nt & (nt - 1)) == 0;
  if (!power_of_two || nt < 8 * static_cast<std::size_t>(max_order)) {
    throw InvalidInputError("harmonics: quadrature points must be a power of two and at least 8P");
  }

  HarmonicSet out;
  out.max_order = max_order;
  out.omega = model.omega();
  out.quadrature_points = nt;
  const auto d = static_cast<Eigen::Index>(model.dimension());
  out.blocks.assign(static_cast<std::size_t>(2 * max_order + 1), ComplexMatrix::Zero(d, d));

  const double period = model.period();
  // Compensated sums keep a constant drive exact to rounding.
  std::vector<ComplexMatrix> carry(out.blocks.size(), ComplexMatrix::Zero(d, d));
  for (std::size_t n = 0; n < nt; ++n) {
    const double frac = static_cast<double>(n) / static_cast<double>(nt);
    const ComplexMatrix h = model.sample(period * frac);
    for (int p = -max_order; p <= max_order; ++p) {
      // e^{−ipωt} with ωt = 2π n/Nt; reduce the integer product first.
      const auto reduced = static_cast<long long>(p) * static_cast<long long>(n) % static_cast<long long>(nt);
      const double angle = -kTwoPi * static_cast<double>(reduced) / static_cast<double>(nt);
      const auto i = static_cast<std::size_t>(p + max_order);
      const ComplexMatrix y = std::polar(1.0, angle) * h - carry[i];
      const ComplexMatrix t = out.blocks[i] + y;
      carry[i] = (t - out.blocks[i]) - y;
      out.blocks[i] = t;
    }
  }
  for (auto& b : out.blocks) b /= static_cast<double>(nt);

  const int tail_start = max_order - max_order / 4;
  for (int p = -max_order; p <= max_order; ++p) {
    if (std::abs(p) >= tail_start) out.tail_norm = std::max(out.tail_norm, out.at(p).norm());
  }
  return out;
}

double hermitization_residual(const HarmonicSet& h, double eta) {
  double worst = 0.0;
  for (int p = -h.max_order; p <= h.max_order; ++p) {
    const ComplexMatrix lhs = h.at(p) * std::exp(-eta * p);
    const ComplexMatrix rhs = (h.at(-p) * std::exp(eta * p)).adjoint();
    worst = std::max(worst, (lhs - rhs).norm());
  }
  return worst;
}

SambeOperator sambe_build(const HarmonicSet& h, int cutoff) {
  if (cutoff < 0) throw InvalidInputError("sambe_build: negative cutoff");
  if (cutoff > h.max_order) throw InsufficientHarmonicsError("sambe_build: cutoff exceeds the harmonic order");
  SambeOperator s;
  s.cutoff = cutoff;
  s.block_dim = h.block_dim();
  s.omega = h.omega;
  const auto d = static_cast<Eigen::Index>(s.block_dim);
  const Eigen::Index sites = 2 * cutoff + 1;
  s.matrix = ComplexMatrix::Zero(sites * d, sites * d);
  for (Eigen::Index row = 0; row < sites; ++row) {
    const int m_row = static_cast<int>(row) - cutoff;
    for (Eigen::Index col = 0; col < sites; ++col) {
      const int m_col = static_cast<int>(col) - cutoff;
      s.matrix.block(row * d, col * d, d, d) = h.at(m_row - m_col);
    }
    s.matrix.block(row * d, row * d, d, d).diagonal().array() += m_row * h.omega;
  }
  return s;
}

SambeSpectrum sambe_spectrum(const SambeOperator& s) {
  const SpectralDecomposition dec = eig(s.matrix);
  const auto d = static_cast<Eigen::Index>(s.block_dim);
  const Eigen::Index sites = 2 * s.cutoff + 1;
  SambeSpectrum out;
  out.eigenvalues = dec.eigenvalues;
  const auto n = dec.eigenvalues.size();
  out.populations.resize(sites, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto v = dec.right_eigenvectors.col(j);
    for (Eigen::Index m = 0; m < sites; ++m) out.populations(m, j) = v.segment(m * d, d).squaredNorm();
    out.populations.col(j) /= out.populations.col(j).sum();
    Eigen::Index peak = 0;
    out.populations.col(j).maxCoeff(&peak);
    const int site = static_cast<int>(peak) - s.cutoff;
    out.peak_site.push_back(site);
    out.interior.push_back(std::abs(site) <= s.cutoff - 2);
  }
  return out;
}

double central_zero_gap(const SambeSpectrum& spectrum, double omega) {
  const double period = kTwoPi / omega;
  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < spectrum.eigenvalues.size(); ++j) {
    if (spectrum.peak_site[static_cast<std::size_t>(j)] != 0) continue;
    gap = std::min(gap, std::abs(fold_to_zone(spectrum.eigenvalues(j).real(), period)));
  }
  return gap;
}

ModelPtr case2_undeformed_model(const Case2Params& params, const DriveSpec& drive, double k) {
  BipartiteChainSpec spec;
  spec.momentum = k;
  spec.variant = ChainVariant::temporal_only_deformed;
  spec.t1 = params.t1;
  spec.t2 = params.t2;
  spec.p = params.p;
  spec.mu0 = params.mu0;
  return make_bipartite_chain(spec, drive);
}

ModelPtr deformed_case2_model(const Case2Params& params, const DriveSpec& drive, double k) {
  BipartiteChainSpec spec;
  spec.momentum = k;
  spec.variant = ChainVariant::hermitian_counterpart;
  spec.t1 = params.t1;
  spec.t2 = params.t2;
  spec.p = params.p;
  spec.mu0 = params.mu0;
  return make_bipartite_chain(spec, drive);
}

DeformationSpec case2_deformation(const DriveSpec& drive) { return DeformationSpec::catalog_temporal(1, drive); }

HarmonicSet case2_closed_form_harmonics(const Case2Params& params, double omega, double k, int max_order) {
  if (max_order < 0) throw InvalidInputError("case2_closed_form_harmonics: negative harmonic order");
  HarmonicSet out;
  out.max_order = max_order;
  out.omega = omega;
  const Complex d_upper = -params.t1 - params.t2 * std::exp(Complex(0.0, -k));
  const Complex d_lower = -params.t1 - params.t2 * std::exp(Complex(0.0, k));
  const Complex x = 2.0 * params.p * std::cos(k) - params.mu0 - kI * omega;
  for (int p = -max_order; p <= max_order; ++p) {
    ComplexMatrix h = ComplexMatrix::Zero(2, 2);
    h(0, 1) = d_upper * modified_bessel_i(p + 1, 2.0);
    h(1, 0) = d_lower * ((p - 1) % 2 == 0 ? 1.0 : -1.0) * modified_bessel_i(p - 1, 2.0);
    Complex diag{0.0};
    if (p == 0) diag = omega / 2.0;
    if (p == 1) diag = x / (2.0 * kI);
    if (p == -1) diag = -x / (2.0 * kI);
    h(0, 0) = diag;
    h(1, 1) = -diag;
    out.blocks.push_back(h);
  }
  return out;
}

double modified_bessel_i(int n, double x) {
  if (std::abs(n) > 64) throw DomainError("modified_bessel_i: order outside [-64, 64]");
  if (!(std::abs(x) <= 20.0)) throw DomainError("modified_bessel_i: argument outside [-20, 20]");
  const int order = std::abs(n);
  const double half = std::abs(x) / 2.0;
  // Leading term (x/2)^n / n!, then term ratio (x/2)² / (m (m + n)).
  double term = 1.0;
  for (int i = 1; i <= order; ++i) term *= half / i;
  double sum = term;
  const double q = half * half;
  for (int m = 1; m < 500; ++m) {
    term *= q / (static_cast<double>(m) * static_cast<double>(m + order));
    sum += term;
    if (term <= 1e-17 * sum) break;
  }
  return (x < 0.0 && order % 2 == 1) ? -sum : sum;
}

StarkStudy stark_chain_study(const StarkChainSpec& spec) {
  spec.validate();
  StarkStudy out;
  out.spec = spec;
  const ComplexMatrix h = stark_chain_hamiltonian(spec);
  const SpectralDecomposition dec = eig(h);
  out.eigenvalues = dec.eigenvalues;
  out.eigenvectors = dec.right_eigenvectors;
  const auto n = h.rows();
  out.populations.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out.populations.col(j) = dec.right_eigenvectors.col(j).cwiseAbs2();
    out.populations.col(j) /= out.populations.col(j).sum();
    Eigen::Index peak = 0;
    out.populations.col(j).maxCoeff(&peak);
    out.peak_site.push_back(static_cast<std::size_t>(peak) + 1);
  }

  // Mean rung spacing over the middle half of the sorted real parts.
  const Eigen::Index lo = n / 4;
  const Eigen::Index hi = std::max<Eigen::Index>(lo + 1, n - n / 4 - 1);
  out.ladder_spacing_estimate =
      (out.eigenvalues(hi).real() - out.eigenvalues(lo).real()) / static_cast<double>(hi - lo);

  // (D⁻¹HD)_{lm} = H_{lm} e^{β(l−m)}, evaluated entrywise.
  const double beta = 0.5 * std::log(spec.t_left / spec.t_right);
  const double hop = std::sqrt(spec.t_left * spec.t_right);
  double residual = 0.0;
  for (Eigen::Index l = 0; l < n; ++l) {
    for (Eigen::Index m = 0; m < n; ++m) {
      Complex target{0.0};
      if (l == m) target = h(l, l);
      if (std::abs(l - m) == 1) target = hop;
      const Complex gauged = h(l, m) * std::exp(beta * static_cast<double>(l - m));
      residual = std::max(residual, std::abs(gauged - target));
    }
  }
  out.gauge_residual = residual;
  return out;
}

}  // namespace nonfloquet
