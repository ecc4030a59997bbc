#include "nonfloquet/topology.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>

#include "nonfloquet/errors.hpp"
#include "nonfloquet/parallel.hpp"

namespace nonfloquet {

namespace {

ComplexMatrix sigma_z() {
  ComplexMatrix s = ComplexMatrix::Zero(2, 2);
  s(0, 0) = 1.0;
  s(1, 1) = -1.0;
  return s;
}

constexpr double kGaplessThreshold = 1e-12;
constexpr double kBranchGuard = 1e-12;
constexpr double kIntegralityGuard = 1e-6;

int rounded_winding(double accumulated) {
  const double w = accumulated / kTwoPi;
  const double r = std::round(w);
  if (std::abs(w - r) > kIntegralityGuard) {
    throw NumericalError("winding_numbers: accumulated phase is not an integer multiple of 2π");
  }
  return static_cast<int>(r);
}

}  // namespace

double chiral_drive_check(const Model& model, std::size_t t_samples) {
  if (model.dimension() != 2) throw DimensionError("chiral_drive_check: needs a two-band model");
  if (t_samples < 1) throw InvalidInputError("chiral_drive_check: need at least one sample");
  const ComplexMatrix sz = sigma_z();
  const double period = model.period();
  double worst = 0.0;
  for (std::size_t i = 0; i < t_samples; ++i) {
    const double t = period * static_cast<double>(i) / static_cast<double>(t_samples);
    worst = std::max(worst, norm_two(sz * model.sample(-t) * sz + model.sample(t)));
  }
  return worst;
}

double chiral_drive_check(const BlochFamily& family, std::size_t t_samples, std::size_t k_samples) {
  if (k_samples < 1) throw InvalidInputError("chiral_drive_check: need at least one k sample");
  double worst = 0.0;
  for (std::size_t n = 0; n < k_samples; ++n) {
    const double k = kTwoPi * static_cast<double>(n) / static_cast<double>(k_samples);
    worst = std::max(worst, chiral_drive_check(*family(k), t_samples));
  }
  return worst;
}

ComplexMatrix effective_hamiltonian(const ComplexMatrix& u, double period) {
  const SpectralDecomposition d = eig(u);
  for (Eigen::Index i = 0; i < d.eigenvalues.size(); ++i) {
    const Complex lambda = d.eigenvalues(i);
    if (std::abs(lambda.imag()) <= kBranchGuard * std::abs(lambda) && lambda.real() < 0.0) {
      throw BranchCutError("effective_hamiltonian: eigenvalue on the branch cut of the logarithm");
    }
  }
  const FloquetSpectrum s = quasienergies(d, period);
  Eigen::PartialPivLU<ComplexMatrix> lu(s.states);
  return s.states * s.quasienergies.asDiagonal() * lu.inverse();
}

ChiralFrame half_period_frame(const Model& model, std::size_t slices) {
  if (model.dimension() != 2) throw DimensionError("half_period_frame: needs a two-band model");
  const double period = model.period();
  ModelPtr handle(&model, [](const Model*) {});
  const std::size_t half = std::max<std::size_t>(1, slices / 2);
  const ComplexMatrix v = propagate({handle, period / 2.0, period, half}).matrix;
  Eigen::FullPivLU<ComplexMatrix> lu(v);
  if (!lu.isInvertible()) throw SingularPropagatorError("half_period_frame: half-period propagator is singular");
  const ComplexMatrix v_inv = lu.inverse();
  const ComplexMatrix sz = sigma_z();

  ChiralFrame frame;
  frame.u1 = sz * v_inv * sz * v;
  frame.u2 = v * sz * v_inv * sz;
  frame.heff1 = effective_hamiltonian(frame.u1, period);
  frame.heff2 = effective_hamiltonian(frame.u2, period);
  frame.offdiag_residual = std::max(frame.heff1.diagonal().cwiseAbs().maxCoeff(),
                                    frame.heff2.diagonal().cwiseAbs().maxCoeff());
  return frame;
}

double accumulated_phase(const ComplexVector& samples) {
  double total = 0.0;
  const auto n = samples.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex next = samples((i + 1) % n);
    total += std::arg(next / samples(i));
  }
  return total;
}

WindingReport winding_numbers(const BlochFamily& family, std::size_t nk, std::size_t slices) {
  if (nk < 64) throw InvalidInputError("winding_numbers: need at least 64 k points");
  const double step = kTwoPi / static_cast<double>(nk);

  struct Sample {
    Complex q1, q2, l1, l2;
    bool perturbed = false;
  };
  const auto samples = parallel_map(nk, [&](std::size_t i) {
    const double k = step * static_cast<double>(i);
    Sample s;
    ChiralFrame frame;
    try {
      frame = half_period_frame(*family(k), slices);
    } catch (const BranchCutError&) {
      frame = half_period_frame(*family(k + 0.5 * step), slices);
      s.perturbed = true;
    }
    s.q1 = frame.heff1(0, 1);
    s.q2 = frame.heff2(0, 1);
    s.l1 = frame.heff1(1, 0);
    s.l2 = frame.heff2(1, 0);
    return s;
  });

  WindingReport report;
  report.k_points = nk;
  ComplexVector q1(static_cast<Eigen::Index>(nk)), q2(q1.size()), l1(q1.size()), l2(q1.size());
  for (std::size_t i = 0; i < nk; ++i) {
    const auto& s = samples[i];
    for (Complex z : {s.q1, s.q2, s.l1, s.l2}) {
      if (std::abs(z) < kGaplessThreshold) throw GaplessError("winding_numbers: off-diagonal entry vanishes");
    }
    const auto j = static_cast<Eigen::Index>(i);
    q1(j) = s.q1;
    q2(j) = s.q2;
    l1(j) = s.l1;
    l2(j) = s.l2;
    if (s.perturbed) ++report.perturbed_points;
  }

  // i∮q⁻¹dq = i·(i Δarg q) = −Δarg q.
  report.phase_accumulation1 = -accumulated_phase(q1);
  report.phase_accumulation2 = -accumulated_phase(q2);
  report.w1 = rounded_winding(report.phase_accumulation1);
  report.w2 = rounded_winding(report.phase_accumulation2);
  report.lower_left_w1 = rounded_winding(-accumulated_phase(l1));
  report.lower_left_w2 = rounded_winding(-accumulated_phase(l2));
  report.reciprocal_consistent = report.lower_left_w1 == -report.w1 && report.lower_left_w2 == -report.w2;
  report.nu0 = 0.5 * (report.w1 + report.w2);
  report.nu_pi = 0.5 * (report.w1 - report.w2);
  return report;
}

}  // namespace nonfloquet
