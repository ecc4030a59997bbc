#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nonfloquet/deformation.hpp"
#include "nonfloquet/errors.hpp"
#include "test_support.hpp"

namespace nonfloquet {
namespace {

using testing::pauli_x;
using testing::pauli_y;
using testing::pauli_z;

constexpr double kOmega = 0.5;

BipartiteChainSpec nh_chain(std::size_t cells) {
  BipartiteChainSpec s;
  s.variant = ChainVariant::non_hermitian;
  s.cells = cells;
  s.r1 = 0.025;
  s.r2 = 0.1;
  s.v = -0.5;
  s.q1 = -0.05;
  s.q2 = -0.2;
  s.mu0 = -1.0;
  return s;
}

BipartiteChainSpec counterpart_chain(std::size_t cells) {
  BipartiteChainSpec s;
  s.cells = cells;
  s.t1 = 0.05;
  s.t2 = 0.5;
  s.p = -0.1;
  s.mu0 = -1.0;
  return s;
}

DeformationSpec zero_generator(std::size_t dim, double omega) {
  DeformationSpec g;
  g.omega = omega;
  g.sites.resize(dim);
  return g;
}

std::vector<double> random_times(std::size_t n, double span, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, span);
  std::vector<double> ts(n);
  for (auto& t : ts) t = u(rng);
  return ts;
}

TEST(Transform, ZeroGeneratorIsIdentity) {
  const ModelPtr m = make_bipartite_chain(nh_chain(3), {kOmega, 0.0});
  const ModelPtr d = transform_model(m, zero_generator(6, kOmega));
  for (double t : {0.0, 1.7, 8.2}) EXPECT_LT((d->sample(t) - m->sample(t)).norm(), 1e-15);
  EXPECT_TRUE(d->periodic());
}

TEST(Transform, ConstantRealGeneratorKeepsSpectrum) {
  const ModelPtr m = make_bipartite_chain(nh_chain(3), {kOmega, 0.0});
  DeformationSpec g = zero_generator(6, kOmega);
  for (std::size_t i = 0; i < 6; ++i) g.sites[i].constant = 0.3 * static_cast<double>(i) - 0.5;
  const FloquetSpectrum a = floquet_spectrum(*m, 0.0, 1024, false);
  const FloquetSpectrum b = floquet_spectrum(*transform_model(m, g), 0.0, 1024, false);
  EXPECT_LT(spectrum_distance(a.quasienergies, b.quasienergies, a.period), 1e-10);
}

TEST(Transform, InverseUndoesTheDeformation) {
  const ModelPtr m = make_bipartite_chain(nh_chain(4), {kOmega, 0.3});
  const DeformationSpec g = DeformationSpec::catalog_chain(4, -0.4, {kOmega, 0.3});
  const ModelPtr back = transform_model(transform_model(m, g), g.inverse());
  for (double t : {0.2, 3.0, 11.0}) {
    EXPECT_LT((back->sample(t) - m->sample(t)).norm(), 1e-12 * m->sample(t).norm());
  }
}

TEST(Transform, TraceGainsGeneratorRate) {
  const ModelPtr m = make_bipartite_chain(nh_chain(2), {kOmega, 0.0});
  DeformationSpec g = DeformationSpec::catalog_chain(2, 0.2, {kOmega, 0.0});
  g.sites[0].sin_coeffs = {Complex(0.3, -0.1), Complex(0.05)};
  const ModelPtr d = transform_model(m, g);
  for (double t : {0.4, 2.2}) {
    const Complex expected = m->sample(t).trace() + kI * g.gamma_dot(t).sum();
    EXPECT_LT(std::abs(d->sample(t).trace() - expected), 1e-13);
  }
}

TEST(Transform, GeneratorDerivativeMatchesFiniteDifference) {
  DeformationSpec g = DeformationSpec::catalog_chain(1, 0.7, {kOmega, 0.4});
  g.sites[1].sin_coeffs = {0.0, Complex(0.2, 0.3)};
  const double t = 1.3;
  const double h = 1e-5;
  const ComplexVector fd = (g.gamma(t + h) - g.gamma(t - h)) / (2.0 * h);
  EXPECT_LT((fd - g.gamma_dot(t)).norm(), 1e-9);
}

TEST(Transform, CatalogMapsChainOntoCounterpart) {
  const std::size_t cells = 5;
  const DriveSpec drive{kOmega, 0.0};
  const CounterpartParams cp = hermitian_counterpart_params(0.025, 0.1, -0.5, -0.05, -0.2);
  const ModelPtr deformed =
      transform_model(make_bipartite_chain(nh_chain(cells), drive), DeformationSpec::catalog_chain(cells, cp.beta, drive));
  const ModelPtr target = make_bipartite_chain(counterpart_chain(cells), drive);
  EXPECT_TRUE(deformed->periodic());
  for (double t : random_times(64, 40.0, 41)) {
    const ComplexMatrix h = deformed->sample(t);
    EXPECT_LT(hermiticity_defect(h), 1e-13);
    EXPECT_LT((h - target->sample(t)).norm(), 1e-13);
  }
}

TEST(Transform, RealDriftIsNotPeriodic) {
  const ModelPtr m = make_static_model(pauli_x(), 1.0);
  DeformationSpec g = zero_generator(2, 1.0);
  g.sites[0].linear = 0.1;
  EXPECT_FALSE(transform_model(m, g)->periodic());
  EXPECT_THROW(transform_model(m, zero_generator(3, 1.0)), DimensionError);
}

TEST(PseudoHermiticity, HermitianStaticModelWithoutDeformation) {
  std::mt19937_64 rng(42);
  const ModelPtr m = make_static_model(testing::random_hermitian(4, rng), 1.0);
  const auto r = pseudo_hermiticity_residual(*m, zero_generator(4, 1.0), {0.0, 0.5, 1.0});
  EXPECT_LT(r.residual_norm, 1e-15);
}

TEST(PseudoHermiticity, CatalogPairSatisfiesTheCondition) {
  const DriveSpec drive{kOmega, 0.0};
  const CounterpartParams cp = hermitian_counterpart_params(0.025, 0.1, -0.5, -0.05, -0.2);
  const ModelPtr m = make_bipartite_chain(nh_chain(4), drive);
  const auto r = pseudo_hermiticity_residual(*m, DeformationSpec::catalog_chain(4, cp.beta, drive),
                                             random_times(64, 4.0 * kPi, 43));
  EXPECT_LT(r.residual_norm, 1e-10);
  EXPECT_EQ(r.sampled_times.size(), 64u);
}

TEST(PseudoHermiticity, MismatchedGainProfileFails) {
  const DriveSpec drive{kOmega, 0.0};
  const CounterpartParams cp = hermitian_counterpart_params(0.025, 0.1, -0.5, -0.05, -0.2);
  const ModelPtr m = make_bipartite_chain(nh_chain(4), drive);
  DeformationSpec g = DeformationSpec::catalog_chain(4, cp.beta, drive);
  for (auto& s : g.sites) s.cos_coeffs[0] = -s.cos_coeffs[0];
  const auto times = random_times(64, 4.0 * kPi, 44);
  const double residual = pseudo_hermiticity_residual(*m, g, times).residual_norm;
  EXPECT_GT(residual, 0.1);
  double defect = 0.0;
  const ModelPtr d = transform_model(m, g);
  for (double t : times) defect = std::max(defect, hermiticity_defect(d->sample(t)));
  EXPECT_GT(defect, 0.1);
}

TEST(PseudoHermiticity, ImaginaryGeneratorChangesAreUnitaryGauges) {
  // Flipping the sign of the imaginary linear term multiplies S by a unitary
  // factor, so both the condition and Hermiticity survive.
  const DriveSpec drive{kOmega, 0.0};
  const CounterpartParams cp = hermitian_counterpart_params(0.025, 0.1, -0.5, -0.05, -0.2);
  const ModelPtr m = make_bipartite_chain(nh_chain(4), drive);
  DeformationSpec g = DeformationSpec::catalog_chain(4, cp.beta, drive);
  for (auto& s : g.sites) s.linear = -s.linear;
  const auto times = random_times(32, 4.0 * kPi, 45);
  EXPECT_LT(pseudo_hermiticity_residual(*m, g, times).residual_norm, 1e-10);
  const ModelPtr d = transform_model(m, g);
  for (double t : times) EXPECT_LT(hermiticity_defect(d->sample(t)), 1e-13);
}

TEST(PseudoHermiticity, RejectsIllConditionedGenerator) {
  const DriveSpec drive{kOmega, 0.0};
  const ModelPtr m = make_bipartite_chain(nh_chain(20), drive);
  EXPECT_THROW(pseudo_hermiticity_residual(*m, DeformationSpec::catalog_chain(20, -std::log(2.0), drive), {0.0}),
               IllConditionedError);
}

TEST(GeneralizedShift, Examples) {
  const double period = 2.0;
  const double omega = kTwoPi / period;
  DeformationSpec periodic = zero_generator(2, omega);
  periodic.sites[0].cos_coeffs = {Complex(0.4, 0.2)};
  periodic.sites[1].sin_coeffs = {1.0, 2.0};
  EXPECT_LT(generalized_shift(periodic, period).norm(), 1e-15);

  DeformationSpec half = zero_generator(1, omega);
  half.sites[0].linear = Complex(0.0, -omega / 2.0);
  EXPECT_LT(std::abs(generalized_shift(half, period)(0) - omega / 2.0), 1e-15);

  DeformationSpec drift = zero_generator(1, omega);
  drift.sites[0].linear = 0.3;
  EXPECT_LT(std::abs(generalized_shift(drift, period)(0) - Complex(0.0, 0.3)), 1e-15);
}

TEST(SpectraShift, IdenticalAndMismatchedModels) {
  const ModelPtr a = make_bipartite_chain(counterpart_chain(3), {kOmega, 0.0});
  BipartiteChainSpec other = counterpart_chain(3);
  other.t2 = 0.9;
  const ModelPtr b = make_bipartite_chain(other, {kOmega, 0.0});
  EXPECT_LT(spectra_shift_check(*a, *a, 0.0, 512), 1e-14);
  EXPECT_GT(spectra_shift_check(*a, *b, 0.1234, 512), 0.05);
}

TEST(SpectraShift, HalfFrequencyShiftOnSmallChain) {
  const DriveSpec drive{kOmega, 0.0};
  const ModelPtr a = make_bipartite_chain(nh_chain(4), drive);
  const ModelPtr b = make_bipartite_chain(counterpart_chain(4), drive);
  EXPECT_LT(spectra_shift_check(*a, *b, kOmega / 2.0, 4096), 1e-6);
}

TEST(PtCheck, Examples) {
  // Real symmetric generator: conj(U) = U⁻¹ already.
  EXPECT_LT(pt_check(expm(pauli_x(), 1.0), pauli_x()), 1e-15);
  // Balanced gain and loss, generator iσ_z: σ_x swaps e and 1/e.
  EXPECT_LT(pt_check(expm(kI * pauli_z(), 1.0), pauli_x()), 1e-15);
  // σ_y generator: conj(U) = U, so with P = I the residual is 2|sin t|;
  // P = σ_x flips σ_y and restores the symmetry.
  const double t = 0.6;
  const ComplexMatrix u = expm(pauli_y(), t);
  EXPECT_NEAR(pt_check(u, ComplexMatrix::Identity(2, 2)), 2.0 * std::sin(t), 1e-14);
  EXPECT_LT(pt_check(u, pauli_x()), 1e-15);
  EXPECT_LT(pt_check(u, u, pauli_x()), 1e-15);
  EXPECT_THROW(pt_check(ComplexMatrix::Zero(2, 2), pauli_x()), SingularPropagatorError);
}

TEST(PtCheck, SublatticeSwap) {
  const ComplexMatrix p = sublattice_swap(2);
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(0, 1) = expected(1, 0) = expected(2, 3) = expected(3, 2) = 1.0;
  EXPECT_EQ(p, expected);
}

}  // namespace
}  // namespace nonfloquet
