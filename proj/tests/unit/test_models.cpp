#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "nonfloquet/deformation.hpp"
#include "nonfloquet/errors.hpp"
#include "nonfloquet/models.hpp"

namespace nonfloquet {
namespace {

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

std::vector<double> sorted_real(const ComplexVector& v) {
  std::vector<double> out;
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i).real());
  std::sort(out.begin(), out.end());
  return out;
}

TEST(BipartiteChain, HandAssembledTwoCellMatrix) {
  const double omega = 0.5;
  const double phase = 0.2;
  const double t = 0.37;
  const double th = omega * t + phase;
  const BipartiteChainSpec spec = nh_chain(2);
  const ComplexMatrix h = make_bipartite_chain(spec, {omega, phase})->sample(t);

  const Complex up = std::exp(Complex(2.0 * std::cos(th), -th));
  const Complex down = std::exp(Complex(-2.0 * std::cos(th), th));
  const Complex mu = Complex(-1.0, omega) * std::sin(th) - omega / 2.0;
  const double s = std::sin(th);
  // Sites a1, b1, a2, b2.
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(0, 0) = -mu;
  expected(1, 1) = mu;
  expected(2, 2) = -mu;
  expected(3, 3) = mu;
  expected(0, 1) = -0.025 * up;
  expected(1, 0) = -0.1 * down;
  expected(2, 3) = -0.025 * up;
  expected(3, 2) = -0.1 * down;
  expected(1, 2) = -0.5 * down;
  expected(2, 1) = -0.5 * up;
  expected(0, 2) = -0.05 * s;
  expected(2, 0) = -0.2 * s;
  expected(1, 3) = 0.05 * s;
  expected(3, 1) = 0.2 * s;
  EXPECT_LT((h - expected).norm(), 1e-15);
}

TEST(BipartiteChain, CounterpartIsHermitianAndNonHermitianIsNot) {
  BipartiteChainSpec c;
  c.cells = 5;
  c.t1 = 0.05;
  c.t2 = 0.5;
  c.p = -0.1;
  c.mu0 = -1.0;
  const ModelPtr counterpart = make_bipartite_chain(c, {0.5, 0.0});
  const ModelPtr nh = make_bipartite_chain(nh_chain(5), {0.5, 0.0});
  for (double t : {0.0, 1.1, 3.3, 9.0}) {
    EXPECT_LT(hermiticity_defect(counterpart->sample(t)), 1e-15);
    if (t > 0.0) {
      EXPECT_GT(hermiticity_defect(nh->sample(t)), 0.1);
    }
  }
}

TEST(BipartiteChain, MomentumBlocksReproducePeriodicSpectrum) {
  const std::size_t cells = 6;
  BipartiteChainSpec spec = nh_chain(cells);
  spec.variant = ChainVariant::hermitian_counterpart;
  spec.t1 = 0.3;
  spec.t2 = 0.7;
  spec.p = 0.2;
  spec.boundary = Boundary::periodic;
  const DriveSpec drive{0.5, 0.4};
  const double t = 1.7;
  const ComplexVector full = eig(make_bipartite_chain(spec, drive)->sample(t)).eigenvalues;

  std::vector<double> blocks;
  const BlochFamily family = bloch_family(spec, drive);
  for (std::size_t n = 0; n < cells; ++n) {
    const ComplexVector e = eig(family(kTwoPi * static_cast<double>(n) / cells)->sample(t)).eigenvalues;
    blocks.push_back(e(0).real());
    blocks.push_back(e(1).real());
  }
  std::sort(blocks.begin(), blocks.end());
  const auto full_sorted = sorted_real(full);
  for (std::size_t i = 0; i < blocks.size(); ++i) EXPECT_NEAR(full_sorted[i], blocks[i], 1e-12);
}

TEST(CounterpartParams, ChainFromReferenceParameters) {
  const CounterpartParams p = hermitian_counterpart_params(0.025, 0.1, -0.5, -0.05, -0.2);
  EXPECT_NEAR(p.t1, 0.05, 1e-15);
  EXPECT_NEAR(p.t2, 0.5, 1e-15);
  EXPECT_NEAR(p.p, -0.1, 1e-15);
  EXPECT_NEAR(p.beta, -std::log(2.0), 1e-15);
  EXPECT_TRUE(p.gauge_consistent);
}

TEST(CounterpartParams, SymmetricChainIsAlreadyHermitian) {
  const CounterpartParams p = hermitian_counterpart_params(0.3, 0.3, 0.1, 0.2, 0.2);
  EXPECT_EQ(p.beta, 0.0);
  EXPECT_NEAR(p.t1, 0.3, 1e-15);
  EXPECT_NEAR(p.p, 0.2, 1e-15);
}

TEST(CounterpartParams, SpatialGaugeLeavesSpectrumUnchanged) {
  const CounterpartParams p = hermitian_counterpart_params(0.4, 0.1, -0.5, -0.2, -0.05);
  EXPECT_NEAR(p.beta, std::log(2.0), 1e-15);

  BipartiteChainSpec spec = nh_chain(4);
  spec.r1 = 0.4;
  spec.r2 = 0.1;
  spec.q1 = -0.2;
  spec.q2 = -0.05;
  const DriveSpec drive{0.5, 0.0};
  // Constant part of the catalog generator only: a static similarity.
  DeformationSpec gauge = DeformationSpec::catalog_chain(4, p.beta, drive);
  for (auto& site : gauge.sites) {
    site.constant = site.constant.real();
    site.linear = 0.0;
    site.cos_coeffs.clear();
  }
  const ModelPtr plain = make_bipartite_chain(spec, drive);
  const ModelPtr gauged = transform_model(plain, gauge);
  for (double t : {0.4, 2.5}) {
    const ComplexVector a = eig(plain->sample(t)).eigenvalues;
    const ComplexVector b = eig(gauged->sample(t)).eigenvalues;
    EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(CounterpartParams, RejectsMixedSigns) {
  EXPECT_THROW(hermitian_counterpart_params(0.1, -0.1, 0.0, 0.0, 0.0), UnsupportedParametersError);
  EXPECT_THROW(hermitian_counterpart_params(0.1, 0.1, 0.0, 0.2, -0.2), UnsupportedParametersError);
  EXPECT_FALSE(hermitian_counterpart_params(0.4, 0.1, 0.0, 0.2, 0.1).gauge_consistent);
}

TEST(StepQuench, SampleAndBreakpoints) {
  StepQuenchSpec spec;
  spec.steps = {{0.2, 1.0, 1.0, {1.0, 0.0}}, {0.5, Complex(2.0, 0.5), 3.0, {0.0, 1.0}}};
  spec.k = {0.3, -0.4};
  spec.gamma_z = 0.25;
  const ModelPtr m = make_step_quench(spec);
  EXPECT_NEAR(m->period(), 0.7, 1e-15);
  const auto bp = m->breakpoints();
  ASSERT_EQ(bp.size(), 2u);
  EXPECT_DOUBLE_EQ(bp[0], 0.0);
  EXPECT_DOUBLE_EQ(bp[1], 0.2);

  // Second step: −2(J¹ e^{ik_y}|0⟩⟨1| + J² e^{−ik_y}|1⟩⟨0|) + Γσ_z.
  const ComplexMatrix h = m->sample(0.5);
  const Complex e = std::exp(Complex(0.0, -0.4));
  EXPECT_LT(std::abs(h(0, 1) + 2.0 * Complex(2.0, 0.5) * e), 1e-15);
  EXPECT_LT(std::abs(h(1, 0) + 2.0 * 3.0 * std::conj(e)), 1e-15);
  EXPECT_DOUBLE_EQ(h(0, 0).real(), 0.25);
  EXPECT_DOUBLE_EQ(h(1, 1).real(), -0.25);
}

TEST(StepQuench, SevenStepLayout) {
  const StepQuenchSpec spec = StepQuenchSpec::seven_step(2.0, 1.4);
  ASSERT_EQ(spec.steps.size(), 7u);
  EXPECT_NEAR(spec.period(), 1.4, 1e-15);
  for (int n = 1; n <= 7; ++n) {
    const auto& s = spec.steps[static_cast<std::size_t>(n - 1)];
    EXPECT_NEAR(s.bond[0], std::cos(kTwoPi * n / 7.0), 1e-15);
    EXPECT_NEAR(s.bond[1], std::sin(kTwoPi * n / 7.0), 1e-15);
    EXPECT_EQ(s.j1, s.j2);
  }
}

TEST(StarkChain, MatrixEntries) {
  const StarkChainSpec spec{4, 1.5, 0.5, 2.0};
  const ComplexMatrix h = stark_chain_hamiltonian(spec);
  for (Eigen::Index l = 0; l < 4; ++l) EXPECT_DOUBLE_EQ(h(l, l).real(), 2.0 * static_cast<double>(l + 1));
  EXPECT_DOUBLE_EQ(h(0, 1).real(), 1.5);
  EXPECT_DOUBLE_EQ(h(1, 0).real(), 0.5);
  EXPECT_EQ(h(0, 2), Complex(0.0));
}

TEST(Models, ChiralOperatorAndValidation) {
  const ComplexMatrix c = chiral_operator(3);
  EXPECT_EQ(c.rows(), 6);
  for (Eigen::Index i = 0; i < 6; ++i) EXPECT_EQ(c(i, i).real(), i % 2 == 0 ? 1.0 : -1.0);
  EXPECT_THROW((DriveSpec{0.0, 0.0}.validate()), ConfigError);
  BipartiteChainSpec bad;
  bad.cells = 0;
  EXPECT_THROW(bad.validate(), ConfigError);
  EXPECT_THROW((StarkChainSpec{1, 1.0, 1.0, 0.0}.validate()), ConfigError);
  EXPECT_THROW(make_step_quench(StepQuenchSpec{}), ConfigError);
}

}  // namespace
}  // namespace nonfloquet
