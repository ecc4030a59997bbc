#include <random>

#include <benchmark/benchmark.h>

#include "nonfloquet/nonfloquet.hpp"

namespace {

using namespace nonfloquet;

ComplexMatrix random_matrix(Eigen::Index n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  ComplexMatrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
  }
  return a;
}

BipartiteChainSpec chain(std::size_t cells) {
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

void BM_Expm(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  const ComplexMatrix a = random_matrix(n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(expm(a, 0.01));
}
BENCHMARK(BM_Expm)->Arg(2)->Arg(20)->Arg(40)->Arg(80);

void BM_FloquetOperator(benchmark::State& state) {
  const ModelPtr m = make_bipartite_chain(chain(static_cast<std::size_t>(state.range(0))), {0.5, 0.0});
  for (auto _ : state) benchmark::DoNotOptimize(floquet_operator(*m, 0.0, 1024));
  state.SetItemsProcessed(state.iterations() * 1024);
}
BENCHMARK(BM_FloquetOperator)->Arg(1)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_FloquetSpectrum(benchmark::State& state) {
  const ModelPtr m = make_bipartite_chain(chain(static_cast<std::size_t>(state.range(0))), {0.5, 0.0});
  for (auto _ : state) benchmark::DoNotOptimize(floquet_spectrum(*m, 0.0, 256));
}
BENCHMARK(BM_FloquetSpectrum)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_Harmonics(benchmark::State& state) {
  const ModelPtr m = case2_undeformed_model({0.05, 0.5, -0.1, -1.0}, {200.0, 0.0}, 0.7);
  const int p = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(harmonics(*m, p));
}
BENCHMARK(BM_Harmonics)->Arg(8)->Arg(16)->Arg(32);

void BM_SambeSpectrum(benchmark::State& state) {
  const int cutoff = static_cast<int>(state.range(0));
  const HarmonicSet h = harmonics(*deformed_case2_model({0.05, 0.5, -0.1, -1.0}, {200.0, 0.0}, 0.7), cutoff);
  for (auto _ : state) benchmark::DoNotOptimize(sambe_spectrum(sambe_build(h, cutoff)));
}
BENCHMARK(BM_SambeSpectrum)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_Winding(benchmark::State& state) {
  BipartiteChainSpec s;
  s.momentum = 0.0;
  s.t1 = 0.05;
  s.t2 = 0.5;
  s.p = -0.1;
  s.mu0 = -1.0;
  const BlochFamily family = bloch_family(s, {0.5, 0.0});
  for (auto _ : state) benchmark::DoNotOptimize(winding_numbers(family, 64, 1024));
}
BENCHMARK(BM_Winding)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
