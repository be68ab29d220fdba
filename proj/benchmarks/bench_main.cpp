#include <benchmark/benchmark.h>

#include <random>

#include "twistcoh/cohomology.hpp"
#include "twistcoh/exactalg.hpp"
#include "twistcoh/hyperspec.hpp"
#include "twistcoh/logforms.hpp"

using namespace twistcoh;

namespace {

const QPoly kPaperF({-1, -4, 0, 4});

QMatrix dense_matrix(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> entry(-9, 9);
  QMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m.at(r, c) = entry(rng);
  return m;
}

void BM_ReducedEchelon(benchmark::State& state) {
  const QMatrix m = dense_matrix(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(reduced_echelon(m));
}
BENCHMARK(BM_ReducedEchelon)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_Window(benchmark::State& state) {
  const Ring r = Ring::curve({kPaperF, true, true});
  const Form1 omega{r.constant(1)};
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_window(r, omega, n));
}
BENCHMARK(BM_Window)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_TwistedEllipticCohomology(benchmark::State& state) {
  const Ring r = Ring::curve({kPaperF});
  const Form1 omega{r.constant(1)};
  for (auto _ : state) benchmark::DoNotOptimize(twisted_cohomology(r, omega));
}
BENCHMARK(BM_TwistedEllipticCohomology);

void BM_ResonantTorus(benchmark::State& state) {
  const Ring t = Ring::torus();
  const Form1 omega{t.laurent_monomial(-state.range(0), 0)};
  for (auto _ : state) benchmark::DoNotOptimize(twisted_cohomology(t, omega));
}
BENCHMARK(BM_ResonantTorus)->Arg(2)->Arg(7)->Arg(30);

void BM_GaugeChainMap(benchmark::State& state) {
  const Ring r = Ring::curve({kPaperF, true, true});
  const Form1 psi1{r.monomial(1, 1, -1)};
  const RingElement g = r.monomial(3, 2, -1);
  std::vector<RingElement> samples;
  for (int i = 0; i <= 6; ++i)
    for (int j = -1; j <= 1; ++j) samples.push_back(r.monomial(1, i, j));
  for (auto _ : state) benchmark::DoNotOptimize(verify_chain_map(r, psi1, g, samples));
}
BENCHMARK(BM_GaugeChainMap);

void BM_LogDerivative(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Chart ch = Chart::make(n, 1);
  MPoly f(n);
  for (int i = 1; i <= n; ++i) f += MPoly::variable(n, i) * MPoly::variable(n, i);
  LogForm a(ch, 1);
  for (int i = 1; i <= n; ++i) a += LogForm::basis(ch, {i}, f * MPoly::variable(n, i));
  for (auto _ : state) benchmark::DoNotOptimize(d_log(a));
}
BENCHMARK(BM_LogDerivative)->Arg(2)->Arg(4)->Arg(6);

void BM_HyperPage(benchmark::State& state) {
  TwoTermPage p;
  p.dim00 = p.dim01 = p.dim10 = p.dim11 = 6;
  p.d1 = dense_matrix(6, 2);
  p.d1p = dense_matrix(6, 3);
  for (auto _ : state) benchmark::DoNotOptimize(hypercohomology(p));
}
BENCHMARK(BM_HyperPage);

}  // namespace

BENCHMARK_MAIN();
