#include <benchmark/benchmark.h>

#include "cantorlip/lipnorms.hpp"
#include "cantorlip/optimization.hpp"
#include "cantorlip/oracle.hpp"
#include "cantorlip/random.hpp"

namespace {

using namespace cantorlip;

WalshPolynomial sample(unsigned level) {
  Rng rng(level);
  PolynomialSampling s;
  s.density_percent = 100;
  return random_polynomial(rng, level, s);
}

template <SeminormValue (*Norm)(const WalshPolynomial&)>
void bm_norm(benchmark::State& state) {
  const auto f = sample(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Norm(f));
}

void bm_unit_ball_vertices(benchmark::State& state) {
  const auto sys = constraints_for(state.range(0) == 0 ? NormTag::d : NormTag::lambda, 2);
  for (auto _ : state) benchmark::DoNotOptimize(unit_ball_vertices(sys));
}

void bm_mk_distance(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  const CantorPoint x(n, 0);
  const CantorPoint y(n, (1U << n) - 1);
  for (auto _ : state) benchmark::DoNotOptimize(mk_distance(NormTag::lambda, x, y));
}

}  // namespace

BENCHMARK(bm_norm<&lip_d_formula>)->Name("lip_d_formula")->DenseRange(2, 8, 2);
BENCHMARK(bm_norm<&lip_d_fast>)->Name("lip_d_fast")->DenseRange(2, 10, 2);
BENCHMARK(bm_norm<&lip_lambda>)->Name("lip_lambda")->DenseRange(2, 10, 2);
BENCHMARK(bm_norm<&oracle_lip_d>)->Name("oracle_lip_d")->DenseRange(2, 10, 2);
BENCHMARK(bm_norm<&oracle_lip_lambda>)->Name("oracle_lip_lambda")->DenseRange(2, 10, 2);
BENCHMARK(bm_unit_ball_vertices)->Arg(0)->Arg(1);
BENCHMARK(bm_mk_distance)->DenseRange(2, 4);

BENCHMARK_MAIN();
