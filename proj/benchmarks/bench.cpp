// Microbenchmarks for the hot paths: collision-sum evaluation, grid
// transforms, and weight-table construction.
#include <benchmark/benchmark.h>

#include "ks/collision.hpp"
#include "ks/diagnostics.hpp"
#include "ks/kernel.hpp"
#include "ks/spectral.hpp"

namespace {

using namespace ks;

const WeightTable& table_for(int N) {
  static std::map<int, WeightTable> cache;
  auto it = cache.find(N);
  if (it == cache.end()) {
    auto cfg = make_config(2, N, M_PI, 2.0);
    it = cache
             .emplace(N, build_weight_table(cfg, KernelSpec::maxwell(2.0),
                                            QuadratureSpec::default_for(cfg)))
             .first;
  }
  return it->second;
}

SpectralField field_for(int N, std::uint64_t seed) {
  auto cfg = make_config(2, N, M_PI, 2.0);
  Rng rng(seed);
  return random_hermitian_field(cfg, rng);
}

void BM_CollisionEval(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const WeightTable& table = table_for(N);
  const SpectralField f = field_for(N, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_collision(f, table).qhat.coeffs().data());
  }
  state.SetComplexityN(N);
}
BENCHMARK(BM_CollisionEval)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_CollisionEvalExtended(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const WeightTable& table = table_for(N);
  const SpectralField f = field_for(N, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_collision_extended(f, table).coeffs().data());
  }
}
BENCHMARK(BM_CollisionEvalExtended)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_InverseTransform(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const SpectralField f = field_for(N, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(inverse_transform(f, 4).values().data());
  }
}
BENCHMARK(BM_InverseTransform)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_ForwardTransform(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const PhysicalField grid = inverse_transform(field_for(N, 3), 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(forward_transform(grid).coeffs().data());
  }
}
BENCHMARK(BM_ForwardTransform)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_TableBuild(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  auto cfg = make_config(2, N, M_PI, 2.0);
  const KernelSpec spec = KernelSpec::maxwell(2.0);
  const auto quad = QuadratureSpec::default_for(cfg);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_weight_table(cfg, spec, quad).gain().data());
  }
}
BENCHMARK(BM_TableBuild)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
