// Parallel kernels against their serial references. Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "kstress/corpus.hpp"
#include "kstress/detect.hpp"
#include "kstress/reference.hpp"

using namespace kstress;

namespace {

const PolytopeInstance& instance(int which) {
  static const std::vector<PolytopeInstance> all{cyclic(10, 4), cyclic(10, 6), cross_polytope(5)};
  return all.at(static_cast<std::size_t>(which));
}

RatMatrix rigidity(int which, int k) {
  const auto& p = instance(which);
  return rigidity_matrix(p.complex, p.embedding, k).matrix;
}

void BM_kernel_bareiss(benchmark::State& state) {
  const RatMatrix m = rigidity(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(kernel_basis(m));
}

void BM_kernel_serial(benchmark::State& state) {
  const RatMatrix m = rigidity(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::kernel_basis_serial(m));
}

void BM_facets_parallel(benchmark::State& state) {
  const auto& p = instance(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_facets(p.embedding));
}

void BM_facets_serial(benchmark::State& state) {
  const auto& p = instance(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::brute_force_facets_serial(p.embedding));
}

void BM_missing_parallel(benchmark::State& state) {
  const auto& p = instance(static_cast<int>(state.range(0)));
  const auto skel = skeleton(p.complex, 1);
  const auto basis = stress_basis(p.complex, p.embedding, 2);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_missing_faces(skel, basis, p.d(), 2));
}

void BM_missing_serial(benchmark::State& state) {
  const auto& p = instance(static_cast<int>(state.range(0)));
  const auto skel = skeleton(p.complex, 1);
  const auto basis = stress_basis(p.complex, p.embedding, 2);
  for (auto _ : state) benchmark::DoNotOptimize(reference::enumerate_missing_faces_serial(skel, basis, p.d(), 2));
}

}  // namespace

// Args: instance (0 = cyclic(10,4), 1 = cyclic(10,6), 2 = cross(5)), degree k.
BENCHMARK(BM_kernel_bareiss)->Args({0, 2})->Args({1, 2})->Args({1, 3})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_kernel_serial)->Args({0, 2})->Args({1, 2})->Args({1, 3})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_facets_parallel)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_facets_serial)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_missing_parallel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_missing_serial)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
