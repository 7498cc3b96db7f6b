// Serial reference vs OpenMP kernels. Sizes match the doubled plane:
// n_max = 40 gives a 164 x 164 Dirac operator.
#include <benchmark/benchmark.h>

#include <random>

#include "specdist/higgs.hpp"
#include "specdist/kernels.hpp"

using namespace specdist;

namespace {

ComplexMatrix random_matrix(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = {g(rng), g(rng)};
  return m;
}

template <ComplexMatrix (*F)(const ComplexMatrix&, const ComplexMatrix&)>
void square_kernel(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto a = random_matrix(n, 1), b = random_matrix(n, 2);
  for (auto _ : st) benchmark::DoNotOptimize(F(a, b));
  st.SetItemsProcessed(st.iterations() * static_cast<long>(n * n * n));
}

template <ComplexMatrix (*F)(const ComplexMatrix&, const ComplexMatrix&)>
void kron_kernel(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto a = random_matrix(n, 3), b = random_matrix(4, 4);
  for (auto _ : st) benchmark::DoNotOptimize(F(a, b));
}

void higgs_sweep(benchmark::State& st) {
  const FockSpace sp(20, 1.0);
  const DoubledTriple d = build_doubled(sp, 1.0);
  const FluctuatedTriple f =
      fluctuate(d, {cplx(0.5) * ComplexMatrix::identity(sp.dim()), 1.0, -1.0, 0.0, 0.5});
  std::vector<cplx> grid;
  for (int k = 0; k < static_cast<int>(st.range(0)); ++k) grid.push_back({-1.0 + 0.1 * k, 0.2});
  for (auto _ : st) benchmark::DoNotOptimize(higgs_field_sweep(f, grid));
}

}  // namespace

BENCHMARK(square_kernel<serial::matmul>)->Name("matmul/serial")->Arg(42)->Arg(84)->Arg(164);
BENCHMARK(square_kernel<parallel::matmul>)->Name("matmul/parallel")->Arg(42)->Arg(84)->Arg(164);
BENCHMARK(square_kernel<serial::commutator>)->Name("commutator/serial")->Arg(84)->Arg(164);
BENCHMARK(square_kernel<parallel::commutator>)->Name("commutator/parallel")->Arg(84)->Arg(164);
BENCHMARK(kron_kernel<serial::kron>)->Name("kron/serial")->Arg(41)->Arg(82);
BENCHMARK(kron_kernel<parallel::kron>)->Name("kron/parallel")->Arg(41)->Arg(82);
BENCHMARK(higgs_sweep)->Name("higgs_sweep")->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
