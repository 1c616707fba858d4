#include <benchmark/benchmark.h>

#include <random>

#include "gtplateau/dirichlet.hpp"
#include "gtplateau/kernels.hpp"

using namespace gtp;

namespace {

Patch bench_patch(int degree) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  ControlNet net(degree, degree);
  for (int i = 0; i <= degree; ++i)
    for (int j = 0; j <= degree; ++j) net.at(i, j) = Vec3(j + 0.2 * d(rng), i + 0.2 * d(rng), d(rng));
  return Patch::gt(net, {0.9, 1.8, 2.7, 1.1});
}

template <bool Parallel>
void BM_Area(benchmark::State& state) {
  const Patch p = bench_patch(static_cast<int>(state.range(0)));
  const auto rule = gauss_legendre_rule(static_cast<int>(state.range(1)));
  for (auto _ : state) {
    const double a = Parallel ? grid_functional(p, rule, GridFunctional::Area)
                              : serial::grid_functional(p, rule, GridFunctional::Area);
    benchmark::DoNotOptimize(a);
  }
}

template <bool Parallel>
void BM_Assembly(benchmark::State& state) {
  const Patch p = bench_patch(static_cast<int>(state.range(0)));
  const auto rule = gauss_legendre_rule(static_cast<int>(state.range(1)));
  const auto model = tensor_field_model(p, rule, FieldOperator::Gradient);
  for (auto _ : state) {
    auto sys = Parallel ? assemble_least_squares(model, rule) : serial::assemble_least_squares(model, rule);
    benchmark::DoNotOptimize(sys.matrix.data());
  }
}

template <bool Parallel>
void BM_Jets(benchmark::State& state) {
  const Patch p = bench_patch(3);
  std::vector<double> t(static_cast<std::size_t>(state.range(0)) + 1);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = double(i) / (t.size() - 1);
  for (auto _ : state) {
    auto jets = Parallel ? sample_jets(p, t, t) : serial::sample_jets(p, t, t);
    benchmark::DoNotOptimize(jets.data());
  }
}

void BM_ReducedFunctional(benchmark::State& state) {
  Patch p = bench_patch(3);
  p.net.fix_boundary_free_interior();
  const auto rule = gauss_legendre_rule(32);
  for (auto _ : state) benchmark::DoNotOptimize(reduced_functional(p.net, {0.9, 1.8, 2.7, 1.1}, rule));
}

}  // namespace

BENCHMARK(BM_Area<true>)->Args({3, 32})->Args({6, 64})->Args({8, 128});
BENCHMARK(BM_Area<false>)->Args({3, 32})->Args({6, 64})->Args({8, 128});
BENCHMARK(BM_Assembly<true>)->Args({4, 32})->Args({8, 64});
BENCHMARK(BM_Assembly<false>)->Args({4, 32})->Args({8, 64});
BENCHMARK(BM_Jets<true>)->Arg(64)->Arg(256);
BENCHMARK(BM_Jets<false>)->Arg(64)->Arg(256);
BENCHMARK(BM_ReducedFunctional);

BENCHMARK_MAIN();
