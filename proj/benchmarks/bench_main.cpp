#include <benchmark/benchmark.h>

#include "symprod/invmetrics.hpp"
#include "symprod/sampling.hpp"
#include "symprod/sympoly.hpp"

using namespace symprod;

namespace {

std::vector<Complex> roots_for(std::size_t n) {
  Rng rng = derive_rng(0, 7, n);
  std::vector<Complex> r(n);
  for (auto& x : r) x = uniform_in_disc(rng);
  return r;
}

void BM_Symmetrize(benchmark::State& state) {
  const auto r = roots_for(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(symmetrize(r));
}
BENCHMARK(BM_Symmetrize)->DenseRange(2, 16, 2);

void BM_RootsOfPoint(benchmark::State& state) {
  const auto z = symmetrize(roots_for(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(roots_of_point(z));
}
BENCHMARK(BM_RootsOfPoint)->DenseRange(2, 16, 2);

void BM_CarathLower(benchmark::State& state) {
  const SymProduct g2(PlanarDomain::unit_disc(), 2);
  CaratheodoryOptions opts;
  opts.omega_grid = static_cast<std::size_t>(state.range(0));
  const ComplexPoint z{Complex(0.1, 0.2), Complex(0.05, -0.1)};
  const ComplexPoint w{Complex(-0.4, 0.3), Complex(0.2, 0.1)};
  for (auto _ : state) benchmark::DoNotOptimize(carath_lower(g2, z, w, opts));
}
BENCHMARK(BM_CarathLower)->Arg(90)->Arg(360)->Arg(720);

void BM_DiscSearch(benchmark::State& state) {
  const SymProduct g2(PlanarDomain::unit_disc(), 2);
  DiscSearchOptions opts;
  opts.budget = static_cast<std::size_t>(state.range(0));
  opts.multistarts = 4;
  const ComplexPoint z{0.0, 0.0};
  const ComplexPoint w{0.0, 0.6};
  for (auto _ : state) benchmark::DoNotOptimize(lempert_upper_disc_search(g2, z, w, opts));
}
BENCHMARK(BM_DiscSearch)->Arg(400)->Arg(1600)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
