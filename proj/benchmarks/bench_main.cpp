#include <benchmark/benchmark.h>

#include <complex>
#include <random>
#include <vector>

#include "graphwave/builtin_specs.hpp"
#include "graphwave/classical.hpp"
#include "graphwave/evolution.hpp"
#include "graphwave/fourier.hpp"
#include "graphwave/paths.hpp"
#include "graphwave/resonances.hpp"
#include "graphwave/scattering.hpp"
#include "graphwave/specfile.hpp"
#include "graphwave/wavepacket.hpp"

namespace {

graphwave::MetricGraph junction() {
  return graphwave::build_graph(
      graphwave::parse_graph_spec(*graphwave::builtin_spec_text("tjunction")));
}

graphwave::MetricGraph junction_closed() {
  return graphwave::build_graph(
      graphwave::parse_graph_spec(*graphwave::builtin_spec_text("tjunction_closed")));
}

void BM_smatrix_resolvent(benchmark::State& state) {
  auto g = junction();
  double k = 17.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(graphwave::smatrix_resolvent(g, k).entries);
    k += 1e-3;
  }
}
BENCHMARK(BM_smatrix_resolvent);

void BM_smatrix_pathsum(benchmark::State& state) {
  auto g = junction();
  double k = 17.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        graphwave::smatrix_pathsum(g, k, static_cast<int>(state.range(0))).entries);
    k += 1e-3;
  }
}
BENCHMARK(BM_smatrix_pathsum)->Arg(10)->Arg(40)->Arg(160);

void BM_secular_indicator(benchmark::State& state) {
  auto g = junction_closed();
  double k = 5.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(graphwave::secular_indicator(g, k));
    k += 1e-3;
  }
}
BENCHMARK(BM_secular_indicator);

void BM_find_spectrum(benchmark::State& state) {
  auto g = junction_closed();
  for (auto _ : state) {
    auto roots = graphwave::find_spectrum(g, 0.5, 0.5 + static_cast<double>(state.range(0)));
    benchmark::DoNotOptimize(roots.data());
  }
}
BENCHMARK(BM_find_spectrum)->Arg(10)->Arg(100);

void BM_chirp_transform(benchmark::State& state) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::complex<double>> c(static_cast<std::size_t>(state.range(0)));
  for (auto& v : c) v = {u(rng), u(rng)};
  for (auto _ : state) {
    auto f = graphwave::chirp_transform(c, 3.7e-4, 2048);
    benchmark::DoNotOptimize(f.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_chirp_transform)->Range(1 << 12, 1 << 20)->Complexity(benchmark::oNLogN);

void BM_enumerate_families(benchmark::State& state) {
  auto g = junction();
  for (auto _ : state) {
    auto fams = graphwave::enumerate_families(g, 0, 0, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(fams.data());
  }
}
BENCHMARK(BM_enumerate_families)->Arg(15)->Arg(23)->Arg(29);

void BM_classical_exact(benchmark::State& state) {
  auto g = junction();
  for (auto _ : state) {
    auto cd = graphwave::classical_cumulative_exact(g, 0, 0, static_cast<double>(state.range(0)));
    benchmark::DoNotOptimize(cd.jump_s.data());
  }
}
BENCHMARK(BM_classical_exact)->Arg(10)->Arg(20);

void BM_classical_mc(benchmark::State& state) {
  auto g = junction();
  for (auto _ : state) {
    auto mc = graphwave::classical_delay_mc(g, 0, state.range(0), 99);
    benchmark::DoNotOptimize(mc.delays.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_classical_mc)->Arg(10000)->Arg(100000);

void BM_find_poles(benchmark::State& state) {
  auto g = junction();
  for (auto _ : state) {
    auto poles = graphwave::find_poles(g, 1.0, 1.0 + static_cast<double>(state.range(0)), 2.0);
    benchmark::DoNotOptimize(poles.data());
  }
}
BENCHMARK(BM_find_poles)->Arg(25)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
