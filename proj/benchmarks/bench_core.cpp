#include <benchmark/benchmark.h>

#include "extime/barnes.hpp"
#include "extime/bernstein.hpp"
#include "extime/mellin.hpp"
#include "extime/monte_carlo.hpp"
#include "extime/special.hpp"
#include "extime/wphi.hpp"

using namespace extime;

static void BM_log_gamma(benchmark::State& state) {
  cplx z(3.25, 4.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(log_gamma(z));
    z += cplx(1e-9, 0.0);  // defeat caching of a constant argument
  }
}
BENCHMARK(BM_log_gamma);

static void BM_barnes_g_ratio(benchmark::State& state) {
  cplx z(2.0, 3.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(log_barnes_g_ratio(z, 1.2, 0.3, 0.9));
    z += cplx(1e-9, 0.0);
  }
}
BENCHMARK(BM_barnes_g_ratio);

static void BM_w_phi_euler(benchmark::State& state) {
  auto ej = BernsteinFunction::exp_jump(1.0, 1.0, 2.0);
  cplx z(1.5, 2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(log_w_phi_euler(ej, z));
    z += cplx(1e-9, 0.0);
  }
}
BENCHMARK(BM_w_phi_euler);

static void BM_w_phi_closed(benchmark::State& state) {
  auto st = BernsteinFunction::stable_subordinator(0.5);
  cplx z(1.5, 2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(w_phi(st, z));
    z += cplx(1e-9, 0.0);
  }
}
BENCHMARK(BM_w_phi_closed);

static void BM_mb_density_point(benchmark::State& state) {
  auto st5 = BernsteinFunction::stable_subordinator(0.5);
  MellinLaw law = mellin_extinction(brownian_pair(), st5, 0.5, 1.0);
  double t = 2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(density_mellin_barnes(law, t));
    t += 1e-9;
  }
}
BENCHMARK(BM_mb_density_point)->Unit(benchmark::kMillisecond);

static void BM_sample_brownian_extinction(benchmark::State& state) {
  auto st5 = BernsteinFunction::stable_subordinator(0.5);
  WienerHopfPair bro = brownian_pair();
  SimConfig cfg;
  cfg.n_paths = state.range(0);
  cfg.dt = 0.02;
  for (auto _ : state) {
    cfg.seed++;
    benchmark::DoNotOptimize(sample_extinction(bro, st5, 0.5, 1.0, cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_sample_brownian_extinction)
    ->Arg(1000)
    ->Unit(benchmark::kMillisecond);

static void BM_sample_stable_functional(benchmark::State& state) {
  WienerHopfPair stab = stable_example_pair(1.5, 0.4, 0.6);
  SimConfig cfg;
  cfg.n_paths = state.range(0);
  cfg.dt = 0.05;
  cfg.jump_cutoff = 0.01;
  cfg.gauss_compensation = true;
  for (auto _ : state) {
    cfg.seed++;
    benchmark::DoNotOptimize(sample_exponential_functional(stab, 1.0, cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_sample_stable_functional)->Arg(500)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
