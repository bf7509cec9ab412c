#include <benchmark/benchmark.h>

#include <cmath>

#include "cusp/capacity.hpp"
#include "cusp/distortion.hpp"
#include "cusp/maps.hpp"
#include "cusp/quadrature.hpp"
#include "cusp/radial_profile.hpp"

namespace {

using namespace cusp;

void BM_ProfileEval(benchmark::State& state) {
  const ProfileParams p;
  double log_r = -1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_profile_log(log_r, p));
    log_r = log_r < -600.0 ? -1.0 : log_r * 1.01;
  }
}
BENCHMARK(BM_ProfileEval);

void BM_AnalyticJacobian(benchmark::State& state) {
  const ProfileParams p;
  const PolarPoint q = PolarPoint::make(1e-6, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(distortion_K(jacobian_f2_analytic(q, p)));
}
BENCHMARK(BM_AnalyticJacobian);

void BM_ChainApply(benchmark::State& state) {
  const MapChain chain;
  const PlanePoint x{-0.7, 0.2};
  for (auto _ : state) benchmark::DoNotOptimize(apply_chain(x, chain));
}
BENCHMARK(BM_ChainApply);

void BM_ChainInverse(benchmark::State& state) {
  const MapChain chain;
  const PlanePoint y = apply_chain({-0.7, 0.2}, chain);
  for (auto _ : state) benchmark::DoNotOptimize(apply_chain_inv(y, chain));
}
BENCHMARK(BM_ChainInverse);

void BM_AnnulusIntegral(benchmark::State& state) {
  const ProfileParams p;
  auto field = [&p](double r, double th) {
    return distortion_K(jacobian_f2_analytic(PolarPoint::make(r, th), p)).K;
  };
  for (auto _ : state) benchmark::DoNotOptimize(integrate_annulus(field, 0.25, 0.5));
}
BENCHMARK(BM_AnnulusIntegral);

void BM_IntegralKPow(benchmark::State& state) {
  const MapChain chain;
  const AnnularScheme scheme = AnnularScheme::dyadic(1, 64);
  for (auto _ : state) benchmark::DoNotOptimize(integral_K_pow(2.0, scheme, chain));
}
BENCHMARK(BM_IntegralKPow)->Unit(benchmark::kMillisecond);

void BM_AnnulusCapacity(benchmark::State& state) {
  GridSolverConfig cfg;
  cfg.resolution = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(annulus_capacity(0.25, 1.0, cfg));
}
BENCHMARK(BM_AnnulusCapacity)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
