#include <benchmark/benchmark.h>

#include <cmath>

#include "lsr/energy.hpp"
#include "lsr/quad.hpp"

using namespace lsr;

namespace {

Exec exec_of(const benchmark::State& s) { return s.range(0) ? Exec::parallel : Exec::serial; }

void BM_MonteCarlo(benchmark::State& state) {
  const BubbleParams b = standard_bubble(5, 2.0);
  const MixtureSampler s(5, {Point(5)}, std::sqrt(3.0), 2.0, true);
  McSpec mc;
  mc.samples = 1'000'000;
  auto f = [&](const Point& y) { return std::pow(bubble_eval(y, b), 10.0 / 3.0); };
  for (auto _ : state) benchmark::DoNotOptimize(integrate_mc(f, s, mc, exec_of(state)).value);
  state.SetItemsProcessed(state.iterations() * mc.samples);
}

void BM_Cubature(benchmark::State& state) {
  const BubbleParams b = standard_bubble(5, 2.0);
  ReducedIntegrand in;
  in.N = 5;
  in.scale = std::sqrt(3.0);
  in.y1_breaks = {0.0};
  in.f = [&](const Point& y) { return std::abs(y[0]) * std::abs(y[0]) * std::pow(bubble_eval(y, b), 10.0 / 3.0); };
  QuadratureSpec q;
  q.rel_tol = 1e-9;
  for (auto _ : state) benchmark::DoNotOptimize(integrate_reduced(in, Reduction::axial3, q, exec_of(state)).value);
}

void BM_WeightedNorm(benchmark::State& state) {
  ProblemParams p;
  const double m = mu(12, p);
  const RingConfig ring{12, m * p.r0, 0.2, p};
  const ErrorField e(ring, Profiles::scaled(p, m));
  const WeightedNormSpec s;
  auto f = [&](const Point& y) { return e(y, ErrorKind::in); };
  for (auto _ : state) benchmark::DoNotOptimize(weighted_norm(f, e.ansatz(), NormKind::dstar, s, exec_of(state)).value);
}

}  // namespace

BENCHMARK(BM_MonteCarlo)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Cubature)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WeightedNorm)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
