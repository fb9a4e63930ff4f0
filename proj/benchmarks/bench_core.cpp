#include <benchmark/benchmark.h>

#include "bergman/asymptotics.hpp"
#include "bergman/coefficients.hpp"
#include "bergman/hessenberg.hpp"
#include "bergman/polynomials.hpp"
#include "bergman/zeros.hpp"

namespace {

using bergman::Complex;

static void GgtBuild(benchmark::State& state) {
  const auto seq = bergman::sample_iid(
      bergman::DistributionSpec::uniform_disk(0.8), 1 << 16, 7);
  for (auto _ : state) {
    auto trunc = bergman::ggt_truncation(seq, state.range());
    benchmark::DoNotOptimize(trunc.norm_bound());
  }
  state.SetComplexityN(state.range());
}
BENCHMARK(GgtBuild)->RangeMultiplier(4)->Range(256, 1 << 14)->Complexity();

static void RatioStreamSweep(benchmark::State& state) {
  const auto seq = bergman::sample_iid(
      bergman::DistributionSpec::atomic({Complex(0.3, 0.0), Complex(-0.3, 0.0)},
                                        {0.5, 0.5}),
      1 << 16, 11);
  const auto trunc = bergman::ggt_truncation(seq, state.range());
  for (auto _ : state) {
    bergman::RatioStream stream(trunc, Complex(2.0, 0.0));
    while (stream.degree() < trunc.size()) stream.advance();
    benchmark::DoNotOptimize(stream.monic_ratio());
  }
  state.SetComplexityN(state.range());
}
BENCHMARK(RatioStreamSweep)->RangeMultiplier(4)->Range(1024, 1 << 16)->Complexity();

static void MinorRecurrenceRatio(benchmark::State& state) {
  const auto seq = bergman::VerblunskySequence::harmonic_decay();
  const auto trunc = bergman::ggt_truncation(seq, state.range());
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        bergman::ratio(trunc, trunc.size(), Complex(2.0, 0.0), false));
  }
  state.SetComplexityN(state.range());
}
BENCHMARK(MinorRecurrenceRatio)->RangeMultiplier(2)->Range(64, 512)->Complexity();

static void PathSumVsPower(benchmark::State& state) {
  const auto seq = bergman::sample_iid(
      bergman::DistributionSpec::uniform_disk(0.8), 16, 3);
  const auto trunc = bergman::ggt_truncation(seq, 16);
  const Eigen::Index m = state.range();
  for (auto _ : state) {
    benchmark::DoNotOptimize(bergman::path_sum_diagonal(
        trunc, m, 12, bergman::PowerMode::SubTruncation));
  }
}
BENCHMARK(PathSumVsPower)->DenseRange(2, 10, 2);

static void ZerosHessenberg(benchmark::State& state) {
  const auto seq = bergman::sample_iid(
      bergman::DistributionSpec::uniform_disk(0.8), 512, 5);
  const auto trunc = bergman::ggt_truncation(seq, state.range());
  for (auto _ : state) {
    benchmark::DoNotOptimize(bergman::zeros(trunc, trunc.size()).residual);
  }
  state.SetComplexityN(state.range());
}
BENCHMARK(ZerosHessenberg)->RangeMultiplier(2)->Range(16, 256)->Complexity();

}  // namespace

BENCHMARK_MAIN();
