#include <map>
#include <string>

#include <benchmark/benchmark.h>

#include "framemult/classification.hpp"
#include "framemult/convergence.hpp"
#include "framemult/multiplier.hpp"
#include "framemult/scenarios.hpp"

namespace {

const framemult::Scenario& entry(const char* name) {
  static std::map<std::string, framemult::Scenario> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, *framemult::registry_find(name)).first;
  return it->second;
}

void BM_RealizeBlockPair(benchmark::State& state) {
  const auto& spec = entry("example_wd").multiplier;
  for (auto _ : state) benchmark::DoNotOptimize(framemult::realize(spec, state.range(0)).matrix().nonZeros());
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RealizeBlockPair)->RangeMultiplier(4)->Range(192, 12288)->Complexity();

void BM_RealizeGabor(benchmark::State& state) {
  const auto& spec = entry("gabor_frame_case").multiplier;
  for (auto _ : state) benchmark::DoNotOptimize(framemult::realize(spec, state.range(0)).matrix().nonZeros());
}
BENCHMARK(BM_RealizeGabor)->RangeMultiplier(4)->Range(192, 3072);

void BM_SingularValues(benchmark::State& state) {
  const auto M = framemult::realize(entry("riesz_pair").multiplier, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(framemult::singular_values(M.matrix()));
}
BENCHMARK(BM_SingularValues)->RangeMultiplier(4)->Range(192, 3072);

void BM_FrameBounds(benchmark::State& state) {
  const auto& s = entry("gabor_frame_case");
  for (auto _ : state) benchmark::DoNotOptimize(framemult::estimate_frame_bounds(s.multiplier.phi, s.ladder()));
}
BENCHMARK(BM_FrameBounds)->Unit(benchmark::kMillisecond);

void BM_Classify(benchmark::State& state, const char* name) {
  const auto& s = entry(name);
  for (auto _ : state) benchmark::DoNotOptimize(framemult::classify(s.multiplier, s.seed).verdict);
}
BENCHMARK_CAPTURE(BM_Classify, identity, "onb_identity")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Classify, block_pair, "example_wd")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Classify, gabor, "gabor_frame_case")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
