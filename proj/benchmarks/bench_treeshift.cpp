#include <benchmark/benchmark.h>

#include <random>

#include "treeshift/families.hpp"
#include "treeshift/shadowing.hpp"
#include "treeshift/stability.hpp"

using namespace treeshift;

namespace {

void BM_EngineBuild(benchmark::State& state) {
  const auto sft = normalize(
      [] {
        ForbiddenSet f;
        f.alphabets = Alphabets{2, {"0", "1"}};
        Pattern p1, p2;
        p1.cells = {{{}, 1}, {{0}, 1}};
        p2.cells = {{{}, 1}, {{1}, 1}};
        f.patterns = {p1, p2};
        return f;
      }(),
      static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto e = SftEngine::build(sft);
    benchmark::DoNotOptimize(e.viable().size());
  }
}
BENCHMARK(BM_EngineBuild)->Arg(2)->Arg(3);

void BM_BlockCount(benchmark::State& state) {
  const auto& e = golden_mean_tree_sft().engine();
  for (auto _ : state) benchmark::DoNotOptimize(e.block_count(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_BlockCount)->Arg(4)->Arg(5)->Arg(6);

void BM_BlockCountString(benchmark::State& state) {
  const auto& e = golden_mean_string_sft().engine();
  for (auto _ : state)
    benchmark::DoNotOptimize(e.block_count(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_BlockCountString)->Arg(16)->Arg(64);

void BM_BlockLanguage(benchmark::State& state) {
  const auto& e = golden_mean_tree_sft().engine();
  for (auto _ : state) {
    auto lang = e.block_language(static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(lang.size());
  }
}
BENCHMARK(BM_BlockLanguage)->Arg(3)->Arg(4);

void BM_Certify(benchmark::State& state) {
  const auto& e = golden_mean_tree_sft().engine();
  std::mt19937_64 rng(7);
  auto t = e.sample_tree(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(e.certify(t));
}
BENCHMARK(BM_Certify)->Arg(8)->Arg(12);

void BM_TracePipeline(benchmark::State& state) {
  const auto& e = golden_mean_tree_sft().engine();
  const int n = 2, order = 3, depth = 7, m = static_cast<int>(state.range(0));
  std::mt19937_64 rng(11);
  for (auto _ : state) {
    auto f = perturb_orbit(e, e.sample_tree(order - 1 + depth, rng), order, depth, n, rng);
    auto t = trace_construct(f, order - 1 + m);
    benchmark::DoNotOptimize(verify_tracing(t, f, m));
  }
}
BENCHMARK(BM_TracePipeline)->Arg(1)->Arg(2);

void BM_Injectivize(benchmark::State& state) {
  const auto& e = golden_mean_tree_sft().engine();
  const int n = 2, order = 3, depth = 8;
  std::mt19937_64 rng(13);
  auto f = perturb_orbit(e, e.sample_tree(order - 1 + depth, rng), order, depth, n, rng);
  for (auto _ : state) {
    auto g = injectivize(f, e, 1);
    benchmark::DoNotOptimize(g.separation_depth);
  }
}
BENCHMARK(BM_Injectivize);

void BM_SampleTree(benchmark::State& state) {
  const auto& e = golden_mean_tree_sft().engine();
  std::mt19937_64 rng(17);
  for (auto _ : state) {
    auto t = e.sample_tree(static_cast<int>(state.range(0)), rng);
    benchmark::DoNotOptimize(t.body.labels.size());
  }
}
BENCHMARK(BM_SampleTree)->Arg(6)->Arg(10);

}  // namespace
