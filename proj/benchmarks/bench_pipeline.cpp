#include <benchmark/benchmark.h>

#include <map>
#include <utility>

#include "wordsimplex/pca.hpp"
#include "wordsimplex/plane_geometry.hpp"
#include "wordsimplex/report.hpp"
#include "wordsimplex/simplex_extractor.hpp"
#include "wordsimplex/synthetic.hpp"

namespace ws = wordsimplex;

namespace {

const ws::SyntheticCloud& cloud(std::size_t dim, std::size_t points) {
  static std::map<std::pair<std::size_t, std::size_t>, ws::SyntheticCloud> cache;
  auto it = cache.find({dim, points});
  if (it == cache.end()) {
    ws::SyntheticParams p;
    p.dim = dim;
    p.points = points;
    p.sigma = 0.01;
    p.seed = 1;
    it = cache.emplace(std::pair{dim, points}, ws::generate_simplex_cloud(p)).first;
  }
  return it->second;
}

void BM_FitPca(benchmark::State& state) {
  const auto& c = cloud(static_cast<std::size_t>(state.range(0)), 20000);
  for (auto _ : state) benchmark::DoNotOptimize(ws::fit_pca(c.space, 50));
  state.SetItemsProcessed(state.iterations() * 20000);
}
BENCHMARK(BM_FitPca)->Arg(50)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_TopK(benchmark::State& state) {
  const auto& c = cloud(300, 20000);
  const ws::CosineRanker ranker(c.space);
  std::size_t word = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ranker.topk_of_word(word, static_cast<std::size_t>(state.range(0))));
    word = (word + 7919) % c.space.size();
  }
}
BENCHMARK(BM_TopK)->Arg(5)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_TriangleStats(benchmark::State& state) {
  const auto& c = cloud(300, 20000);
  for (auto _ : state) benchmark::DoNotOptimize(ws::triangle_stats(c.space, 0, 1, 2));
  state.SetItemsProcessed(state.iterations() * 20000);
}
BENCHMARK(BM_TriangleStats)->Unit(benchmark::kMillisecond);

void BM_Pipeline(benchmark::State& state) {
  const auto& c = cloud(50, 20000);
  ws::AnalysisConfig config;
  config.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ws::run_analysis(c.space, config));
}
BENCHMARK(BM_Pipeline)->Arg(1)->Unit(benchmark::kSecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
