#include <benchmark/benchmark.h>

#include "support.hpp"
#include "tsimp/blw.hpp"
#include "tsimp/delaunay.hpp"
#include "tsimp/local_ops.hpp"
#include "tsimp/persistence.hpp"
#include "tsimp/pipeline.hpp"

using namespace tsimp;

namespace {

Terrain fractal_grid(std::size_t n) { return testing::grid_terrain(n, n, testing::fractal_heights(n, 2024)); }

Rational range_fraction(const Terrain& t, int percent) {
  Rational lo = t.height(0), hi = t.height(0);
  for (VertexId v : t.vertex_ids()) {
    lo = std::min(lo, t.height(v));
    hi = std::max(hi, t.height(v));
  }
  Rational eps = (hi - lo) * percent / 100 + Rational(1, 1000);
  eps.canonicalize();
  return eps;
}

void BM_Persistence(benchmark::State& state) {
  const Terrain t = fractal_grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(persistence(t));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(t.num_vertices()));
}
BENCHMARK(BM_Persistence)->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Delaunay(benchmark::State& state) {
  testing::Rng rng(7);
  std::vector<Point2> pts;
  for (std::int64_t i = 0; i < state.range(0); ++i)
    pts.emplace_back(testing::random_rational(rng, 0, 10000, 7), testing::random_rational(rng, 0, 10000, 7));
  for (auto _ : state) benchmark::DoNotOptimize(delaunay_triangulation(pts));
}
BENCHMARK(BM_Delaunay)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_SegmentDeviation(benchmark::State& state) {
  const Terrain t = fractal_grid(100);
  const BaseIndex index(t);
  testing::Rng rng(3);
  std::vector<std::pair<VertexId, VertexId>> segs;
  std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(t.num_vertices()) - 1);
  for (int i = 0; i < 256; ++i) segs.emplace_back(pick(rng), pick(rng));
  std::size_t i = 0;
  for (auto _ : state) {
    const auto [a, b] = segs[i++ % segs.size()];
    benchmark::DoNotOptimize(
        index.segment_deviation({&t.position(a), &t.height(a)}, {&t.position(b), &t.height(b)}));
  }
}
BENCHMARK(BM_SegmentDeviation);

void BM_LinkSearch(benchmark::State& state) {
  const Terrain t = fractal_grid(60);
  const BaseIndex index(t);
  const AwarenessBudget budget(range_fraction(t, 10));
  const LinkMode mode = state.range(0) == 0 ? LinkMode::FirstValid : LinkMode::BestLinf;
  std::vector<VertexId> regular;
  for (VertexId v : t.vertex_ids())
    if (!t.is_boundary_vertex(v) && classify(t, v).kind == Criticality::Kind::Regular) regular.push_back(v);
  std::size_t i = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(find_link_triangulation(t, index, regular[i++ % regular.size()], budget, mode));
}
BENCHMARK(BM_LinkSearch)->Arg(0)->Arg(1);

void BM_Blw(benchmark::State& state) {
  const Terrain t = fractal_grid(static_cast<std::size_t>(state.range(0)));
  const AwarenessBudget budget(range_fraction(t, 10));
  for (auto _ : state) benchmark::DoNotOptimize(blw_simplify(t, budget));
}
BENCHMARK(BM_Blw)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Pipeline(benchmark::State& state) {
  const Terrain t = fractal_grid(static_cast<std::size_t>(state.range(0)));
  PipelineConfig cfg;
  cfg.budget = AwarenessBudget(range_fraction(t, 10));
  cfg.strategy = static_cast<Strategy>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(run_pipeline(t, cfg));
}
BENCHMARK(BM_Pipeline)
    ->Args({40, 0})
    ->Args({40, 1})
    ->Args({40, 2})
    ->Args({100, 0})
    ->Unit(benchmark::kMillisecond)
    ->Iterations(2);

}  // namespace

BENCHMARK_MAIN();
