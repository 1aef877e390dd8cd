#include <benchmark/benchmark.h>

#include <numbers>
#include <random>
#include <vector>

#include "emregion/em_curve.hpp"
#include "emregion/region_set.hpp"

using namespace emregion;

namespace {

const CanonicalTriangle kEquilateral(-1, 1, std::numbers::sqrt3);

std::vector<Point> random_points(std::size_t n) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-6, 6);
  std::vector<Point> pts(n);
  for (Point& p : pts) p = {u(rng), u(rng)};
  return pts;
}

void BM_CriticalSlopes(benchmark::State& state) {
  const CanonicalTriangle t(-0.7, 1.3, 0.9);
  for (auto _ : state) benchmark::DoNotOptimize(critical_slopes(t));
}
BENCHMARK(BM_CriticalSlopes);

void BM_ClassifyVertex(benchmark::State& state) {
  const VertexFrame frame(CanonicalTriangle(-0.7, 1.3, 0.9), Vertex::B);
  const auto pts = random_points(4096);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(frame.classify(pts[i++ & 4095]));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ClassifyVertex);

void BM_Membership(benchmark::State& state) {
  const TriangleRegions regions(CanonicalTriangle(-0.7, 1.3, 0.9));
  const auto pts = random_points(4096);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(regions.membership(pts[i++ & 4095]));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Membership);

void BM_TraceCurve(benchmark::State& state) {
  const BoundingBox box = default_box(kEquilateral);
  const int res = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(trace_curve(kEquilateral, box, res));
}
BENCHMARK(BM_TraceCurve)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_EprimeArea(benchmark::State& state) {
  const BoundingBox box = default_box(kEquilateral);
  const int res = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(eprime_area(kEquilateral, box, res, 100, 1));
}
BENCHMARK(BM_EprimeArea)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
