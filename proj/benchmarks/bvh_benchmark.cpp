#include "gbake/bvh.hpp"
#include "gbake/ray_tracer.hpp"
#include "gbake/synthetic.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace gbake;

void BM_BvhBuild(benchmark::State &state) {
  const GaussianScene scene = synthetic::make_scene(
      synthetic::SceneKind::random, static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Bvh::build(scene));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BvhBuild)->Arg(1000)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_TraceRandomRays(benchmark::State &state) {
  const GaussianScene scene = synthetic::make_scene(
      synthetic::SceneKind::random, static_cast<std::size_t>(state.range(0)), 2);
  const RayTracer tracer(scene);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<Ray> rays;
  for (int k = 0; k < 1024; ++k) {
    rays.push_back(make_ray(Vec3::Zero(), Vec3(n(rng), n(rng), n(rng))));
  }
  std::vector<HitRecord> scratch;
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tracer.trace(rays[k++ % rays.size()], scratch));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_TraceRandomRays)->Arg(10000)->Arg(100000);

void BM_TraceBruteForce(benchmark::State &state) {
  const GaussianScene scene = synthetic::make_scene(synthetic::SceneKind::random, 10000, 2);
  const RayTracer tracer(scene);
  const Ray ray = make_ray(Vec3::Zero(), Vec3(0.3, 0.2, 1.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tracer.trace_brute_force(ray));
  }
}
BENCHMARK(BM_TraceBruteForce);

} // namespace
