#include "gbake/cubemap.hpp"
#include "gbake/renderer.hpp"
#include "gbake/synthetic.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace gbake;

const GaussianScene &room() {
  static const GaussianScene scene = synthetic::make_scene(synthetic::SceneKind::room, 10000, 1);
  return scene;
}

void BM_RayTraceFace(benchmark::State &state) {
  const RayTraceRenderer renderer(room());
  const int F = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(renderer.render(face_camera(Vec3::Zero(), Face::pz), F, nullptr));
  }
  state.SetItemsProcessed(state.iterations() * F * F);
}
BENCHMARK(BM_RayTraceFace)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_SplatFace(benchmark::State &state) {
  const SplatRenderer renderer(room());
  const int F = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(renderer.render(face_camera(Vec3::Zero(), Face::pz), F, nullptr));
  }
  state.SetItemsProcessed(state.iterations() * F * F);
}
BENCHMARK(BM_SplatFace)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_BakeProbe(benchmark::State &state) {
  const RayTraceRenderer renderer(room());
  for (auto _ : state) {
    benchmark::DoNotOptimize(bake_probe(Vec3::Zero(), renderer, 32));
  }
}
BENCHMARK(BM_BakeProbe)->Unit(benchmark::kMillisecond);

} // namespace
