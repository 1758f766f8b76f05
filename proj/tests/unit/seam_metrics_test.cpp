#include "gbake/cubemap.hpp"
#include "gbake/error.hpp"
#include "gbake/renderer.hpp"
#include "gbake/seam_metrics.hpp"
#include "gbake/synthetic.hpp"
#include "gbake/worker_pool.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>

namespace gbake {
namespace {

GaussianScene random_scene(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<GaussianParticle> particles;
  for (int n = 0; n < count; ++n) {
    particles.push_back(test::random_particle(rng, 2.0));
  }
  return GaussianScene(particles);
}

TEST(CubeEdges, TwelveDistinctAdjacentPairs) {
  std::set<std::pair<int, int>> seen;
  for (const auto &[a, b] : cube_edges()) {
    EXPECT_EQ(face_basis(a).forward.dot(face_basis(b).forward), 0.0);
    seen.insert({std::min(int(a), int(b)), std::max(int(a), int(b))});
  }
  EXPECT_EQ(seen.size(), 12u);
}

TEST(ExactEdgeCheck, ZeroOnRandomScenes) {
  for (std::uint64_t seed : {1, 2, 3}) {
    const GaussianScene scene = random_scene(seed, 2000);
    const RayTracer tracer(scene);
    const ExactEdgeResult r = exact_edge_check(tracer, Vec3(0.1, -0.05, 0.2), 64);
    EXPECT_EQ(r.max_linear, 0.0);
    EXPECT_EQ(r.max_quantized, 0.0);
    EXPECT_LE(r.max_quantized, 1.0 / 255.0);
    EXPECT_EQ(r.rays, 12u * 64u);
  }
}

TEST(ExactEdgeCheck, EmptySceneAndBadSampleCount) {
  const GaussianScene scene;
  const RayTracer tracer(scene);
  const ExactEdgeResult r = exact_edge_check(tracer, Vec3::Zero());
  EXPECT_EQ(r.max_linear, 0.0);
  EXPECT_EQ(r.rays, 12u * 256u);
  EXPECT_THROW(exact_edge_check(tracer, Vec3::Zero(), 0), DomainError);
}

TEST(ExactEdgeCheck, SampledDirectionsLieOnTheEdge) {
  // Both parameterizations of every sampled direction must sit on the image
  // border (|u| or |v| equal to 1) of their face.
  for (const auto &[fa, fb] : cube_edges()) {
    const CameraBasis ba = face_basis(fa), bb = face_basis(fb);
    const Vec3 d = ba.forward + bb.forward + 0.37 * ba.forward.cross(bb.forward);
    for (const CameraBasis *b : {&ba, &bb}) {
      const double u = d.dot(b->right) / d.dot(b->forward);
      const double v = d.dot(b->up) / d.dot(b->forward);
      EXPECT_TRUE(std::abs(u) == 1.0 || std::abs(v) == 1.0);
    }
    EXPECT_EQ(camera_direction(ba, d.dot(ba.right), d.dot(ba.up)),
              camera_direction(bb, d.dot(bb.right), d.dot(bb.up)));
  }
}

TEST(AdjacentTexelMetric, ConstantCubemapIsZero) {
  Cubemap cube(16);
  for (Face f : kAllFaces) {
    cube.set_face(f, Image(16, 16, Rgb(0.3, 0.6, 0.9)));
  }
  const SeamReport r = adjacent_texel_metric(cube);
  EXPECT_EQ(r.mean, 0.0);
  EXPECT_EQ(r.max, 0.0);
  for (const EdgeStats &e : r.edges) {
    EXPECT_EQ(e.samples, 16u);
    EXPECT_EQ(e.mean, 0.0);
    EXPECT_EQ(e.interior_mean, 0.0);
  }
}

TEST(AdjacentTexelMetric, EmptySceneIsZero) {
  RenderSettings s;
  s.background = Rgb(0.2, 0.2, 0.7);
  const GaussianScene scene;
  const SeamReport r = adjacent_texel_metric(bake_probe(Vec3::Zero(), RayTraceRenderer(scene, s), 8));
  EXPECT_EQ(r.mean, 0.0);
  EXPECT_EQ(r.max, 0.0);
}

TEST(AdjacentTexelMetric, PairsMutuallyNearestBoundaryTexels) {
  // Paint each face's boundary texels with a code of their direction and check
  // the measured differences match a brute-force nearest-direction pairing.
  constexpr int F = 6;
  Cubemap cube(F);
  for (Face f : kAllFaces) {
    Image img(F, F);
    for (int j = 0; j < F; ++j) {
      for (int i = 0; i < F; ++i) {
        const Vec3 d = pixel_direction(face_camera(Vec3::Zero(), f), F, i, j);
        img.at(i, j) = 0.5 * (d + Vec3::Ones());
      }
    }
    cube.set_face(f, img);
  }
  const SeamReport r = adjacent_texel_metric(cube);
  for (const EdgeStats &e : r.edges) {
    // Nearest pairs differ by one texel step across the seam, far less than
    // the distance to any other boundary texel.
    const double pitch = 2.0 / F;
    EXPECT_GT(e.mean, 0.0);
    EXPECT_LT(e.max, 0.5 * pitch);
    EXPECT_LE(e.mean, e.max);
  }
}

TEST(AdjacentTexelMetric, InvariantUnderCubeSymmetry) {
  // A quarter turn of the scene about +Y permutes the faces; the geometric
  // pairing yields the same multiset of edge statistics.
  std::mt19937_64 rng(91);
  std::vector<GaussianParticle> particles;
  for (int n = 0; n < 800; ++n) {
    GaussianParticle p = test::random_particle(rng, 2.0);
    p.sh.fill(0.0f);
    for (int c = 0; c < 3; ++c) {
      p.sh[c * kShCoeffsPerChannel] = static_cast<float>((rng() % 1000) / 1000.0);
    }
    particles.push_back(p);
  }
  const Quat turn(Eigen::AngleAxisd(0.5 * std::numbers::pi, Vec3::UnitY()));
  Mat3 r;
  r << 0, 0, 1, 0, 1, 0, -1, 0, 0;
  std::vector<GaussianParticle> rotated = particles;
  for (auto &p : rotated) {
    p.mean = r * p.mean;
    p.rotation = turn * p.rotation;
  }
  const GaussianScene a(particles, 0), b(rotated, 0);
  const SeamReport ra = adjacent_texel_metric(bake_probe(Vec3::Zero(), RayTraceRenderer(a), 24));
  const SeamReport rb = adjacent_texel_metric(bake_probe(Vec3::Zero(), RayTraceRenderer(b), 24));
  EXPECT_NEAR(ra.mean, rb.mean, 1e-9);
  EXPECT_NEAR(ra.max, rb.max, 1e-9);
  std::vector<double> ma, mb;
  for (int e = 0; e < kCubeEdgeCount; ++e) {
    ma.push_back(ra.edges[e].mean);
    mb.push_back(rb.edges[e].mean);
  }
  std::sort(ma.begin(), ma.end());
  std::sort(mb.begin(), mb.end());
  for (int e = 0; e < kCubeEdgeCount; ++e) {
    EXPECT_NEAR(ma[e], mb[e], 1e-9);
  }
}

TEST(AdjacentTexelMetric, SmoothSceneSeamsMatchInteriorGradient) {
  const GaussianScene scene =
      synthetic::make_scene(synthetic::SceneKind::smooth, synthetic::default_count(synthetic::SceneKind::smooth), 1);
  WorkerPool pool;
  const SeamReport r = adjacent_texel_metric(bake_probe(Vec3::Zero(), RayTraceRenderer(scene), 64, &pool));
  for (const EdgeStats &e : r.edges) {
    ASSERT_GT(e.interior_mean, 0.0);
    EXPECT_LE(e.mean / e.interior_mean, 1.5) << face_key(e.a) << "/" << face_key(e.b);
  }
}

TEST(AdjacentTexelMetric, StatsBounds) {
  const GaussianScene scene = random_scene(92, 1500);
  const SeamReport r = adjacent_texel_metric(bake_probe(Vec3::Zero(), SplatRenderer(scene), 16));
  for (const EdgeStats &e : r.edges) {
    EXPECT_GE(e.mean, 0.0);
    EXPECT_LE(e.mean, e.max);
    EXPECT_LE(e.max, 1.0);
  }
  EXPECT_LE(r.mean, r.max);
  EXPECT_THROW(adjacent_texel_metric(Cubemap()), DomainError);
}

TEST(CompareRenderers, SameRendererGivesUnitRatios) {
  const GaussianScene scene = random_scene(93, 1000);
  const RayTraceRenderer ray(scene);
  const RendererComparison c = compare_renderers(ray, ray, Vec3::Zero(), 16);
  for (const auto &r : c.ratio) {
    ASSERT_TRUE(r);
    EXPECT_EQ(*r, 1.0);
  }
  EXPECT_EQ(c.overall_ratio, 1.0);
}

TEST(CompareRenderers, SwappingInvertsRatios) {
  const GaussianScene scene = random_scene(94, 1000);
  const RayTraceRenderer ray(scene);
  const SplatRenderer splat(scene);
  const RendererComparison ab = compare_renderers(splat, ray, Vec3::Zero(), 16);
  const RendererComparison ba = compare_renderers(ray, splat, Vec3::Zero(), 16);
  EXPECT_EQ(ab.first_kind, RendererKind::splat);
  EXPECT_EQ(ba.first_kind, RendererKind::raytrace);
  for (int e = 0; e < kCubeEdgeCount; ++e) {
    ASSERT_TRUE(ab.ratio[e] && ba.ratio[e]);
    EXPECT_NEAR(*ab.ratio[e] * *ba.ratio[e], 1.0, 1e-12);
  }
}

TEST(CompareRenderers, EmptySceneRatioNotApplicable) {
  const GaussianScene scene;
  const RendererComparison c =
      compare_renderers(SplatRenderer(scene), RayTraceRenderer(scene), Vec3::Zero(), 8);
  for (const auto &r : c.ratio) {
    EXPECT_FALSE(r);
  }
  EXPECT_FALSE(c.overall_ratio);
  EXPECT_EQ(c.first.mean, 0.0);
}

TEST(CompareRenderers, SeamSceneSplatsWorseThanRayTracing) {
  const GaussianScene scene = synthetic::make_scene(synthetic::SceneKind::seam, 200, 3);
  WorkerPool pool;
  const RendererComparison c =
      compare_renderers(SplatRenderer(scene), RayTraceRenderer(scene), Vec3::Zero(), 64, &pool);
  ASSERT_TRUE(c.overall_ratio);
  EXPECT_GT(*c.overall_ratio, 1.0);
  EXPECT_GT(c.first.mean, c.second.mean);
}

TEST(SeamStudy, SerializesEveryEdge) {
  SeamStudy study;
  study.face_res = 8;
  SeamReport ray, splat;
  for (int e = 0; e < kCubeEdgeCount; ++e) {
    ray.edges[e] = {cube_edges()[e].first, cube_edges()[e].second, 0.01 * (e + 1), 0.1, 8, 0.01};
    splat.edges[e] = {cube_edges()[e].first, cube_edges()[e].second, 0.03 * (e + 1), 0.2, 8, 0.02};
  }
  ray.mean = 0.05;
  splat.mean = 0.15;
  study.raytrace = ray;
  study.splat = splat;
  study.exact = ExactEdgeResult{0.0, 0.0, 3072};
  EXPECT_NEAR(*study.ratio(), 3.0, 1e-12);
  EXPECT_NEAR(*study.ratio(4), 3.0, 1e-12);

  const auto j = nlohmann::json::parse(seam_study_json(study));
  ASSERT_EQ(j.at("edges").size(), 12u);
  EXPECT_EQ(j.at("edges").at(0).at("face_a"), std::string(face_key(cube_edges()[0].first)));
  EXPECT_NEAR(j.at("edges").at(2).at("ratio").get<double>(), 3.0, 1e-12);

  const std::string csv = seam_study_csv(study);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 24);

  study.splat.reset();
  EXPECT_FALSE(study.ratio());
  EXPECT_TRUE(nlohmann::json::parse(seam_study_json(study)).at("edges").at(0).at("ratio").is_null());
}

} // namespace
} // namespace gbake
