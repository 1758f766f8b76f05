#include "gbake/bvh.hpp"
#include "gbake/error.hpp"
#include "gbake/ray_tracer.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <set>

namespace gbake {
namespace {

GaussianScene random_scene(std::uint64_t seed, int count, double extent = 2.0) {
  std::mt19937_64 rng(seed);
  std::vector<GaussianParticle> particles;
  for (int n = 0; n < count; ++n) {
    particles.push_back(test::random_particle(rng, extent));
  }
  return GaussianScene(particles);
}

// Visits every node reachable from `index`, checking box nesting on the way down.
void walk(const Bvh &bvh, std::uint32_t index, std::vector<int> &seen, std::size_t &leaves) {
  const auto nodes = bvh.nodes();
  const Bvh::Node &node = nodes[index];
  if (node.is_leaf()) {
    ++leaves;
    EXPECT_LE(node.count, Bvh::kMaxLeafSize);
    for (std::uint32_t k = node.first; k < node.first + node.count; ++k) {
      const std::uint32_t p = bvh.particle_order()[k];
      ++seen[p];
      EXPECT_TRUE(node.box.contains(bvh.particle_box(p)));
    }
    return;
  }
  const std::uint32_t left = index + 1, right = node.second_child;
  ASSERT_LT(right, nodes.size());
  EXPECT_TRUE(node.box.contains(nodes[left].box));
  EXPECT_TRUE(node.box.contains(nodes[right].box));
  walk(bvh, left, seen, leaves);
  walk(bvh, right, seen, leaves);
}

TEST(Bvh, SingleParticleIsOneLeaf) {
  const GaussianScene scene({test::isotropic(Vec3(1, 2, 3), 0.5, 0.7)});
  const Bvh bvh = Bvh::build(scene);
  ASSERT_EQ(bvh.nodes().size(), 1u);
  EXPECT_TRUE(bvh.nodes()[0].is_leaf());
  EXPECT_EQ(bvh.nodes()[0].count, 1u);
  EXPECT_EQ(bvh.nodes()[0].box, scene.bounds(0));
  EXPECT_EQ(bvh.nodes()[0].box.lo, Vec3(-0.5, 0.5, 1.5));
  EXPECT_EQ(bvh.nodes()[0].box.hi, Vec3(2.5, 3.5, 4.5));
}

TEST(Bvh, TwoDisjointParticlesShareRoot) {
  const GaussianScene scene(
      {test::isotropic(Vec3(-5, 0, 0), 0.1, 0.7), test::isotropic(Vec3(5, 0, 0), 0.1, 0.7)});
  const Bvh bvh = Bvh::build(scene);
  const Aabb &root = bvh.nodes()[0].box;
  EXPECT_TRUE(root.contains(scene.bounds(0)));
  EXPECT_TRUE(root.contains(scene.bounds(1)));
  Aabb both = scene.bounds(0);
  both.extend(scene.bounds(1));
  EXPECT_EQ(root, both);
}

TEST(Bvh, EveryParticleInExactlyOneLeaf) {
  const GaussianScene scene = random_scene(31, 10000);
  const Bvh bvh = Bvh::build(scene);
  std::vector<int> seen(scene.size(), 0);
  std::size_t leaves = 0;
  walk(bvh, 0, seen, leaves);
  for (std::size_t i = 0; i < seen.size(); ++i) {
    ASSERT_EQ(seen[i], 1) << "particle " << i;
  }
  EXPECT_GE(leaves, scene.size() / Bvh::kMaxLeafSize);
  EXPECT_EQ(bvh.particle_order().size(), scene.size());
}

TEST(Bvh, BoxesFollowSigmaCut) {
  const GaussianScene scene = random_scene(32, 100);
  const Bvh bvh = Bvh::build(scene, 2.0);
  for (std::size_t i = 0; i < scene.size(); ++i) {
    const Vec3 half = 2.0 * scene.axis_stddev(i);
    EXPECT_EQ(bvh.particle_box(i).lo, scene.particle(i).mean - half);
    EXPECT_EQ(bvh.particle_box(i).hi, scene.particle(i).mean + half);
  }
}

TEST(Bvh, DuplicateCentersStillSplit) {
  std::vector<GaussianParticle> particles(100, test::isotropic(Vec3(1, 1, 1), 0.2, 0.5));
  const GaussianScene scene(particles);
  const Bvh bvh = Bvh::build(scene);
  std::vector<int> seen(scene.size(), 0);
  std::size_t leaves = 0;
  walk(bvh, 0, seen, leaves);
  for (int s : seen) {
    EXPECT_EQ(s, 1);
  }
}

TEST(Bvh, DeterministicBuild) {
  const GaussianScene scene = random_scene(33, 3000);
  const Bvh a = Bvh::build(scene);
  const Bvh b = Bvh::build(scene);
  ASSERT_EQ(a.nodes().size(), b.nodes().size());
  for (std::size_t n = 0; n < a.nodes().size(); ++n) {
    EXPECT_EQ(a.nodes()[n].box, b.nodes()[n].box);
    EXPECT_EQ(a.nodes()[n].first, b.nodes()[n].first);
    EXPECT_EQ(a.nodes()[n].count, b.nodes()[n].count);
    EXPECT_EQ(a.nodes()[n].second_child, b.nodes()[n].second_child);
  }
  EXPECT_TRUE(std::equal(a.particle_order().begin(), a.particle_order().end(),
                         b.particle_order().begin()));
}

TEST(Bvh, EmptySceneIsRejected) {
  EXPECT_THROW(Bvh::build(GaussianScene{}), EmptySceneError);
}

TEST(Bvh, CandidatesCoverEveryResponse) {
  const GaussianScene scene = random_scene(34, 5000);
  const Bvh bvh = Bvh::build(scene);
  const RenderSettings settings;
  std::mt19937_64 rng(35);
  std::uniform_real_distribution<double> o(-3.0, 3.0);
  for (int r = 0; r < 200; ++r) {
    const Ray ray = make_ray(Vec3(o(rng), o(rng), o(rng)), test::random_unit(rng));
    std::set<std::uint32_t> candidates;
    bvh.for_each_candidate(ray, [&](std::uint32_t i) { EXPECT_TRUE(candidates.insert(i).second); });
    for (std::uint32_t i = 0; i < scene.size(); ++i) {
      if (particle_response(ray, scene, i, settings)) {
        EXPECT_TRUE(candidates.count(i)) << "ray " << r << " particle " << i;
      }
    }
  }
}

TEST(RayHitsBox, SlabCases) {
  const Aabb box{Vec3(-1, -1, -1), Vec3(1, 1, 1)};
  const auto inv = [](const Vec3 &d) { return d.cwiseInverse(); };
  EXPECT_TRUE(ray_hits_box(box, Vec3(0, 0, -5), inv(Vec3(0, 0, 1)), 0.0));
  EXPECT_FALSE(ray_hits_box(box, Vec3(0, 0, -5), inv(Vec3(0, 0, -1)), 0.0));
  EXPECT_FALSE(ray_hits_box(box, Vec3(2, 0, -5), inv(Vec3(0, 0, 1)), 0.0));
  // Inside the box.
  EXPECT_TRUE(ray_hits_box(box, Vec3::Zero(), inv(Vec3(1, 0, 0)), 1e-4));
  // Grazing a face along its plane.
  EXPECT_TRUE(ray_hits_box(box, Vec3(1, 0, -5), inv(Vec3(0, 0, 1)), 0.0));
  // Box entirely before t_min.
  EXPECT_FALSE(ray_hits_box(box, Vec3(0, 0, 5), inv(Vec3(0, 0, 1)), 1e-4));
}

} // namespace
} // namespace gbake
