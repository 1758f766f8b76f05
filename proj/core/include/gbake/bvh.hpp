#pragma once

#include "gbake/gaussian_scene.hpp"
#include "gbake/ray.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace gbake {

/// Binary BVH over particle sigma_cut boxes (mean +/- sigma_cut * axis stddev).
///
/// Nodes are stored depth-first; an interior node's left child immediately
/// follows it and `second_child` names the right one. Leaves reference a
/// contiguous range of `particle_order()`.
class Bvh {
public:
  static constexpr std::uint32_t kMaxLeafSize = 8;

  struct Node {
    Aabb box;
    std::uint32_t first = 0; ///< leaf: offset into particle_order
    std::uint32_t count = 0; ///< leaf: number of particles; 0 for interior nodes
    std::uint32_t second_child = 0;

    bool is_leaf() const { return count > 0; }
  };

  /// Median split over box centroids along the widest centroid axis.
  /// Deterministic for a fixed scene. Throws EmptySceneError for an empty scene.
  static Bvh build(const GaussianScene &scene, double sigma_cut = 3.0);

  std::span<const Node> nodes() const { return nodes_; }
  std::span<const std::uint32_t> particle_order() const { return order_; }
  const Aabb &particle_box(std::size_t i) const { return boxes_[i]; }
  double sigma_cut() const { return sigma_cut_; }

  /// Calls visit(particle_index) for every particle whose box the ray may
  /// intersect at t >= ray.t_min. Box tests are slightly conservative.
  template <typename Visitor> void for_each_candidate(const Ray &ray, Visitor &&visit) const;

private:
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> order_;
  std::vector<Aabb> boxes_;
  double sigma_cut_ = 3.0;
};

/// Slab test against `box` padded by a relative slack so that boundary points
/// are never lost to rounding.
bool ray_hits_box(const Aabb &box, const Vec3 &origin, const Vec3 &inv_dir, double t_min);

template <typename Visitor> void Bvh::for_each_candidate(const Ray &ray, Visitor &&visit) const {
  if (nodes_.empty()) {
    return;
  }
  const Vec3 inv_dir = ray.direction.cwiseInverse();
  std::uint32_t stack[64];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const Node &node = nodes_[stack[--top]];
    if (!ray_hits_box(node.box, ray.origin, inv_dir, ray.t_min)) {
      continue;
    }
    if (node.is_leaf()) {
      for (std::uint32_t k = node.first; k < node.first + node.count; ++k) {
        const std::uint32_t p = order_[k];
        if (ray_hits_box(boxes_[p], ray.origin, inv_dir, ray.t_min)) {
          visit(p);
        }
      }
    } else {
      const auto self = static_cast<std::uint32_t>(&node - nodes_.data());
      stack[top++] = node.second_child;
      stack[top++] = self + 1;
    }
  }
}

} // namespace gbake
