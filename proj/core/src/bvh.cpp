#include "gbake/bvh.hpp"

#include "gbake/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gbake {

namespace {

constexpr double kBoxSlack = 1e-9;

struct Builder {
  const std::vector<Aabb> &boxes;
  std::vector<Vec3> centroids;
  std::vector<std::uint32_t> &order;
  std::vector<Bvh::Node> &nodes;

  std::uint32_t build(std::uint32_t begin, std::uint32_t end) {
    const auto index = static_cast<std::uint32_t>(nodes.size());
    nodes.emplace_back();

    Aabb box, centroid_box;
    for (std::uint32_t k = begin; k < end; ++k) {
      box.extend(boxes[order[k]]);
      centroid_box.extend(centroids[order[k]]);
    }
    nodes[index].box = box;

    const std::uint32_t count = end - begin;
    const Vec3 spread = centroid_box.hi - centroid_box.lo;
    int axis = 0;
    spread.maxCoeff(&axis);
    if (count <= Bvh::kMaxLeafSize) {
      nodes[index].first = begin;
      nodes[index].count = count;
      return index;
    }

    // Ties (including fully coincident centroids) fall back to index order.
    const std::uint32_t mid = begin + count / 2;
    std::nth_element(order.begin() + begin, order.begin() + mid, order.begin() + end,
                     [&](std::uint32_t a, std::uint32_t b) {
                       const double ca = centroids[a][axis], cb = centroids[b][axis];
                       return ca < cb || (ca == cb && a < b);
                     });
    build(begin, mid);
    nodes[index].second_child = build(mid, end);
    return index;
  }
};

} // namespace

bool ray_hits_box(const Aabb &box, const Vec3 &origin, const Vec3 &inv_dir, double t_min) {
  double t_near = t_min;
  double t_far = std::numeric_limits<double>::infinity();
  for (int a = 0; a < 3; ++a) {
    const double pad = kBoxSlack * (1.0 + std::abs(box.lo[a]) + std::abs(box.hi[a]));
    double t0 = (box.lo[a] - pad - origin[a]) * inv_dir[a];
    double t1 = (box.hi[a] + pad - origin[a]) * inv_dir[a];
    if (t0 > t1) {
      std::swap(t0, t1);
    }
    // NaN (0 * inf) leaves the bound unchanged.
    t_near = t0 > t_near ? t0 : t_near;
    t_far = t1 < t_far ? t1 : t_far;
    if (t_near > t_far) {
      return false;
    }
  }
  return true;
}

Bvh Bvh::build(const GaussianScene &scene, double sigma_cut) {
  if (scene.empty()) {
    throw EmptySceneError("cannot build a BVH over an empty scene");
  }
  if (!(sigma_cut > 0.0)) {
    throw DomainError("sigma_cut must be positive");
  }
  Bvh bvh;
  bvh.sigma_cut_ = sigma_cut;
  const std::size_t n = scene.size();
  bvh.boxes_.reserve(n);
  std::vector<Vec3> centroids;
  centroids.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 &mean = scene.particle(i).mean;
    const Vec3 half = sigma_cut * scene.axis_stddev(i);
    bvh.boxes_.push_back(Aabb{mean - half, mean + half});
    centroids.push_back(bvh.boxes_.back().center());
  }
  bvh.order_.resize(n);
  std::iota(bvh.order_.begin(), bvh.order_.end(), 0u);
  bvh.nodes_.reserve(2 * (n / kMaxLeafSize + 1));

  Builder builder{bvh.boxes_, std::move(centroids), bvh.order_, bvh.nodes_};
  builder.build(0, static_cast<std::uint32_t>(n));
  return bvh;
}

} // namespace gbake
