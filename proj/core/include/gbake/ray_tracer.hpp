#pragma once

#include "gbake/bvh.hpp"
#include "gbake/camera.hpp"
#include "gbake/gaussian_scene.hpp"
#include "gbake/image.hpp"
#include "gbake/ray.hpp"

#include <optional>
#include <span>
#include <vector>

namespace gbake {

class WorkerPool;

/// Peak response of particle `index` along `ray`.
///
/// The peak sits at t* = ((mu - o)^T S d) / (d^T S d) with S the inverse
/// covariance, and alpha = opacity * exp(-m/2) where m is the Mahalanobis
/// distance of o + t* d. A record is returned iff t* > ray.t_min,
/// m <= sigma_cut^2 and alpha >= alpha_floor. Only (o, d) enter; no camera
/// frame is involved.
std::optional<HitRecord> particle_response(const Ray &ray, const GaussianScene &scene,
                                           std::uint32_t index, const RenderSettings &settings);

struct TraceResult {
  Rgb color = Rgb::Zero();
  double transmittance = 1.0;
  std::size_t composited = 0; ///< hits blended before termination
};

/// Sorts hits by (t_peak, particle_index).
void sort_hits(std::vector<HitRecord> &hits);

/// Front-to-back compositing of already sorted hits, stopping once
/// transmittance drops below the floor, then blending the background.
TraceResult composite(std::span<const HitRecord> sorted_hits, const RenderSettings &settings);

/// Ray-traced volume renderer over an immutable scene. Thread-safe for
/// concurrent trace/render calls.
class RayTracer {
public:
  /// Builds the BVH (skipped for an empty scene, which renders as background).
  RayTracer(const GaussianScene &scene, RenderSettings settings = {});

  const GaussianScene &scene() const { return *scene_; }
  const RenderSettings &settings() const { return settings_; }
  const Bvh *bvh() const { return bvh_ ? &*bvh_ : nullptr; }

  TraceResult trace(const Ray &ray) const;
  /// Same as trace(ray), reusing `scratch` for hit storage.
  TraceResult trace(const Ray &ray, std::vector<HitRecord> &scratch) const;

  /// Reference path visiting every particle; bit-identical to trace().
  TraceResult trace_brute_force(const Ray &ray) const;

  /// Collects unsorted hits through the BVH.
  void gather(const Ray &ray, std::vector<HitRecord> &hits) const;

  /// F x F view through a pi/2 camera. Throws DomainError for F < 1 or a
  /// non-orthonormal basis. Rows are distributed over `pool` when given.
  Image render_view(const Camera &camera, int face_res, WorkerPool *pool = nullptr) const;

private:
  const GaussianScene *scene_;
  RenderSettings settings_;
  std::optional<Bvh> bvh_;
};

} // namespace gbake
