#pragma once

#include "gbake/camera.hpp"
#include "gbake/gaussian_scene.hpp"
#include "gbake/image.hpp"
#include "gbake/ray.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace gbake {

class WorkerPool;

struct SplatSettings {
  double near_plane = 0.01;
  /// Low-pass filter added to the diagonal of every 2D footprint, in pixels^2.
  double dilation = 0.3;
  double alpha_clip = 0.999;
  double alpha_floor = 1.0 / 255.0;
  double transmittance_floor = 1e-4;
  Rgb background = Rgb::Zero();
  /// Footprint rectangle half-extent in standard deviations.
  double footprint_sigma = 3.0;
  /// The Jacobian is evaluated with x/z and y/z clamped to this multiple of
  /// tan(fov/2) = 1, as 3DGS rasterizers do; infinity disables the clamp.
  double jacobian_clamp = 1.3;

  void validate() const;
};

/// 2D screen-space footprint of one particle under one camera.
struct ProjectedSplat {
  std::uint32_t particle_index = 0;
  Vec2 center_px = Vec2::Zero(); ///< pixel units, origin at the top-left image corner
  Mat2 cov2d = Mat2::Identity(); ///< pixels^2, dilation included
  double depth = 0.0;            ///< camera-space distance along forward
  double alpha_peak = 0.0;
  Rgb rgb = Rgb::Zero();
};

/// Perspective projection of particle `index` with the classic EWA local
/// affine approximation: the Jacobian of the projection is evaluated at the
/// particle mean, so the footprint depends on where the particle sits relative
/// to the optical axis. Returns nullopt for particles at or behind the near plane.
std::optional<ProjectedSplat> project_particle(const GaussianScene &scene, std::uint32_t index,
                                               const Camera &camera, int face_res,
                                               const SplatSettings &settings);

/// Depth-sorted EWA rasterization of an F x F pi/2 view.
/// Throws DomainError for F < 1 or a non-orthonormal basis.
Image rasterize_view(const GaussianScene &scene, const Camera &camera, int face_res,
                     const SplatSettings &settings, WorkerPool *pool = nullptr);

} // namespace gbake
