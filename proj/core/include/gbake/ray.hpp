#pragma once

#include "gbake/types.hpp"

#include <cstdint>

namespace gbake {

/// Smallest accepted peak distance; keeps particles straddling the probe
/// origin from producing backward peaks.
inline constexpr double kDefaultRayTMin = 1e-4;

struct Ray {
  Vec3 origin = Vec3::Zero();
  Vec3 direction = Vec3::UnitZ(); ///< unit length
  double t_min = kDefaultRayTMin;
};

/// Builds a ray with a normalized direction whose zero components are +0.
Ray make_ray(const Vec3 &origin, const Vec3 &direction, double t_min = kDefaultRayTMin);

/// Response of a single particle along a ray, taken at the point of maximum opacity.
struct HitRecord {
  std::uint32_t particle_index = 0;
  double t_peak = 0.0;
  double alpha = 0.0;
  Rgb rgb = Rgb::Zero();
};

struct RenderSettings {
  double transmittance_floor = 1e-4;
  double alpha_floor = 1.0 / 255.0;
  Rgb background = Rgb::Zero();
  /// Mahalanobis cut shared by BVH boxes and per-particle candidate culling.
  double sigma_cut = 3.0;

  /// Throws DomainError if any field is outside its valid range.
  void validate() const;
};

} // namespace gbake
