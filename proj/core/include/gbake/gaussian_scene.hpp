#pragma once

#include "gbake/spherical_harmonics.hpp"
#include "gbake/types.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace gbake {

/// One anisotropic 3D Gaussian with activated parameters.
struct GaussianParticle {
  Vec3 mean = Vec3::Zero();
  Quat rotation = Quat::Identity(); ///< unit quaternion
  Vec3 scale = Vec3::Ones();        ///< per-axis standard deviations, all > 0
  double opacity = 1.0;             ///< in (0, 1]
  ShCoeffs sh{};                    ///< channel-major, zero-padded to degree 3
};

/// R diag(s^2) R^T. Throws DomainError for non-positive scale.
Mat3 covariance(const Quat &rotation, const Vec3 &scale);

/// R diag(1/s^2) R^T, assembled directly rather than by inverting the covariance.
Mat3 inverse_covariance(const Quat &rotation, const Vec3 &scale);

/// Axis-aligned box of the sigma_cut ellipsoid: mean +/- sigma_cut * sqrt(diag(cov)).
Aabb particle_bounds(const Vec3 &mean, const Mat3 &cov, double sigma_cut = 3.0);

/// Immutable particle collection with per-particle derived quantities.
///
/// Safe for concurrent reads once constructed. An empty scene is representable
/// (renderers return background), but loaders and the BVH reject it.
class GaussianScene {
public:
  GaussianScene() = default;

  /// Normalizes rotations and precomputes inverse covariances and bounds.
  /// Throws DomainError on invalid particle parameters.
  explicit GaussianScene(std::vector<GaussianParticle> particles, int sh_degree = kMaxShDegree);

  std::size_t size() const { return particles_.size(); }
  bool empty() const { return particles_.empty(); }

  std::span<const GaussianParticle> particles() const { return particles_; }
  const GaussianParticle &particle(std::size_t i) const { return particles_[i]; }
  const Mat3 &inv_cov(std::size_t i) const { return inv_cov_[i]; }
  /// sqrt(diag(covariance)): the per-axis standard deviation of particle i.
  const Vec3 &axis_stddev(std::size_t i) const { return axis_stddev_[i]; }
  /// 3-sigma box of particle i.
  const Aabb &bounds(std::size_t i) const { return bounds_[i]; }
  /// Union of every particle's 3-sigma box.
  const Aabb &world_aabb() const { return world_aabb_; }

  int sh_degree() const { return sh_degree_; }

  /// Particles dropped by the opacity floor while loading (0 for scenes built in memory).
  std::size_t culled_on_load() const { return culled_on_load_; }
  void set_culled_on_load(std::size_t n) { culled_on_load_ = n; }

private:
  std::vector<GaussianParticle> particles_;
  std::vector<Mat3> inv_cov_;
  std::vector<Vec3> axis_stddev_;
  std::vector<Aabb> bounds_;
  Aabb world_aabb_;
  int sh_degree_ = kMaxShDegree;
  std::size_t culled_on_load_ = 0;
};

} // namespace gbake
