#include "gbake/gaussian_scene.hpp"

#include "gbake/error.hpp"

#include <cmath>
#include <string>

namespace gbake {

namespace {

void check_scale(const Vec3 &scale) {
  if (!(scale.array() > 0.0).all() || !scale.allFinite()) {
    throw DomainError("gaussian scale must be positive and finite");
  }
}

} // namespace

Mat3 covariance(const Quat &rotation, const Vec3 &scale) {
  check_scale(scale);
  const Mat3 r = rotation.normalized().toRotationMatrix();
  return r * scale.cwiseAbs2().asDiagonal() * r.transpose();
}

Mat3 inverse_covariance(const Quat &rotation, const Vec3 &scale) {
  check_scale(scale);
  const Mat3 r = rotation.normalized().toRotationMatrix();
  return r * scale.cwiseAbs2().cwiseInverse().asDiagonal() * r.transpose();
}

Aabb particle_bounds(const Vec3 &mean, const Mat3 &cov, double sigma_cut) {
  const Vec3 half = sigma_cut * cov.diagonal().cwiseSqrt();
  return Aabb{mean - half, mean + half};
}

GaussianScene::GaussianScene(std::vector<GaussianParticle> particles, int sh_degree)
    : particles_(std::move(particles)), sh_degree_(sh_degree) {
  if (sh_degree < 0 || sh_degree > kMaxShDegree) {
    throw DomainError("sh degree must be in [0, 3], got " + std::to_string(sh_degree));
  }
  inv_cov_.reserve(particles_.size());
  axis_stddev_.reserve(particles_.size());
  bounds_.reserve(particles_.size());
  for (auto &p : particles_) {
    if (!p.mean.allFinite()) {
      throw DomainError("gaussian mean must be finite");
    }
    if (!(p.opacity > 0.0 && p.opacity <= 1.0)) {
      throw DomainError("gaussian opacity must be in (0, 1]");
    }
    const double qn = p.rotation.norm();
    if (!(qn > 0.0) || !std::isfinite(qn)) {
      throw DomainError("gaussian rotation must be a non-zero quaternion");
    }
    p.rotation.normalize();
    inv_cov_.push_back(inverse_covariance(p.rotation, p.scale));
    const Mat3 cov = covariance(p.rotation, p.scale);
    axis_stddev_.push_back(cov.diagonal().cwiseSqrt());
    bounds_.push_back(particle_bounds(p.mean, cov));
    world_aabb_.extend(bounds_.back());
  }
}

} // namespace gbake
