#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <algorithm>
#include <limits>

namespace gbake {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using Quat = Eigen::Quaterniond;

/// Linear RGB radiance. Components are not clamped above.
using Rgb = Eigen::Vector3d;

struct Aabb {
  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
  Vec3 hi = Vec3::Constant(-std::numeric_limits<double>::infinity());

  bool empty() const { return (lo.array() > hi.array()).any(); }

  void extend(const Aabb &other) {
    lo = lo.cwiseMin(other.lo);
    hi = hi.cwiseMax(other.hi);
  }

  void extend(const Vec3 &p) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }

  Vec3 center() const { return 0.5 * (lo + hi); }

  bool contains(const Aabb &other) const {
    return (lo.array() <= other.lo.array()).all() && (hi.array() >= other.hi.array()).all();
  }

  bool contains(const Vec3 &p) const {
    return (lo.array() <= p.array()).all() && (hi.array() >= p.array()).all();
  }

  friend bool operator==(const Aabb &a, const Aabb &b) { return a.lo == b.lo && a.hi == b.hi; }
};

/// Replaces negative zeros by positive zeros so that equal directions compare
/// bit-identical regardless of how they were assembled.
inline Vec3 canonical_zero(Vec3 v) {
  return v + Vec3::Zero();
}

} // namespace gbake
