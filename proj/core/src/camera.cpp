#include "gbake/camera.hpp"

#include "gbake/error.hpp"
#include "gbake/ray.hpp"

#include <cmath>
#include <string>

namespace gbake {

std::string_view face_key(Face face) {
  switch (face) {
  case Face::px:
    return "px";
  case Face::nx:
    return "nx";
  case Face::py:
    return "py";
  case Face::ny:
    return "ny";
  case Face::pz:
    return "pz";
  case Face::nz:
    return "nz";
  }
  throw DomainError("invalid face");
}

Face parse_face(std::string_view key) {
  for (Face f : kAllFaces) {
    if (face_key(f) == key) {
      return f;
    }
  }
  throw DomainError("unknown cube face key '" + std::string(key) +
                    "' (expected px, nx, py, ny, pz or nz)");
}

CameraBasis face_basis(Face face) {
  switch (face) {
  case Face::px:
    return {Vec3(0, 0, -1), Vec3(0, 1, 0), Vec3(1, 0, 0)};
  case Face::nx:
    return {Vec3(0, 0, 1), Vec3(0, 1, 0), Vec3(-1, 0, 0)};
  case Face::py:
    return {Vec3(1, 0, 0), Vec3(0, 0, -1), Vec3(0, 1, 0)};
  case Face::ny:
    return {Vec3(1, 0, 0), Vec3(0, 0, 1), Vec3(0, -1, 0)};
  case Face::pz:
    return {Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)};
  case Face::nz:
    return {Vec3(-1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, -1)};
  }
  throw DomainError("invalid face");
}

void check_orthonormal(const CameraBasis &basis, double tol) {
  const Vec3 *axes[3] = {&basis.right, &basis.up, &basis.forward};
  for (int a = 0; a < 3; ++a) {
    if (!axes[a]->allFinite() || std::abs(axes[a]->norm() - 1.0) > tol) {
      throw DomainError("camera basis vectors must be unit length");
    }
    for (int b = a + 1; b < 3; ++b) {
      if (std::abs(axes[a]->dot(*axes[b])) > tol) {
        throw DomainError("camera basis vectors must be mutually orthogonal");
      }
    }
  }
}

Vec3 camera_direction(const CameraBasis &basis, double u, double v) {
  const Vec3 d = basis.right * u + basis.up * v + basis.forward;
  return canonical_zero(d / d.norm());
}

Ray make_ray(const Vec3 &origin, const Vec3 &direction, double t_min) {
  return Ray{origin, canonical_zero(direction / direction.norm()), t_min};
}

void RenderSettings::validate() const {
  if (!(transmittance_floor > 0.0 && transmittance_floor < 1.0)) {
    throw DomainError("transmittance_floor must be in (0, 1)");
  }
  if (!(alpha_floor > 0.0 && alpha_floor < 1.0)) {
    throw DomainError("alpha_floor must be in (0, 1)");
  }
  if (!(sigma_cut > 0.0) || !std::isfinite(sigma_cut)) {
    throw DomainError("sigma_cut must be positive");
  }
  if (!background.allFinite()) {
    throw DomainError("background must be finite");
  }
}

} // namespace gbake
