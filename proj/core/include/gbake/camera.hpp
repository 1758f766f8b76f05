#pragma once

#include "gbake/types.hpp"

#include <array>
#include <string_view>

namespace gbake {

enum class Face { px = 0, nx = 1, py = 2, ny = 3, pz = 4, nz = 5 };

inline constexpr std::array<Face, 6> kAllFaces = {Face::px, Face::nx, Face::py,
                                                  Face::ny, Face::pz, Face::nz};

std::string_view face_key(Face face);

/// Parses "px", "nx", ... Throws DomainError for anything else.
Face parse_face(std::string_view key);

/// Orthonormal camera frame; the image plane sits at distance 1 along forward
/// and spans [-1, 1] along right and up, giving a pi/2 field of view.
struct CameraBasis {
  Vec3 right;
  Vec3 up;
  Vec3 forward;
};

/// Conventional cube-texture orientation for each face.
CameraBasis face_basis(Face face);

struct Camera {
  Vec3 origin = Vec3::Zero();
  CameraBasis basis{Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()};
};

inline Camera face_camera(const Vec3 &origin, Face face) { return Camera{origin, face_basis(face)}; }

/// Throws DomainError unless the basis is orthonormal within `tol`.
void check_orthonormal(const CameraBasis &basis, double tol = 1e-9);

/// Image-plane coordinates of the center of pixel (i, j) on an F x F image:
/// u grows to the right, v grows upward.
inline Vec2 pixel_uv(int face_res, int i, int j) {
  const double f = face_res;
  return Vec2(2.0 * (i + 0.5) / f - 1.0, 1.0 - 2.0 * (j + 0.5) / f);
}

/// normalize(right * u + up * v + forward), with +0 for zero components.
/// Every renderer and every seam check builds view directions through this.
Vec3 camera_direction(const CameraBasis &basis, double u, double v);

inline Vec3 pixel_direction(const Camera &camera, int face_res, int i, int j) {
  const Vec2 uv = pixel_uv(face_res, i, j);
  return camera_direction(camera.basis, uv.x(), uv.y());
}

} // namespace gbake
