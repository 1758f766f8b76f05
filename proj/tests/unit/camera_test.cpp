#include "gbake/camera.hpp"
#include "gbake/error.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace gbake {
namespace {

TEST(FaceBasis, MatchesCubeTextureConvention) {
  struct Want {
    Face face;
    Vec3 forward, up, right;
  };
  const Want table[] = {
      {Face::px, {1, 0, 0}, {0, 1, 0}, {0, 0, -1}}, {Face::nx, {-1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
      {Face::py, {0, 1, 0}, {0, 0, -1}, {1, 0, 0}}, {Face::ny, {0, -1, 0}, {0, 0, 1}, {1, 0, 0}},
      {Face::pz, {0, 0, 1}, {0, 1, 0}, {1, 0, 0}},  {Face::nz, {0, 0, -1}, {0, 1, 0}, {-1, 0, 0}},
  };
  for (const auto &w : table) {
    const CameraBasis b = face_basis(w.face);
    EXPECT_EQ(b.forward, w.forward) << face_key(w.face);
    EXPECT_EQ(b.up, w.up) << face_key(w.face);
    EXPECT_EQ(b.right, w.right) << face_key(w.face);
  }
}

TEST(FaceBasis, RightHandedOrthonormal) {
  for (Face f : kAllFaces) {
    const CameraBasis b = face_basis(f);
    EXPECT_NO_THROW(check_orthonormal(b));
    EXPECT_EQ(b.right.cross(b.up), b.forward) << face_key(f);
    EXPECT_EQ(b.up.cross(b.forward), b.right) << face_key(f);
    EXPECT_EQ(b.forward.cross(b.right), b.up) << face_key(f);
  }
}

TEST(FaceBasis, KeysRoundTrip) {
  for (Face f : kAllFaces) {
    EXPECT_EQ(parse_face(face_key(f)), f);
  }
  EXPECT_THROW(parse_face("xp"), DomainError);
  EXPECT_THROW(parse_face(""), DomainError);
  EXPECT_THROW(parse_face("PX"), DomainError);
}

TEST(CameraDirection, CenterPixelLooksForward) {
  for (Face f : kAllFaces) {
    const Camera cam = face_camera(Vec3::Zero(), f);
    EXPECT_EQ(pixel_direction(cam, 1, 0, 0), face_basis(f).forward);
  }
  EXPECT_EQ(pixel_direction(face_camera(Vec3::Zero(), Face::pz), 1, 0, 0), Vec3(0, 0, 1));
  EXPECT_EQ(pixel_direction(face_camera(Vec3::Zero(), Face::px), 1, 0, 0), Vec3(1, 0, 0));
}

TEST(CameraDirection, PixelCentersFollowImagePlaneFormula) {
  constexpr int F = 7;
  const Camera cam = face_camera(Vec3::Zero(), Face::pz);
  for (int j = 0; j < F; ++j) {
    for (int i = 0; i < F; ++i) {
      const double u = 2.0 * (i + 0.5) / F - 1.0;
      const double v = 1.0 - 2.0 * (j + 0.5) / F;
      const Vec3 want = Vec3(u, v, 1.0).normalized();
      EXPECT_LE((pixel_direction(cam, F, i, j) - want).norm(), 1e-15);
    }
  }
}

TEST(CameraDirection, CornerApproachesFrustumDiagonal) {
  const Camera cam = face_camera(Vec3::Zero(), Face::pz);
  const int F = 1 << 20;
  const Vec3 top_left = pixel_direction(cam, F, 0, 0);
  const Vec3 bottom_right = pixel_direction(cam, F, F - 1, F - 1);
  EXPECT_LE((top_left - Vec3(-1, 1, 1).normalized()).norm(), 1e-5);
  EXPECT_LE((bottom_right - Vec3(1, -1, 1).normalized()).norm(), 1e-5);
  // pi/2 field of view: the image-plane edge sits at 45 degrees.
  const Vec3 right_edge = camera_direction(cam.basis, 1.0, 0.0);
  EXPECT_NEAR(std::acos(right_edge.dot(Vec3::UnitZ())), std::numbers::pi / 4, 1e-12);
}

TEST(CameraDirection, NoNegativeZeros) {
  for (Face f : kAllFaces) {
    const Vec3 d = camera_direction(face_basis(f), 0.0, 0.0);
    for (int a = 0; a < 3; ++a) {
      EXPECT_FALSE(d[a] == 0.0 && std::signbit(d[a])) << face_key(f);
    }
  }
}

TEST(CheckOrthonormal, RejectsSkewedBasis) {
  CameraBasis b = face_basis(Face::pz);
  b.up = Vec3(0.1, 1, 0);
  EXPECT_THROW(check_orthonormal(b), DomainError);
  b.up = Vec3(0, 2, 0);
  EXPECT_THROW(check_orthonormal(b), DomainError);
}

} // namespace
} // namespace gbake
