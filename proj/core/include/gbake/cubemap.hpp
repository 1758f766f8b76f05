#pragma once

#include "gbake/camera.hpp"
#include "gbake/image.hpp"
#include "gbake/renderer.hpp"

#include <array>

namespace gbake {

/// Six square linear-RGB faces indexed by Face.
class Cubemap {
public:
  Cubemap() = default;
  explicit Cubemap(int face_res);

  int face_res() const { return face_res_; }

  Image &face(Face f) { return faces_[static_cast<int>(f)]; }
  const Image &face(Face f) const { return faces_[static_cast<int>(f)]; }

  /// Replaces one face. Throws DomainError if its size differs from face_res().
  void set_face(Face f, Image image);

  /// Throws DomainError unless all six faces are F x F.
  void validate() const;

private:
  int face_res_ = 0;
  std::array<Image, 6> faces_;
};

/// Renders the six axis-aligned pi/2 views sharing `position` as origin.
/// Faces are left in linear radiance; quantization happens at export.
Cubemap bake_probe(const Vec3 &position, const FaceRenderer &renderer, int face_res,
                   WorkerPool *pool = nullptr);

} // namespace gbake
