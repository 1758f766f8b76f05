#include "gbake/cubemap.hpp"

#include "gbake/error.hpp"

#include <string>

namespace gbake {

std::string_view renderer_name(RendererKind kind) {
  return kind == RendererKind::raytrace ? "raytrace" : "splat";
}

RendererKind parse_renderer(std::string_view name) {
  if (name == "raytrace") {
    return RendererKind::raytrace;
  }
  if (name == "splat") {
    return RendererKind::splat;
  }
  throw DomainError("unknown renderer '" + std::string(name) + "' (expected raytrace or splat)");
}

Cubemap::Cubemap(int face_res) : face_res_(face_res) {
  if (face_res < 1) {
    throw DomainError("face resolution must be at least 1");
  }
  for (auto &f : faces_) {
    f = Image(face_res, face_res);
  }
}

void Cubemap::set_face(Face f, Image image) {
  if (image.width() != face_res_ || image.height() != face_res_) {
    throw DomainError("cubemap face " + std::string(face_key(f)) + " must be " +
                      std::to_string(face_res_) + "x" + std::to_string(face_res_));
  }
  faces_[static_cast<int>(f)] = std::move(image);
}

void Cubemap::validate() const {
  if (face_res_ < 1) {
    throw DomainError("cubemap has no faces");
  }
  for (Face f : kAllFaces) {
    const Image &img = face(f);
    if (img.width() != face_res_ || img.height() != face_res_) {
      throw DomainError("cubemap faces have mismatched resolutions");
    }
  }
}

Cubemap bake_probe(const Vec3 &position, const FaceRenderer &renderer, int face_res,
                   WorkerPool *pool) {
  Cubemap cubemap(face_res);
  for (Face f : kAllFaces) {
    cubemap.set_face(f, renderer.render(face_camera(position, f), face_res, pool));
  }
  return cubemap;
}

} // namespace gbake
