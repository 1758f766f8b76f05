#pragma once

#include "gbake/ewa_splatter.hpp"
#include "gbake/ray_tracer.hpp"

#include <string_view>

namespace gbake {

enum class RendererKind { raytrace, splat };

std::string_view renderer_name(RendererKind kind);
/// "raytrace" or "splat"; throws DomainError otherwise.
RendererKind parse_renderer(std::string_view name);

/// Anything that can produce one square pi/2 view of a scene.
class FaceRenderer {
public:
  virtual ~FaceRenderer() = default;
  virtual RendererKind kind() const = 0;
  virtual Image render(const Camera &camera, int face_res, WorkerPool *pool) const = 0;
};

class RayTraceRenderer final : public FaceRenderer {
public:
  RayTraceRenderer(const GaussianScene &scene, RenderSettings settings = {})
      : tracer_(scene, std::move(settings)) {}

  RendererKind kind() const override { return RendererKind::raytrace; }
  Image render(const Camera &camera, int face_res, WorkerPool *pool) const override {
    return tracer_.render_view(camera, face_res, pool);
  }

  const RayTracer &tracer() const { return tracer_; }

private:
  RayTracer tracer_;
};

class SplatRenderer final : public FaceRenderer {
public:
  SplatRenderer(const GaussianScene &scene, SplatSettings settings = {})
      : scene_(&scene), settings_(std::move(settings)) {
    settings_.validate();
  }

  RendererKind kind() const override { return RendererKind::splat; }
  Image render(const Camera &camera, int face_res, WorkerPool *pool) const override {
    return rasterize_view(*scene_, camera, face_res, settings_, pool);
  }

  const SplatSettings &settings() const { return settings_; }

private:
  const GaussianScene *scene_;
  SplatSettings settings_;
};

} // namespace gbake
