#include "gbake/ray_tracer.hpp"

#include "gbake/error.hpp"
#include "gbake/worker_pool.hpp"

#include <algorithm>
#include <cmath>

namespace gbake {

std::optional<HitRecord> particle_response(const Ray &ray, const GaussianScene &scene,
                                           std::uint32_t index, const RenderSettings &settings) {
  const GaussianParticle &p = scene.particle(index);
  const Mat3 &inv_cov = scene.inv_cov(index);
  const Vec3 &d = ray.direction;

  const Vec3 s_d = inv_cov * d;
  const double denom = d.dot(s_d);
  if (!(denom > 0.0)) {
    return std::nullopt;
  }
  const Vec3 to_mean = p.mean - ray.origin;
  const double t_peak = to_mean.dot(s_d) / denom;
  if (!(t_peak > ray.t_min) || !std::isfinite(t_peak)) {
    return std::nullopt;
  }
  const Vec3 offset = ray.origin + t_peak * d - p.mean;
  const double mahalanobis = offset.dot(inv_cov * offset);
  if (!(mahalanobis <= settings.sigma_cut * settings.sigma_cut)) {
    return std::nullopt;
  }
  const double alpha = p.opacity * std::exp(-0.5 * mahalanobis);
  if (!(alpha >= settings.alpha_floor)) {
    return std::nullopt;
  }
  return HitRecord{index, t_peak, std::min(alpha, 1.0), sh_color(p.sh, d)};
}

void sort_hits(std::vector<HitRecord> &hits) {
  std::sort(hits.begin(), hits.end(), [](const HitRecord &a, const HitRecord &b) {
    return a.t_peak < b.t_peak || (a.t_peak == b.t_peak && a.particle_index < b.particle_index);
  });
}

TraceResult composite(std::span<const HitRecord> sorted_hits, const RenderSettings &settings) {
  TraceResult result;
  for (const HitRecord &hit : sorted_hits) {
    result.color += (hit.alpha * result.transmittance) * hit.rgb;
    result.transmittance *= 1.0 - hit.alpha;
    ++result.composited;
    if (result.transmittance < settings.transmittance_floor) {
      break;
    }
  }
  result.color += result.transmittance * settings.background;
  return result;
}

RayTracer::RayTracer(const GaussianScene &scene, RenderSettings settings)
    : scene_(&scene), settings_(std::move(settings)) {
  settings_.validate();
  if (!scene.empty()) {
    bvh_ = Bvh::build(scene, settings_.sigma_cut);
  }
}

void RayTracer::gather(const Ray &ray, std::vector<HitRecord> &hits) const {
  hits.clear();
  if (!bvh_) {
    return;
  }
  bvh_->for_each_candidate(ray, [&](std::uint32_t i) {
    if (auto hit = particle_response(ray, *scene_, i, settings_)) {
      hits.push_back(*hit);
    }
  });
}

TraceResult RayTracer::trace(const Ray &ray, std::vector<HitRecord> &scratch) const {
  gather(ray, scratch);
  sort_hits(scratch);
  return composite(scratch, settings_);
}

TraceResult RayTracer::trace(const Ray &ray) const {
  std::vector<HitRecord> scratch;
  return trace(ray, scratch);
}

TraceResult RayTracer::trace_brute_force(const Ray &ray) const {
  std::vector<HitRecord> hits;
  for (std::size_t i = 0; i < scene_->size(); ++i) {
    if (auto hit = particle_response(ray, *scene_, static_cast<std::uint32_t>(i), settings_)) {
      hits.push_back(*hit);
    }
  }
  sort_hits(hits);
  return composite(hits, settings_);
}

Image RayTracer::render_view(const Camera &camera, int face_res, WorkerPool *pool) const {
  if (face_res < 1) {
    throw DomainError("face resolution must be at least 1");
  }
  check_orthonormal(camera.basis);
  Image image(face_res, face_res);
  auto render_row = [&](std::size_t row) {
    std::vector<HitRecord> scratch;
    const int j = static_cast<int>(row);
    for (int i = 0; i < face_res; ++i) {
      const Ray ray{camera.origin, pixel_direction(camera, face_res, i, j), kDefaultRayTMin};
      image.at(i, j) = trace(ray, scratch).color;
    }
  };
  if (pool != nullptr) {
    pool->parallel_for(static_cast<std::size_t>(face_res), render_row);
  } else {
    for (int j = 0; j < face_res; ++j) {
      render_row(static_cast<std::size_t>(j));
    }
  }
  return image;
}

} // namespace gbake
