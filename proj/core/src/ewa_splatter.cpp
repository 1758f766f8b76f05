#include "gbake/ewa_splatter.hpp"

#include "gbake/error.hpp"
#include "gbake/worker_pool.hpp"

#include <algorithm>
#include <cmath>

namespace gbake {

void SplatSettings::validate() const {
  if (!(near_plane > 0.0)) {
    throw DomainError("near plane must be positive");
  }
  if (!(dilation >= 0.0)) {
    throw DomainError("dilation must be non-negative");
  }
  if (!(alpha_clip > 0.0 && alpha_clip <= 1.0)) {
    throw DomainError("alpha clip must be in (0, 1]");
  }
  if (!(alpha_floor > 0.0 && alpha_floor < 1.0)) {
    throw DomainError("alpha_floor must be in (0, 1)");
  }
  if (!(transmittance_floor > 0.0 && transmittance_floor < 1.0)) {
    throw DomainError("transmittance_floor must be in (0, 1)");
  }
  if (!(footprint_sigma > 0.0)) {
    throw DomainError("footprint extent must be positive");
  }
  if (!(jacobian_clamp > 0.0)) {
    throw DomainError("jacobian clamp must be positive");
  }
}

std::optional<ProjectedSplat> project_particle(const GaussianScene &scene, std::uint32_t index,
                                               const Camera &camera, int face_res,
                                               const SplatSettings &settings) {
  const GaussianParticle &p = scene.particle(index);
  Mat3 world_to_cam;
  world_to_cam.row(0) = camera.basis.right.transpose();
  world_to_cam.row(1) = camera.basis.up.transpose();
  world_to_cam.row(2) = camera.basis.forward.transpose();

  const Vec3 cam = world_to_cam * (p.mean - camera.origin);
  const double z = cam.z();
  if (!(z > settings.near_plane)) {
    return std::nullopt;
  }

  const double focal = 0.5 * face_res;
  const double half = 0.5 * face_res;
  const double tx = std::clamp(cam.x() / z, -settings.jacobian_clamp, settings.jacobian_clamp);
  const double ty = std::clamp(cam.y() / z, -settings.jacobian_clamp, settings.jacobian_clamp);
  Eigen::Matrix<double, 2, 3> jacobian;
  jacobian << focal / z, 0.0, -focal * tx / z, //
      0.0, -focal / z, focal * ty / z;

  const Mat3 cov_cam = world_to_cam * covariance(p.rotation, p.scale) * world_to_cam.transpose();
  Mat2 cov2d = jacobian * cov_cam * jacobian.transpose();
  cov2d(0, 1) = cov2d(1, 0) = 0.5 * (cov2d(0, 1) + cov2d(1, 0));
  cov2d.diagonal().array() += settings.dilation;
  if (!(cov2d.determinant() > 0.0)) {
    return std::nullopt;
  }

  ProjectedSplat splat;
  splat.particle_index = index;
  splat.center_px = Vec2(focal * cam.x() / z + half, half - focal * cam.y() / z);
  splat.cov2d = cov2d;
  splat.depth = z;
  splat.alpha_peak = p.opacity;
  splat.rgb = sh_color(p.sh, (p.mean - camera.origin).normalized());
  return splat;
}

namespace {

struct PreparedSplat {
  ProjectedSplat splat;
  Mat2 conic; ///< inverse of cov2d
  int x0, x1, y0, y1;
};

} // namespace

Image rasterize_view(const GaussianScene &scene, const Camera &camera, int face_res,
                     const SplatSettings &settings, WorkerPool *pool) {
  if (face_res < 1) {
    throw DomainError("face resolution must be at least 1");
  }
  check_orthonormal(camera.basis);
  settings.validate();

  std::vector<PreparedSplat> splats;
  for (std::size_t i = 0; i < scene.size(); ++i) {
    auto splat = project_particle(scene, static_cast<std::uint32_t>(i), camera, face_res, settings);
    if (!splat) {
      continue;
    }
    const double rx = settings.footprint_sigma * std::sqrt(splat->cov2d(0, 0));
    const double ry = settings.footprint_sigma * std::sqrt(splat->cov2d(1, 1));
    const Vec2 &c = splat->center_px;
    // Pixel (i, j) has its center at (i + 0.5, j + 0.5).
    const double fx0 = std::ceil(c.x() - rx - 0.5), fx1 = std::floor(c.x() + rx - 0.5);
    const double fy0 = std::ceil(c.y() - ry - 0.5), fy1 = std::floor(c.y() + ry - 0.5);
    if (fx1 < 0.0 || fy1 < 0.0 || fx0 > face_res - 1 || fy0 > face_res - 1) {
      continue;
    }
    const auto clamp_px = [&](double v) {
      return static_cast<int>(std::clamp(v, 0.0, static_cast<double>(face_res - 1)));
    };
    splats.push_back(PreparedSplat{*splat, splat->cov2d.inverse(), clamp_px(fx0), clamp_px(fx1),
                                   clamp_px(fy0), clamp_px(fy1)});
  }
  std::sort(splats.begin(), splats.end(), [](const PreparedSplat &a, const PreparedSplat &b) {
    return a.splat.depth < b.splat.depth ||
           (a.splat.depth == b.splat.depth && a.splat.particle_index < b.splat.particle_index);
  });

  Image image(face_res, face_res);
  auto render_row = [&](std::size_t row) {
    const int j = static_cast<int>(row);
    std::vector<Rgb> color(face_res, Rgb::Zero());
    std::vector<double> transmittance(face_res, 1.0);
    std::vector<char> done(face_res, 0);
    const double py = j + 0.5;
    for (const PreparedSplat &s : splats) {
      if (j < s.y0 || j > s.y1) {
        continue;
      }
      for (int i = s.x0; i <= s.x1; ++i) {
        if (done[i]) {
          continue;
        }
        const Vec2 delta(i + 0.5 - s.splat.center_px.x(), py - s.splat.center_px.y());
        const double power = -0.5 * delta.dot(s.conic * delta);
        const double alpha = std::min(settings.alpha_clip, s.splat.alpha_peak * std::exp(power));
        if (!(alpha >= settings.alpha_floor)) {
          continue;
        }
        color[i] += (alpha * transmittance[i]) * s.splat.rgb;
        transmittance[i] *= 1.0 - alpha;
        if (transmittance[i] < settings.transmittance_floor) {
          done[i] = 1;
        }
      }
    }
    for (int i = 0; i < face_res; ++i) {
      image.at(i, j) = color[i] + transmittance[i] * settings.background;
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
