#pragma once

#include "gbake/gaussian_scene.hpp"

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace gbake::test {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
  explicit TempDir(const std::string &tag) {
    static int counter = 0;
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("gbake_" + tag + "_" + std::to_string(rd()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir &) = delete;
  TempDir &operator=(const TempDir &) = delete;
  const std::filesystem::path &path() const { return path_; }
  std::filesystem::path operator/(const std::string &name) const { return path_ / name; }

private:
  std::filesystem::path path_;
};

inline Quat random_rotation(std::mt19937_64 &rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Quat q(n(rng), n(rng), n(rng), n(rng));
  q.normalize();
  return q;
}

inline Vec3 random_unit(std::mt19937_64 &rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec3 v(n(rng), n(rng), n(rng));
  return v.normalized();
}

/// Random anisotropic particle with degree-3 SH.
inline GaussianParticle random_particle(std::mt19937_64 &rng, double extent = 1.0) {
  std::uniform_real_distribution<double> pos(-extent, extent);
  std::uniform_real_distribution<double> scale(0.05, 0.5);
  std::uniform_real_distribution<double> opacity(0.05, 1.0);
  std::uniform_real_distribution<float> sh(-0.4f, 0.4f);
  GaussianParticle p;
  p.mean = Vec3(pos(rng), pos(rng), pos(rng));
  p.rotation = random_rotation(rng);
  p.scale = Vec3(scale(rng), scale(rng), scale(rng));
  p.opacity = opacity(rng);
  for (float &c : p.sh) {
    c = sh(rng);
  }
  return p;
}

inline GaussianParticle isotropic(const Vec3 &mean, double sigma, double opacity) {
  GaussianParticle p;
  p.mean = mean;
  p.scale = Vec3::Constant(sigma);
  p.opacity = opacity;
  return p;
}

/// Degree-0 particle whose color is exactly `rgb` in every direction.
GaussianParticle colored(const Vec3 &mean, double sigma, double opacity, const Rgb &rgb);

/// Dense-sampling check of the analytic peak along a ray.
struct PeakSweep {
  double t_lo = 0.0, t_hi = 0.0; ///< ray span inside the particle's 3-sigma box
  double step = 0.0;
  double t_argmax = 0.0;         ///< best sample of the exponent
  bool valid = false;            ///< false when the ray misses the box
};

/// Samples -0.5 * Mahalanobis distance along `origin + t * dir` at `samples`
/// evenly spaced points across the 3-sigma box span.
PeakSweep sweep_peak(const Vec3 &origin, const Vec3 &dir, const Vec3 &mean, const Mat3 &inv_cov,
                     const Vec3 &box_half, int samples);

/// -0.5 * (x - mean)^T inv_cov (x - mean) at x = origin + t * dir.
inline double exponent_at(const Vec3 &origin, const Vec3 &dir, const Vec3 &mean,
                          const Mat3 &inv_cov, double t) {
  const Vec3 x = origin + t * dir - mean;
  return -0.5 * x.dot(inv_cov * x);
}

/// One raw (pre-activation) vertex for hand-built PLY files.
struct RawVertex {
  float x = 0, y = 0, z = 0;
  float f_dc[3] = {0, 0, 0};
  std::vector<float> f_rest;
  float opacity = 0;
  float scale[3] = {0, 0, 0};
  float rot[4] = {1, 0, 0, 0};
};

/// Writes a binary little-endian PLY with the 3DGS vertex layout, byte by byte,
/// without going through the library writer. `omit` drops one property name.
void write_raw_ply(const std::filesystem::path &path, const std::vector<RawVertex> &vertices,
                   int rest_count = 0, const std::string &omit = "");

} // namespace gbake::test
